#pragma once

#include "fano/rational.hpp"
#include "fano/wps.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fano {

/// `count` points of type 1/r(1, a, r-a), normalized so that a <= r - a.
struct BasketEntry {
    int r = 2;
    int a = 1;
    int count = 1;

    static BasketEntry normalized(int r, int a, int count = 1);

    bool terminal() const;
    /// "1/5(1,2,3)"
    std::string type_str() const;

    friend bool operator==(const BasketEntry&, const BasketEntry&) = default;
};

enum class CenterKind { Curve, SmoothPoint, QuotientPoint };

std::string to_string(CenterKind k);

struct CenterSpec {
    CenterKind kind = CenterKind::Curve;
    std::optional<BasketEntry> basket_ref;
    /// Coordinate point the center is moved to, when the argument uses one.
    std::optional<std::string> coordinate;

    /// "curves", "smooth-points", "1/5(1,2,3)"
    std::string label() const;
};

struct FanoCandidate {
    std::string id;
    WeightedSpace space;
    std::vector<int> eq_degrees;
    Rational k3;
    std::vector<BasketEntry> basket;

    /// (#coords - 1) - 3
    int codimension() const { return static_cast<int>(space.size()) - 4; }
    int basket_size() const;
    /// Number of basket points of index r.
    int basket_count(int r) const;
    /// Equation tags "F1".."FN" in degree order.
    std::string equation_tag(std::size_t i) const { return "F" + std::to_string(i + 1); }

    friend bool operator==(const FanoCandidate&, const FanoCandidate&) = default;
};

/// Hypothesis violations; empty iff the candidate is admissible input.
std::vector<std::string> validate(const FanoCandidate& c);

/// Load/parse failure. `diagnostics` carries one line per problem.
class CandidateError : public std::runtime_error {
public:
    CandidateError(const std::string& what, std::vector<std::string> diagnostics)
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

/// Parses candidate JSON and validates it. Throws CandidateError.
FanoCandidate parse_candidate(std::string_view json_text);
FanoCandidate load_candidate(const std::filesystem::path& path);
/// Canonical JSON form (schema field order, two-space indent, trailing newline).
std::string serialize(const FanoCandidate& c);

struct RegistryEntry {
    std::string id;
    bool analyzable = false;
    std::string note;
    std::optional<FanoCandidate> candidate;
};

const std::vector<RegistryEntry>& registry_entries();
/// Accepts "#25" or "25". nullptr when unknown.
const RegistryEntry* find_registry(std::string_view id);
/// Throws CandidateError for unknown ids and metadata-only entries.
FanoCandidate registry(std::string_view id);

/// True when `c` carries exactly the data of the registry entry with the same id.
bool matches_registry(const FanoCandidate& c);

}  // namespace fano
