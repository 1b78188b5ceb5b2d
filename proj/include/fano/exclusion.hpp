#pragma once

#include "fano/blowup.hpp"
#include "fano/candidate.hpp"
#include "fano/explicit_eq.hpp"
#include "fano/monomial_model.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fano {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Lemma { CurveDegree, SmoothPoint, HalfPoint, Ivr, Nef, CurveFamily, CaseSplit, NegativeCurve };
std::string to_string(Lemma l);

enum class VerdictStatus { Excluded, Inconclusive };
std::string to_string(VerdictStatus s);

struct NamedValue {
    std::string name;
    Rational value;
};

/// A hypothesis of the lemma and whether it was certified.
struct Check {
    std::string name;
    bool holds = false;
};

struct CaseBranch;

struct ExclusionVerdict {
    CenterSpec center;
    Lemma lemma = Lemma::CurveDegree;
    std::vector<NamedValue> values;
    std::vector<Check> checks;
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::vector<std::string> notes;
    /// Stratum certificates, weights and bumps backing the checks.
    ojson certificate = ojson::object();
    /// Case split only.
    std::string split_condition;
    std::vector<CaseBranch> branches;

    bool excluded() const { return status == VerdictStatus::Excluded; }
    /// Value by name; throws std::out_of_range when absent.
    const Rational& value(const std::string& name) const;
    bool check(const std::string& name) const;
};

struct CaseBranch {
    std::string label;
    std::vector<std::string> assumptions;
    std::vector<MonomialFact> normal_form_facts;
    ExclusionVerdict verdict;
};

/// Re-evaluates the lemma's inequality from the recorded values and checks.
VerdictStatus recompute(const ExclusionVerdict& v);
/// True when the recorded values reproduce the recorded status.
bool replay(const ExclusionVerdict& v);

/// A certified lower bound ord_E(D) >= ord for a divisor D ~ -n K_X.
struct OrderBound {
    std::string divisor;
    Rational n;
    Rational ord;
    std::string source;
};

ExclusionVerdict test_curves(const FanoCandidate& c);
/// Without an override the product is a_{n-1} a_n of the sorted weights.
ExclusionVerdict test_smooth_points(const FanoCandidate& c, std::optional<long> isolating_product = std::nullopt);
ExclusionVerdict test_half_points(const FanoCandidate& c);
/// p.at must be set; throws std::invalid_argument when C contains the center.
ExclusionVerdict test_ivr(const FanoCandidate& c, const QuotientPoint& p, CoordSet C);
/// N = scale * (1, e) with e = min ord/n over the divisors.
ExclusionVerdict test_nef(const FanoCandidate& c, const QuotientPoint& p, const std::vector<OrderBound>& divisors,
                          const StratumCertificate& finiteness, const Rational& scale = Rational(1));
ExclusionVerdict test_curve_family(const FanoCandidate& c, const QuotientPoint& p, const OrderBound& S,
                                   const OrderBound& L, const StratumCertificate& bs_finiteness);
/// Throws std::invalid_argument on zero branches.
ExclusionVerdict run_case_split(const std::string& split_condition, std::vector<CaseBranch> branches);
/// The 1/6(1,1,5) point of #282 from an explicit-equation certificate.
ExclusionVerdict cluster_verdict(const ClusterCertificate& cc);

/// Coordinate at which a basket point of index r can be placed by a graded
/// change of coordinates: the first coordinate of weight exactly r, provided
/// the other weights divisible by r have gcd different from r.
std::optional<std::size_t> coordinate_placement(const FanoCandidate& c, int r);

struct VerifyOptions {
    std::optional<long> isolating_product;
    std::optional<ClusterFormat> format;
    bool assume_q_in_s6 = true;
};

enum class OverallVerdict { Superrigid, Unresolved, InvalidInput };
std::string to_string(OverallVerdict v);

struct Report {
    std::string candidate_id;
    std::string tool_version;
    std::string strategy;
    VerifyOptions options;
    std::vector<ExclusionVerdict> verdicts;
    OverallVerdict overall = OverallVerdict::Unresolved;
    std::vector<std::string> unresolved;
    std::vector<std::string> diagnostics;
    std::optional<AssumptionLedger> ledger;
    std::optional<double> seconds;
};

/// Thrown for options that do not apply to the candidate.
class OptionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Scripted strategy when the candidate carries registry data, automatic otherwise.
Report verify(const FanoCandidate& c, const VerifyOptions& opts = {});
/// Automatic strategy regardless of registry membership.
Report verify_automatic(const FanoCandidate& c, const VerifyOptions& opts = {});

/// Centers in report order: curves, smooth points, then basket entries.
std::vector<CenterSpec> enumerate_centers(const FanoCandidate& c);

ojson to_json(const ExclusionVerdict& v, const WeightedSpace& space);

}  // namespace fano
