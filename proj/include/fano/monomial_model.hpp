#pragma once

#include "fano/blowup.hpp"
#include "fano/candidate.hpp"
#include "fano/wps.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace fano {

using ojson = nlohmann::ordered_json;

enum class FactStatus { Guaranteed, Possible, Absent };
std::string to_string(FactStatus s);

/// Coefficient knowledge about one monomial of one equation (or degree group).
struct MonomialFact {
    Monomial monomial;
    int equation_degree = 0;
    /// Equation tag the fact is assigned to ("F3"); for group facts the first tag of the group.
    std::string equation;
    /// All equation tags of that degree.
    std::vector<std::string> group;
    FactStatus status = FactStatus::Possible;
    std::string reason;
};

struct PurePowerReport {
    std::vector<MonomialFact> facts;
    std::vector<std::string> inconsistencies;
};

/// Pure powers forced into the equations by quasi-smoothness at coordinate
/// points that are absent from the basket.
PurePowerReport guaranteed_pure_powers(const FanoCandidate& c);

struct Stratum {
    CoordSet zeroed;
    CoordSet live(const WeightedSpace& space) const { return space.all() - zeroed; }
};

std::vector<Monomial> restrict_support(const FanoCandidate& c, int d, const Stratum& s);

enum class StratumKind { EmptyByChain, EmptyByIndex, FiniteByIndex, FiniteByAmple, Inconclusive };
std::string to_string(StratumKind k);
bool is_empty(StratumKind k);
/// Empty, or a finite set of points: contains no curve.
bool is_curve_free(StratumKind k);

/// How a block's index is matched against the basket.
enum class IndexRule { Divides, Equal };

struct ChainStep {
    std::size_t var = 0;
    std::string equation;
    int degree = 0;
    Monomial pure_power;
    std::vector<Monomial> support;
    /// Leftover monomials and the eliminated variable that kills each.
    std::vector<std::pair<Monomial, std::size_t>> killed;
};

struct IndexClass {
    int index = 0;
    std::vector<CoordSet> blocks;
    int basket_count = 0;
};

struct BlockStep {
    CoordSet block;
    std::vector<IndexClass> indices;
    /// Degrees with monomials purely in the block (over the current live set, all such).
    std::vector<int> closed_degrees;
};

struct IndexAnalysis {
    CoordSet live;
    IndexRule rule = IndexRule::Divides;
    std::vector<IndexClass> indices;
    /// First block with gcd 1, if any.
    std::optional<CoordSet> gcd_one_block;
    int point_bound = 0;
};

using StratumStep = std::variant<ChainStep, BlockStep, IndexAnalysis>;

struct StratumCertificate {
    Stratum stratum;
    StratumKind kind = StratumKind::Inconclusive;
    std::vector<StratumStep> steps;
    CoordSet residual;
    /// Basket types the finite set may contain.
    std::vector<std::string> points;
    int point_bound = 0;
    /// Set for the ample-divisor reduction: the certificate of the smaller stratum.
    std::optional<std::size_t> ample_coordinate;
    std::vector<StratumCertificate> inner;
};

/// Exhaustive search for an elimination order using only chain steps.
StratumCertificate chain_certificate(const FanoCandidate& c, const Stratum& s, const std::vector<MonomialFact>& facts);
StratumCertificate index_certificate(const FanoCandidate& c, const Stratum& s, IndexRule rule = IndexRule::Divides);
/// Chain steps, block steps and a final index analysis on the residual live set.
StratumCertificate stratum_status(const FanoCandidate& c, const Stratum& s, const std::vector<MonomialFact>& facts);
StratumCertificate stratum_status(const FanoCandidate& c, const Stratum& s);
/// Curve-freeness of the stratum from emptiness of the stratum with x also zeroed.
StratumCertificate ample_reduction(const FanoCandidate& c, const Stratum& s, std::size_t x,
                                   const std::vector<MonomialFact>& facts);

/// Coefficient adjustments for one equation after a normalization of the equations.
struct NormalForm {
    std::string label;
    std::vector<MonomialFact> facts;
};

/// Lowest-weight part of equation `tag` under w, using the normal form's facts
/// for that tag (absent monomials dropped, guaranteed ones certified).
LowestPartFact lowest_weight_part(const FanoCandidate& c, const std::string& tag, const AdmissibleWeight& w,
                                  const NormalForm& nf);

ojson to_json(const MonomialFact& f, const WeightedSpace& space);
ojson to_json(const StratumCertificate& cert, const WeightedSpace& space);
ojson to_json(const LowestPartFact& f, const WeightedSpace& space);

}  // namespace fano
