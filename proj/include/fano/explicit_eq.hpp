#pragma once

#include "fano/blowup.hpp"
#include "fano/candidate.hpp"
#include "fano/monomial_model.hpp"
#include "fano/param_poly.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

enum class ClusterFormat { G2, C2 };
std::string to_string(ClusterFormat f);
std::optional<ClusterFormat> parse_format(std::string_view s);

/// A generic form replaced by its restriction to the stratum p = q = 0; the
/// rest of the form is an unknown element of the ideal (p, q).
struct FormRestriction {
    std::string name;
    int degree = 0;
    std::string restriction;
    /// Monomials of the degree in the non-zeroed coordinates (the restriction's possible support).
    std::vector<Monomial> stratum_monomials;
};

struct BuiltinEquation {
    std::string tag;
    int degree = 0;
    /// Equation as printed in the source of the format.
    std::string verbatim;
    /// Text actually parsed (differs from verbatim only where noted).
    std::string parsed;
    std::string note;
    UncertainPolynomial poly;
};

struct BuiltinSystem {
    ClusterFormat format = ClusterFormat::G2;
    FanoCandidate candidate;
    std::vector<FormRestriction> forms;
    std::vector<BuiltinEquation> equations;
    std::set<std::string> params;
    /// Coordinates set to zero on the stratum the forms are reduced on.
    CoordSet stratum;
};

BuiltinSystem builtin_system(ClusterFormat f);
/// Plain-text listing of the nine equations and their known parts.
std::string export_listing(ClusterFormat f);

/// Ledger entries the format's argument rests on. Returns false (and records
/// why) when a required normalization is not granted.
bool cluster_assumptions(ClusterFormat f, bool assume_q_in_s6, AssumptionLedger& ledger, std::string& unmet);

ParamPolynomial restrict(const ParamPolynomial& f, const Stratum& s);
ParamPolynomial initial_part(const ParamPolynomial& f, const AdmissibleWeight& w);

class NotApplicable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EqSystem {
    std::vector<std::string> tags;
    std::vector<ParamPolynomial> eqs;
};

struct EliminationRecord {
    std::size_t var = 0;
    std::string equation;
    ParamScalar coefficient;
    ParamPolynomial solution;
};

/// Solves the first equation linear in var with certified scalar coefficient,
/// substitutes into the rest and drops it. Throws NotApplicable otherwise.
EliminationRecord eliminate(EqSystem& sys, std::size_t var, const AssumptionLedger& ledger);

struct PlaneCurve {
    bool ok = false;
    std::string failure;
    std::size_t chart = 0;
    std::vector<EliminationRecord> eliminations;
    std::string generator;
    /// Quotients of the other remaining equations by the generator.
    std::vector<std::pair<std::string, ParamPolynomial>> multiples;
    ParamPolynomial raw;
    ParamScalar scaling;
    std::map<std::string, ParamScalar> reparametrization;
    ParamPolynomial curve;
    std::size_t main_var = 0;
};

PlaneCurve plane_curve_reduction(ClusterFormat f, const AssumptionLedger& ledger);

struct IrreducibilityCertificate {
    bool irreducible = false;
    std::string method;
    std::string reason;
    ParamPolynomial a, b, c, disc;
    std::optional<std::size_t> other_var;
};

/// Throws std::invalid_argument when f is not of degree 2 in main_var.
IrreducibilityCertificate quadratic_irreducibility(const ParamPolynomial& f, std::size_t main_var,
                                                   const AssumptionLedger& ledger);

struct PointCount {
    bool finite = false;
    int count = 0;
    std::vector<std::string> transcript;
    std::string reason;
};

/// Points of the weighted projective variety cut out by eqs over the `live`
/// coordinates, by linear/pure-power elimination and chart splitting.
PointCount count_points(const std::vector<ParamPolynomial>& eqs, CoordSet live, const AssumptionLedger& ledger);

struct InitialPartRecord {
    std::string tag;
    long weight = 0;
    ParamPolynomial known_initial;
    ParamPolynomial restricted_initial;
    bool rigorous = false;
    std::string check;
};

struct KblChoice {
    std::string tag;
    std::size_t coordinate = 0;
    Monomial monomial;
};

struct ExceptionalPresentation {
    bool ok = false;
    std::string failure;
    AdmissibleWeight weight;
    WeightedSpace e_space;
    std::vector<InitialPartRecord> parts;
    std::vector<KblChoice> kbl;
    CoordSet local;  // indices in the ambient space of the candidate
    std::vector<ParamPolynomial> presentation;
    std::vector<ParamPolynomial> restricted;
    PointCount count;
};

ExceptionalPresentation exceptional_presentation(ClusterFormat f, const AssumptionLedger& ledger);

struct BoundaryCheck {
    bool ok = false;
    std::string description;
    std::optional<PointCount> count;
    std::optional<StratumCertificate> stratum;
};

struct ClusterCertificate {
    ClusterFormat format = ClusterFormat::G2;
    bool excluded = false;
    std::vector<std::string> failures;
    AssumptionLedger ledger;
    PlaneCurve curve;
    std::optional<IrreducibilityCertificate> irreducibility;
    BoundaryCheck boundary;
    ExceptionalPresentation exceptional;
    UPoly triple_product;
    Rational e_min;
    bool triple_negative = false;
    ParamBlowupClass dp, dq;
};

ClusterCertificate verify_cluster(ClusterFormat f, bool assume_q_in_s6 = true);

ojson to_json(const PlaneCurve& pc, const WeightedSpace& space);
ojson to_json(const IrreducibilityCertificate& ic, const WeightedSpace& space);
ojson to_json(const PointCount& pc);
ojson to_json(const ExceptionalPresentation& ep, const WeightedSpace& space);
ojson to_json(const AssumptionLedger& ledger);
ojson to_json(const ClusterCertificate& cc);

}  // namespace fano
