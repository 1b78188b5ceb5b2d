#include "fano/exclusion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fano {

std::string to_string(Lemma l) {
    switch (l) {
        case Lemma::CurveDegree: return "curve-degree";
        case Lemma::SmoothPoint: return "smooth-point";
        case Lemma::HalfPoint: return "half-point";
        case Lemma::Ivr: return "ivr-criterion";
        case Lemma::Nef: return "nef-pairing";
        case Lemma::CurveFamily: return "curve-family";
        case Lemma::CaseSplit: return "case-split";
        case Lemma::NegativeCurve: return "negative-curve";
    }
    return "?";
}

std::string to_string(VerdictStatus s) { return s == VerdictStatus::Excluded ? "excluded" : "inconclusive"; }

std::string to_string(OverallVerdict v) {
    switch (v) {
        case OverallVerdict::Superrigid: return "SUPERRIGID";
        case OverallVerdict::Unresolved: return "UNRESOLVED";
        case OverallVerdict::InvalidInput: return "INVALID-INPUT";
    }
    return "?";
}

const Rational& ExclusionVerdict::value(const std::string& name) const {
    for (const auto& v : values)
        if (v.name == name) return v.value;
    throw std::out_of_range("verdict has no value '" + name + "'");
}

bool ExclusionVerdict::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c.holds;
    throw std::out_of_range("verdict has no check '" + name + "'");
}

namespace {

const char* kK3 = "(-K)^3";

VerdictStatus status_of(bool b) { return b ? VerdictStatus::Excluded : VerdictStatus::Inconclusive; }

ExclusionVerdict make(CenterSpec center, Lemma lemma) {
    ExclusionVerdict v;
    v.center = std::move(center);
    v.lemma = lemma;
    return v;
}

CenterSpec point_center(const FanoCandidate& c, const QuotientPoint& p) {
    CenterSpec cs;
    cs.kind = CenterKind::QuotientPoint;
    cs.basket_ref = BasketEntry::normalized(p.r, p.a, std::max(1, c.basket_count(p.r)));
    for (const auto& b : c.basket)
        if (b.r == p.r && b.a == p.a) cs.basket_ref = b;
    if (p.at) cs.coordinate = c.space.name(*p.at);
    return cs;
}

Rational pairing_nef(const Rational& n, const Rational& lam, const Rational& wp, const Rational& k3) {
    return n * k3 - lam / wp;
}

bool all_checks(const ExclusionVerdict& v) {
    return std::all_of(v.checks.begin(), v.checks.end(), [](const Check& c) { return c.holds; });
}

}  // namespace

VerdictStatus recompute(const ExclusionVerdict& v) {
    if (v.lemma == Lemma::CaseSplit) {
        if (v.branches.empty()) return VerdictStatus::Inconclusive;
        for (const auto& b : v.branches)
            if (recompute(b.verdict) != VerdictStatus::Excluded) return VerdictStatus::Inconclusive;
        return status_of(all_checks(v));
    }
    if (!all_checks(v)) return VerdictStatus::Inconclusive;
    const Rational k3 = v.value(kK3);
    switch (v.lemma) {
        case Lemma::CurveDegree: return status_of(k3 <= Rational(1));
        case Lemma::SmoothPoint: {
            Rational prod = v.value("isolating_product") * k3;
            return status_of(prod == v.value("product*(-K)^3") && prod <= Rational(4));
        }
        case Lemma::HalfPoint: {
            Rational b = v.value("b");
            Rational pairing = pairing_nef(b, Rational(1, 2), Rational(1), k3);
            return status_of(pairing == v.value("nef_pairing") && Rational(2) * b * k3 <= Rational(1));
        }
        case Lemma::Ivr: {
            Rational threshold = v.value("wp") * k3;
            Rational pairing = pairing_nef(Rational(1), v.value("ivr"), v.value("wp"), k3);
            return status_of(threshold == v.value("wp*(-K)^3") && pairing == v.value("nef_pairing") &&
                             v.value("ivr") >= threshold);
        }
        case Lemma::Nef: {
            std::optional<Rational> e;
            for (const auto& nv : v.values) {
                if (nv.name.rfind("ord_E(", 0) != 0) continue;
                std::string d = nv.name.substr(6, nv.name.size() - 7);
                Rational ratio = nv.value / v.value("n(" + d + ")");
                e = e ? min(*e, ratio) : ratio;
            }
            if (!e || *e != v.value("e")) return VerdictStatus::Inconclusive;
            Rational n = v.value("n"), lam = v.value("lambda");
            Rational pairing = pairing_nef(n, lam, v.value("wp"), k3);
            return status_of(lam <= n * *e && pairing == v.value("nef_pairing") && pairing <= Rational(0));
        }
        case Lemma::CurveFamily: {
            Rational pairing = v.value("n_S") * v.value("n_L") * k3 -
                               v.value("ord_S") * v.value("ord_L") * v.value("E^3") / v.value("r");
            return status_of(pairing == v.value("pairing") && pairing <= Rational(0));
        }
        case Lemma::NegativeCurve: {
            UPoly p;
            for (const auto& nv : v.values)
                if (nv.name.rfind("triple_product[e^", 0) == 0) {
                    int i = std::stoi(nv.name.substr(17));
                    UPoly term(nv.value);
                    for (int k = 0; k < i; ++k) term = term * UPoly::param();
                    p += term;
                }
            return status_of(negative_for_all_from(p, v.value("e_min")));
        }
        case Lemma::CaseSplit: break;
    }
    return VerdictStatus::Inconclusive;
}

bool replay(const ExclusionVerdict& v) {
    try {
        if (recompute(v) != v.status) return false;
        for (const auto& b : v.branches)
            if (!replay(b.verdict)) return false;
        return true;
    } catch (const std::out_of_range&) {
        return false;
    }
}

ExclusionVerdict test_curves(const FanoCandidate& c) {
    CenterSpec cs;
    cs.kind = CenterKind::Curve;
    auto v = make(cs, Lemma::CurveDegree);
    v.values = {{kK3, c.k3}};
    v.status = status_of(c.k3 <= Rational(1));
    return v;
}

ExclusionVerdict test_smooth_points(const FanoCandidate& c, std::optional<long> isolating_product) {
    CenterSpec cs;
    cs.kind = CenterKind::SmoothPoint;
    auto v = make(cs, Lemma::SmoothPoint);
    std::vector<int> w;
    for (std::size_t i = 0; i < c.space.size(); ++i) w.push_back(c.space.weight(i));
    std::sort(w.begin(), w.end());
    const long dflt = static_cast<long>(w[w.size() - 2]) * w.back();
    const long m = isolating_product.value_or(dflt);
    const Rational value = Rational(m) * c.k3;
    v.values = {{"isolating_product", Rational(m)}, {kK3, c.k3}, {"product*(-K)^3", value}};
    if (isolating_product) {
        v.values.push_back({"default_product", Rational(dflt)});
        v.values.push_back({"default_product*(-K)^3", Rational(dflt) * c.k3});
        v.notes.push_back("isolating product override " + std::to_string(m) + " supplied by the caller; a_{n-1}*a_n = " +
                          std::to_string(dflt) + " gives " + (Rational(dflt) * c.k3).str());
    }
    v.status = status_of(value <= Rational(4));
    if (!v.excluded())
        v.notes.push_back("isolating product times (-K)^3 is " + value.str() + " > 4; inconclusive by this lemma");
    return v;
}

ExclusionVerdict test_half_points(const FanoCandidate& c) {
    auto v = make(point_center(c, QuotientPoint{2, 1, std::nullopt}), Lemma::HalfPoint);
    std::optional<int> b;
    for (std::size_t i = 0; i < c.space.size(); ++i)
        if (c.space.weight(i) % 2 == 1) b = std::max(b.value_or(0), c.space.weight(i));
    v.checks.push_back({"some weight is odd", b.has_value()});
    if (!b) {
        v.values = {{kK3, c.k3}};
        v.notes.push_back("no odd weight: b undefined");
        return v;
    }
    Rational bb(*b);
    v.values = {{"b", bb},
                {kK3, c.k3},
                {"2b(-K)^3", Rational(2) * bb * c.k3},
                {"nef_pairing", pairing_nef(bb, Rational(1, 2), Rational(1), c.k3)}};
    v.status = status_of(Rational(2) * bb * c.k3 <= Rational(1));
    return v;
}

ExclusionVerdict test_ivr(const FanoCandidate& c, const QuotientPoint& p, CoordSet C) {
    if (!p.at) throw std::invalid_argument("test_ivr: the point must be a coordinate point");
    if (C.contains(*p.at)) throw std::invalid_argument("test_ivr: C contains the center coordinate");
    const auto& sp = c.space;
    auto v = make(point_center(c, p), Lemma::Ivr);
    const Rational iv = ivr(p, sp, C);
    const Rational wp(weight_product(p));
    const Rational threshold = wp * c.k3;
    StratumCertificate pi = stratum_status(c, Stratum{C.with(*p.at)});
    v.values = {{"ivr", iv},
                {"wp", wp},
                {kK3, c.k3},
                {"wp*(-K)^3", threshold},
                {"nef_pairing", pairing_nef(Rational(1), iv, wp, c.k3)}};
    v.checks = {{"(1) center coordinate not in C", true},
                {"(2) Pi_X(C + " + sp.name(*p.at) + ") empty", is_empty(pi.kind)},
                {"(3) ivr >= wp*(-K)^3", iv >= threshold}};
    v.certificate["C"] = sp.describe(C);
    v.certificate["stratum"] = to_json(pi, sp);
    v.status = recompute(v);
    return v;
}

ExclusionVerdict test_nef(const FanoCandidate& c, const QuotientPoint& p, const std::vector<OrderBound>& divisors,
                          const StratumCertificate& finiteness, const Rational& scale) {
    if (divisors.empty()) throw std::invalid_argument("test_nef: no divisors");
    auto v = make(point_center(c, p), Lemma::Nef);
    Rational e = divisors.front().ord / divisors.front().n;
    ojson bounds = ojson::array();
    for (const auto& d : divisors) {
        e = min(e, d.ord / d.n);
        v.values.push_back({"ord_E(" + d.divisor + ")", d.ord});
        v.values.push_back({"n(" + d.divisor + ")", d.n});
        bounds.push_back(ojson{{"divisor", d.divisor}, {"n", d.n.str()}, {"ord_E >=", d.ord.str()}, {"source", d.source}});
    }
    const Rational wp(weight_product(p));
    const Rational n = scale, lam = scale * e;
    v.values.push_back({"e", e});
    v.values.push_back({"n", n});
    v.values.push_back({"lambda", lam});
    v.values.push_back({"wp", wp});
    v.values.push_back({kK3, c.k3});
    v.values.push_back({"nef_pairing", pairing_nef(n, lam, wp, c.k3)});
    v.checks = {{"common intersection of the divisors contains no curve", is_curve_free(finiteness.kind)}};
    v.certificate["order_bounds"] = bounds;
    v.certificate["finiteness"] = to_json(finiteness, c.space);
    v.notes.push_back("N = -" + (n == Rational(1) ? std::string() : n.str() + " ") + "phi^*K_X - " + lam.str() + " E is nef");
    v.status = recompute(v);
    return v;
}

ExclusionVerdict test_curve_family(const FanoCandidate& c, const QuotientPoint& p, const OrderBound& S,
                                   const OrderBound& L, const StratumCertificate& bs_finiteness) {
    auto v = make(point_center(c, p), Lemma::CurveFamily);
    const BlowupClass s{S.n, S.ord}, l{L.n, L.ord};
    const Rational pairing = y_triple(anticanonical(p), s, l, p, c.k3);
    v.values = {{"n_S", S.n}, {"ord_S", S.ord}, {"n_L", L.n},       {"ord_L", L.ord},
                {"r", Rational(p.r)}, {"E^3", e_cubed(p)}, {kK3, c.k3}, {"pairing", pairing}};
    v.checks = {{"S meets Bs L in no curve through the point", is_curve_free(bs_finiteness.kind)}};
    v.certificate["S"] = ojson{{"divisor", S.divisor}, {"n", S.n.str()}, {"ord_E >=", S.ord.str()}, {"source", S.source}};
    v.certificate["L"] = ojson{{"divisor", L.divisor}, {"n", L.n.str()}, {"ord_E >=", L.ord.str()}, {"source", L.source}};
    v.certificate["finiteness"] = to_json(bs_finiteness, c.space);
    v.status = recompute(v);
    return v;
}

ExclusionVerdict run_case_split(const std::string& split_condition, std::vector<CaseBranch> branches) {
    if (branches.empty()) throw std::invalid_argument("run_case_split: no branches, the split is not exhaustive");
    auto v = make(branches.front().verdict.center, Lemma::CaseSplit);
    v.split_condition = split_condition;
    v.branches = std::move(branches);
    v.checks = {{"branches exhaustive by declaration", true}};
    v.status = recompute(v);
    for (const auto& b : v.branches)
        if (!b.verdict.excluded()) v.notes.push_back("branch " + b.label + " inconclusive");
    return v;
}

ExclusionVerdict cluster_verdict(const ClusterCertificate& cc) {
    const FanoCandidate c = registry("#282");
    auto v = make(point_center(c, cc.exceptional.weight.point), Lemma::NegativeCurve);
    for (int i = 0; i <= cc.triple_product.degree(); ++i)
        v.values.push_back({"triple_product[e^" + std::to_string(i) + "]", cc.triple_product.coeff(i)});
    v.values.push_back({"e_min", cc.e_min});
    v.values.push_back({kK3, c.k3});
    // verify_cluster stops before the plane curve when a normalization is not granted.
    const bool granted = cc.curve.ok || !cc.curve.failure.empty();
    v.checks = {{"format assumptions granted", granted},
                {"Gamma irreducible", cc.irreducibility && cc.irreducibility->irreducible},
                {"boundary of Gamma contains no curve", cc.boundary.ok},
                {"D_p and D_q meet E in finitely many points", cc.exceptional.ok},
                {"triple product negative for all e >= e_min", cc.triple_negative}};
    v.certificate = to_json(cc);
    for (const auto& f : cc.failures) v.notes.push_back(f);
    v.notes.push_back("explicit " + to_string(cc.format) + " equations; Gamma = D_p . D_q has negative -K_Y degree");
    v.status = recompute(v);
    return v;
}

std::optional<std::size_t> coordinate_placement(const FanoCandidate& c, int r) {
    const auto& sp = c.space;
    std::optional<std::size_t> k;
    int g = 0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.weight(i) == r) {
            if (!k) k = i;
        } else if (sp.weight(i) % r == 0) {
            g = std::gcd(g, sp.weight(i));
        }
    }
    if (!k || g == r) return std::nullopt;
    return k;
}

std::vector<CenterSpec> enumerate_centers(const FanoCandidate& c) {
    std::vector<CenterSpec> out;
    out.push_back(CenterSpec{CenterKind::Curve, std::nullopt, std::nullopt});
    out.push_back(CenterSpec{CenterKind::SmoothPoint, std::nullopt, std::nullopt});
    for (const auto& b : c.basket) out.push_back(CenterSpec{CenterKind::QuotientPoint, b, std::nullopt});
    return out;
}

ojson to_json(const ExclusionVerdict& v, const WeightedSpace& space) {
    ojson j;
    j["center"] = v.center.label();
    j["center_kind"] = to_string(v.center.kind);
    if (v.center.basket_ref) j["multiplicity"] = v.center.basket_ref->count;
    if (v.center.coordinate) j["coordinate"] = "p_" + *v.center.coordinate;
    j["lemma"] = to_string(v.lemma);
    j["status"] = to_string(v.status);
    ojson vals = ojson::array();
    for (const auto& nv : v.values) vals.push_back(ojson{{"name", nv.name}, {"value", nv.value.str()}});
    j["values"] = vals;
    ojson checks = ojson::array();
    for (const auto& c : v.checks) checks.push_back(ojson{{"name", c.name}, {"holds", c.holds}});
    j["checks"] = checks;
    if (!v.notes.empty()) j["notes"] = v.notes;
    if (!v.split_condition.empty()) j["split_condition"] = v.split_condition;
    if (!v.branches.empty()) {
        ojson br = ojson::array();
        for (const auto& b : v.branches) {
            ojson nf = ojson::array();
            for (const auto& f : b.normal_form_facts) nf.push_back(to_json(f, space));
            br.push_back(ojson{{"label", b.label},
                               {"assumptions", b.assumptions},
                               {"normal_form", nf},
                               {"verdict", to_json(b.verdict, space)}});
        }
        j["branches"] = br;
    }
    j["certificate"] = v.certificate;
    return j;
}

}  // namespace fano
