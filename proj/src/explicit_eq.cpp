#include "fano/explicit_eq.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fano {

std::string to_string(ClusterFormat f) { return f == ClusterFormat::G2 ? "g2" : "c2"; }

std::optional<ClusterFormat> parse_format(std::string_view s) {
    std::string t(s);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (t == "g2" || t == "g2(4)" || t == "g2^(4)") return ClusterFormat::G2;
    if (t == "c2") return ClusterFormat::C2;
    return std::nullopt;
}

namespace {

struct EqText {
    const char* verbatim;
    const char* parsed;
    const char* note;
};

const std::vector<EqText>& g2_text() {
    static const std::vector<EqText> eqs = {
        {"t^2 - q*v + s*Q9", nullptr, nullptr},
        {"u*t - q*w + s*(v + p^2*t)", nullptr, nullptr},
        {"t*(v + p^2*t) - u*Q9 + q*(q*r + p^4*t)", nullptr, nullptr},
        {"(w + p^4*s)*s - P12*q + u*(u + p^2*s)", nullptr, nullptr},
        {"t*w - u*v + s*(q*r + p^4*t)", nullptr, nullptr},
        {"(q*r + p^4*t)*t - Q9*w + v*(v + p^2*t)", nullptr, nullptr},
        {"r*s^2 - w*u + t*P12", nullptr, nullptr},
        {"P12*Q9 - (v*w + p^4*q*w + p^2*u*v + u*q*r + s*t*r - s*t*p^2)",
         "P12*Q9 - (v*w + p^4*q*w + p^2*u*v + u*q*r + s*t*r)",
         "term s*t*p^2 has degree 17, not 21; omitted from the parsed polynomial, vanishes on p = 0"},
        {"r*s*(u + p^2*s) - v*P12 + w*(w + p^4*s)", nullptr, nullptr},
    };
    return eqs;
}

const std::vector<EqText>& c2_text() {
    static const std::vector<EqText> eqs = {
        {"t*R8 - S6*Q10 + s*u", nullptr, nullptr},   {"t*u - w*S6 + s*v", nullptr, nullptr},
        {"r*S6^2 - v*R8 + u^2", nullptr, nullptr},   {"t*Q10 - S6*P12 + s*w", nullptr, nullptr},
        {"r*s*S6 - w*R8 + u*Q10", nullptr, nullptr}, {"r*s^2 - P12*R8 + Q10^2", nullptr, nullptr},
        {"r*t*S6 - v*Q10 + u*w", nullptr, nullptr},  {"r*s*t - w*Q10 + u*P12", nullptr, nullptr},
        {"r*t^2 - v*P12 + w^2", nullptr, nullptr},
    };
    return eqs;
}

std::set<Monomial> ideal_monomials(const WeightedSpace& sp, int d, CoordSet gens) {
    std::set<Monomial> out;
    for (const auto& m : monomials_of_degree(sp, d, sp.all()))
        if (m.divisible_by_any(gens)) out.insert(m);
    return out;
}

}  // namespace

BuiltinSystem builtin_system(ClusterFormat f) {
    BuiltinSystem sys;
    sys.format = f;
    sys.candidate = registry("#282");
    const auto& sp = sys.candidate.space;
    sys.stratum = sp.set({"p", "q"});
    struct FormSpec {
        const char* name;
        int degree;
        const char* restriction;
        bool remainder;
    };
    std::vector<FormSpec> specs;
    if (f == ClusterFormat::G2) {
        sys.params = {"lambda", "mu"};
        specs = {{"P12", 12, "lambda*r^2", true}, {"Q9", 9, "mu*u", true}};
    } else {
        sys.params = {"lambda", "mu", "nu"};
        specs = {{"P12", 12, "lambda*r^2", true},
                 {"Q10", 10, "mu*v", true},
                 {"R8", 8, "nu*t", true},
                 {"S6", 6, "q", false}};
    }
    std::map<std::string, UncertainPolynomial> forms;
    for (const auto& s : specs) {
        UncertainPolynomial u(parse_poly(sp, s.restriction, {}, sys.params));
        if (s.remainder) u.unknown = ideal_monomials(sp, s.degree, sys.stratum);
        forms.emplace(s.name, u);
        sys.forms.push_back({s.name, s.degree, s.restriction,
                             monomials_of_degree(sp, s.degree, sp.all() - sys.stratum)});
    }
    const auto& text = f == ClusterFormat::G2 ? g2_text() : c2_text();
    for (std::size_t i = 0; i < text.size(); ++i) {
        BuiltinEquation e;
        e.tag = sys.candidate.equation_tag(i);
        e.degree = sys.candidate.eq_degrees[i];
        e.verbatim = text[i].verbatim;
        e.parsed = text[i].parsed ? text[i].parsed : text[i].verbatim;
        e.note = text[i].note ? text[i].note : "";
        e.poly = parse_uncertain(sp, e.parsed, forms, sys.params);
        bool homogeneous = e.poly.known.degree() == e.degree;
        for (const auto& m : e.poly.unknown) homogeneous = homogeneous && m.degree(sp) == e.degree;
        if (!homogeneous) throw std::logic_error(e.tag + " is not homogeneous of degree " + std::to_string(e.degree));
        sys.equations.push_back(std::move(e));
    }
    return sys;
}

std::string export_listing(ClusterFormat f) {
    BuiltinSystem sys = builtin_system(f);
    const auto& sp = sys.candidate.space;
    std::ostringstream os;
    os << "# #282 in " << (f == ClusterFormat::G2 ? "G2(4)" : "C2") << " format, ambient " << sp.str() << "\n";
    for (const auto& fr : sys.forms) os << "# " << fr.name << " = " << fr.restriction << " on p = q = 0\n";
    for (const auto& e : sys.equations) {
        os << e.tag << " (degree " << e.degree << ") = " << e.verbatim << "\n";
        if (!e.note.empty()) os << "  note: " << e.note << "\n";
        os << "  on p = q = 0: " << e.poly.known.restrict(sys.stratum).str() << "\n";
    }
    return os.str();
}

bool cluster_assumptions(ClusterFormat f, bool assume_q_in_s6, AssumptionLedger& ledger, std::string& unmet) {
    const auto lambda = ParamScalar::param("lambda");
    const auto mu = ParamScalar::param("mu");
    if (f == ClusterFormat::G2) {
        ledger.record("P12 = lambda*r^2 and Q9 = mu*u modulo (p, q)", "restriction of the generic forms to p = q = 0");
        ledger.assert_nonzero(lambda, "quasi-smoothness of X at p_r");
        ledger.assert_nonzero(mu, "quasi-smoothness of X at p_r");
        return true;
    }
    if (!assume_q_in_s6) {
        unmet = "normalization q in S6 not granted; the point p_r and the stratum p = q = 0 are not determined";
        ledger.record("q in S6 not assumed", "caller option");
        return false;
    }
    ledger.record("S6 = q", "normalization: q appears in S6, coordinate q replaced by S6");
    ledger.record("X general in the C2 family", "generality hypothesis for the C2 format");
    ledger.record("P12 = lambda*r^2, Q10 = mu*v, R8 = nu*t modulo (p, q)",
                  "restriction of the generic forms to p = q = 0");
    ledger.assert_nonzero(lambda, "generality of X; quasi-smoothness of X at p_r");
    ledger.assert_nonzero(mu, "v^2 appears in F6 or F7 since p_v is not in X");
    ledger.assert_nonzero(ParamScalar::param("nu"), "t^2 appears in F1 since p_t is not in X");
    return true;
}

ParamPolynomial restrict(const ParamPolynomial& f, const Stratum& s) { return f.restrict(s.zeroed); }

ParamPolynomial initial_part(const ParamPolynomial& f, const AdmissibleWeight& w) { return f.initial_part(w.b); }

namespace {

void drop_zero(EqSystem& sys) {
    for (std::size_t i = sys.eqs.size(); i-- > 0;)
        if (sys.eqs[i].is_zero()) {
            sys.eqs.erase(sys.eqs.begin() + static_cast<long>(i));
            sys.tags.erase(sys.tags.begin() + static_cast<long>(i));
        }
}

/// Index of the first equation linear in var with certified single-term scalar coefficient.
std::optional<std::size_t> linear_equation(const std::vector<ParamPolynomial>& eqs, std::size_t var,
                                           const AssumptionLedger& ledger) {
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (eqs[i].degree_in(var) != 1) continue;
        ParamPolynomial co = eqs[i].coefficient_in(var, 1);
        if (!co.is_scalar() || co.size() != 1) continue;
        ParamScalar c = co.terms().begin()->second;
        if (c.as_term() && ledger.certified_nonzero(c)) return i;
    }
    return std::nullopt;
}

}  // namespace

EliminationRecord eliminate(EqSystem& sys, std::size_t var, const AssumptionLedger& ledger) {
    auto idx = linear_equation(sys.eqs, var, ledger);
    if (!idx) throw NotApplicable("eliminate: no equation is linear in the variable with a certified coefficient");
    const ParamPolynomial& e = sys.eqs[*idx];
    EliminationRecord rec;
    rec.var = var;
    rec.equation = sys.tags[*idx];
    rec.coefficient = e.coefficient_in(var, 1).terms().begin()->second;
    rec.solution = (-ledger.unit_inverse(rec.coefficient)) * e.coefficient_in(var, 0);
    sys.eqs.erase(sys.eqs.begin() + static_cast<long>(*idx));
    sys.tags.erase(sys.tags.begin() + static_cast<long>(*idx));
    for (auto& q : sys.eqs) q = q.substitute(var, rec.solution);
    drop_zero(sys);
    return rec;
}

PlaneCurve plane_curve_reduction(ClusterFormat f, const AssumptionLedger& ledger) {
    BuiltinSystem bs = builtin_system(f);
    const auto& sp = bs.candidate.space;
    PlaneCurve pc;
    pc.chart = sp.index(f == ClusterFormat::G2 ? "w" : "s");
    pc.main_var = sp.index("r");
    EqSystem sys;
    for (const auto& e : bs.equations) {
        UncertainPolynomial u = e.poly.restrict(bs.stratum);
        if (!u.exact()) {
            pc.failure = e.tag + " has unknown terms on p = q = 0";
            return pc;
        }
        sys.tags.push_back(e.tag);
        sys.eqs.push_back(u.known.dehomogenize(pc.chart));
    }
    drop_zero(sys);
    const CoordSet fixed = bs.stratum.with(pc.chart);
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t v = 0; v < sp.size() && !progress; ++v) {
            if (fixed.contains(v)) continue;
            bool present = false;
            for (const auto& q : sys.eqs) present = present || q.degree_in(v) > 0;
            if (!present) continue;
            try {
                pc.eliminations.push_back(eliminate(sys, v, ledger));
                progress = true;
            } catch (const NotApplicable&) {
            }
        }
    }
    CoordSet vars;
    for (const auto& q : sys.eqs) vars = vars | q.variables();
    if (sys.eqs.empty() || vars.size() != 2) {
        pc.failure = "elimination left " + std::to_string(sys.eqs.size()) + " equations in " + sp.describe(vars);
        return pc;
    }
    std::size_t gi = 0;
    for (std::size_t i = 1; i < sys.eqs.size(); ++i) {
        auto key = [&](std::size_t k) { return std::make_pair(sys.eqs[k].total_degree(), sys.eqs[k].size()); };
        if (key(i) < key(gi)) gi = i;
    }
    pc.generator = sys.tags[gi];
    pc.raw = sys.eqs[gi];
    for (std::size_t i = 0; i < sys.eqs.size(); ++i) {
        if (i == gi) continue;
        auto q = divide_exact(sys.eqs[i], pc.raw, ledger);
        if (!q) {
            pc.failure = sys.tags[i] + " is not a multiple of " + pc.generator;
            return pc;
        }
        pc.multiples.emplace_back(sys.tags[i], *q);
    }
    Monomial norm = f == ClusterFormat::G2 ? Monomial::one(sp.size()) : Monomial::var(sp.size(), pc.main_var);
    Rational target = f == ClusterFormat::G2 ? Rational(-1) : Rational(1);
    ParamScalar c = pc.raw.coeff(norm);
    if (!c.as_term() || !ledger.certified_nonzero(c)) {
        pc.failure = "normalizing coefficient " + c.str() + " is not a certified unit";
        return pc;
    }
    pc.scaling = ParamScalar(target) * ledger.unit_inverse(c);
    pc.curve = pc.scaling * pc.raw;
    if (f == ClusterFormat::G2) {
        pc.reparametrization["mu"] = ParamScalar::param("mu", -1);
        pc.curve = pc.curve.map_params(pc.reparametrization);
    }
    pc.ok = true;
    return pc;
}

IrreducibilityCertificate quadratic_irreducibility(const ParamPolynomial& f, std::size_t main_var,
                                                   const AssumptionLedger& ledger) {
    if (f.degree_in(main_var) != 2) throw std::invalid_argument("quadratic_irreducibility: not quadratic in main variable");
    IrreducibilityCertificate ic;
    ic.a = f.coefficient_in(main_var, 2);
    ic.b = f.coefficient_in(main_var, 1);
    ic.c = f.coefficient_in(main_var, 0);
    ic.disc = ic.b * ic.b - ParamScalar(4) * (ic.a * ic.c);
    bool primitive = false;
    for (const auto* co : {&ic.a, &ic.b, &ic.c})
        if (co->is_scalar() && co->size() == 1 && ledger.certified_nonzero(co->terms().begin()->second)) primitive = true;
    if (!primitive) {
        ic.method = "none";
        ic.reason = "no coefficient in the main variable is a certified nonzero constant; primitivity not certified";
        return ic;
    }
    CoordSet vars = ic.disc.variables();
    if (vars.size() != 1) {
        ic.method = "none";
        ic.reason = vars.empty() ? "discriminant is constant" : "discriminant is not univariate";
        return ic;
    }
    const std::size_t v = vars.positions().front();
    ic.other_var = v;
    const auto& sp = f.space();
    auto scalar_of = [](const ParamPolynomial& p) { return p.is_zero() ? ParamScalar() : p.terms().begin()->second; };
    int deg = ic.disc.degree_in(v);
    ParamScalar top = scalar_of(ic.disc.coefficient_in(v, deg));
    if (deg % 2 == 1 && ledger.certified_nonzero(top)) {
        ic.irreducible = true;
        ic.method = "odd-degree";
        ic.reason = "discriminant has odd degree " + std::to_string(deg) + " in " + sp.name(v) +
                    " with certified leading coefficient " + top.str();
        return ic;
    }
    int val = 0;
    while (ic.disc.coefficient_in(v, val).is_zero()) ++val;
    ParamScalar low = scalar_of(ic.disc.coefficient_in(v, val));
    if (val % 2 == 1 && ledger.certified_nonzero(low)) {
        ic.irreducible = true;
        ic.method = "odd-valuation";
        ic.reason = "discriminant has a root of odd multiplicity " + std::to_string(val) + " at " + sp.name(v) +
                    " = 0 with certified coefficient " + low.str();
        return ic;
    }
    ic.method = "none";
    ic.reason = "no non-square witness for the discriminant";
    return ic;
}

namespace {

struct CountInconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Counter {
public:
    Counter(const AssumptionLedger& l, std::vector<std::string>& t) : ledger_(l), log_(t) {}

    int projective(std::vector<ParamPolynomial> eqs, CoordSet live, const std::string& where) {
        if (!simplify(eqs, live, where)) return 0;
        const auto& sp = space(eqs);
        if (live.empty()) {
            log_.push_back(where + ": all coordinates vanish, no point");
            return 0;
        }
        if (eqs.empty()) {
            if (live.size() == 1) {
                log_.push_back(where + ": coordinate point p_" + sp.name(live.positions().front()) + ", 1 point");
                return 1;
            }
            throw CountInconclusive(where + ": no equations left on " + sp.describe(live));
        }
        const std::size_t x = live.positions().front();
        std::vector<ParamPolynomial> chart, zero;
        for (const auto& e : eqs) {
            chart.push_back(e.dehomogenize(x));
            zero.push_back(e.restrict(CoordSet::single(x)));
        }
        std::string w1 = where + ", " + sp.name(x) + "=1";
        int n1 = affine(chart, live.without(x), w1);
        if (n1 > 1 && sp.weight(x) != 1)
            throw CountInconclusive(w1 + ": several affine solutions on a chart of weight " + std::to_string(sp.weight(x)));
        int n0 = projective(zero, live.without(x), where + ", " + sp.name(x) + "=0");
        return n1 + n0;
    }

    int affine(std::vector<ParamPolynomial> eqs, CoordSet live, const std::string& where) {
        if (!simplify(eqs, live, where)) return 0;
        if (eqs.empty()) {
            if (live.empty()) {
                log_.push_back(where + ": unique solution");
                return 1;
            }
            throw CountInconclusive(where + ": free coordinates " + space_.describe(live));
        }
        throw CountInconclusive(where + ": system not triangular, remaining " + std::to_string(eqs.size()) +
                                " equations in " + space_.describe(live));
    }

private:
    const WeightedSpace& space(const std::vector<ParamPolynomial>& eqs) {
        if (!eqs.empty()) space_ = eqs.front().space();
        return space_;
    }

    /// False on contradiction.
    bool simplify(std::vector<ParamPolynomial>& eqs, CoordSet& live, const std::string& where) {
        space(eqs);
        for (bool changed = true; changed;) {
            changed = false;
            eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const ParamPolynomial& e) { return e.is_zero(); }),
                      eqs.end());
            for (const auto& e : eqs) {
                if (!e.is_scalar()) continue;
                ParamScalar c = e.terms().begin()->second;
                if (ledger_.certified_nonzero(c)) {
                    log_.push_back(where + ": contradiction " + c.str() + " = 0");
                    return false;
                }
                throw CountInconclusive(where + ": scalar equation " + c.str() + " = 0 not decided");
            }
            for (std::size_t i = 0; i < eqs.size() && !changed; ++i) {
                if (eqs[i].size() != 1) continue;
                const auto& [m, c] = *eqs[i].terms().begin();
                auto x = m.pure_power_of();
                if (!x || !ledger_.certified_nonzero(c)) continue;
                log_.push_back(where + ": " + eqs[i].str() + " = 0 gives " + space_.name(*x) + " = 0");
                for (auto& e : eqs) e = e.restrict(CoordSet::single(*x));
                live = live.without(*x);
                changed = true;
            }
            for (auto x : live.positions()) {
                if (changed) break;
                auto idx = linear_equation(eqs, x, ledger_);
                if (!idx) continue;
                ParamScalar c = eqs[*idx].coefficient_in(x, 1).terms().begin()->second;
                ParamPolynomial sol = (-ledger_.unit_inverse(c)) * eqs[*idx].coefficient_in(x, 0);
                log_.push_back(where + ": " + space_.name(x) + " = " + sol.str());
                eqs.erase(eqs.begin() + static_cast<long>(*idx));
                for (auto& e : eqs) e = e.substitute(x, sol);
                live = live.without(x);
                changed = true;
            }
        }
        return true;
    }

    const AssumptionLedger& ledger_;
    std::vector<std::string>& log_;
    WeightedSpace space_;
};

WeightedSpace drop_coordinate(const WeightedSpace& sp, std::size_t k, const std::vector<int>& weights) {
    std::vector<Coordinate> cs;
    for (std::size_t i = 0; i < sp.size(); ++i)
        if (i != k) cs.push_back({sp.name(i), weights[i]});
    return WeightedSpace(cs);
}

ParamPolynomial reembed(const ParamPolynomial& f, const WeightedSpace& target, std::size_t dropped) {
    ParamPolynomial out(target);
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> e;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != dropped) e.push_back(m.exp(i));
        out.add_term(Monomial(e), c);
    }
    return out;
}

}  // namespace

PointCount count_points(const std::vector<ParamPolynomial>& eqs, CoordSet live, const AssumptionLedger& ledger) {
    PointCount pc;
    Counter counter(ledger, pc.transcript);
    try {
        pc.count = counter.projective(eqs, live, "P");
        pc.finite = true;
    } catch (const CountInconclusive& e) {
        pc.finite = false;
        pc.reason = e.what();
    }
    return pc;
}

ExceptionalPresentation exceptional_presentation(ClusterFormat f, const AssumptionLedger& ledger) {
    BuiltinSystem bs = builtin_system(f);
    const auto& sp = bs.candidate.space;
    const std::size_t r = sp.index("r");
    ExceptionalPresentation ep;
    BasketEntry six = BasketEntry::normalized(6, 1);
    ep.weight = initial_weight(QuotientPoint::from(six, r), sp);
    const auto& b = ep.weight.b;
    ep.e_space = drop_coordinate(sp, r, b);
    std::vector<long> m_all;
    for (const auto& e : bs.equations) {
        InitialPartRecord rec;
        rec.tag = e.tag;
        rec.weight = e.poly.min_weight(b);
        m_all.push_back(rec.weight);
        ParamPolynomial ki = e.poly.known.is_zero() ? ParamPolynomial(sp) : e.poly.known.initial_part(b);
        rec.known_initial = (!ki.is_zero() && ki.min_weight(b) == rec.weight) ? ki : ParamPolynomial(sp);
        ParamPolynomial res = e.poly.known.restrict(bs.stratum);
        if (res.is_zero()) {
            rec.check = "known part vanishes on p = q = 0";
        } else {
            long mhat = res.min_weight(b);
            rec.restricted_initial = res.initial_part(b);
            rec.rigorous = mhat == rec.weight;
            rec.check = "lowest weight on p = q = 0 is " + std::to_string(mhat) + "/6, overall lower bound " +
                        std::to_string(rec.weight) + "/6";
        }
        ep.parts.push_back(std::move(rec));
    }
    std::multiset<int> want = {1, six.a, six.r - six.a};
    std::vector<std::vector<std::pair<std::size_t, Monomial>>> options(bs.equations.size());
    for (std::size_t i = 0; i < bs.equations.size(); ++i) {
        const auto& u = bs.equations[i].poly;
        for (const auto& [m, c] : u.known.terms()) {
            CoordSet rest = m.support().without(r);
            if (rest.size() != 1) continue;
            std::size_t x = rest.positions().front();
            if (m.exp(x) != 1 || m.weighted(b) != m_all[i]) continue;
            if (!u.coefficient_certified(m, ledger)) continue;
            options[i].emplace_back(x, m);
        }
    }
    const std::size_t need = sp.size() - 4;
    std::vector<KblChoice> chosen;
    std::function<bool(std::size_t, CoordSet)> dfs = [&](std::size_t i, CoordSet used) -> bool {
        if (chosen.size() == need) {
            std::multiset<int> local;
            for (std::size_t k = 0; k < sp.size(); ++k)
                if (k != r && !used.contains(k)) local.insert(b[k]);
            return local == want;
        }
        if (i == bs.equations.size()) return false;
        for (const auto& [x, m] : options[i]) {
            if (used.contains(x)) continue;
            chosen.push_back({bs.equations[i].tag, x, m});
            if (dfs(i + 1, used.with(x))) return true;
            chosen.pop_back();
        }
        return dfs(i + 1, used);
    };
    if (!dfs(0, CoordSet())) {
        ep.failure = "no KBL choice of equations and coordinates";
        return ep;
    }
    ep.kbl = chosen;
    CoordSet eliminated;
    for (const auto& k : chosen) eliminated = eliminated.with(k.coordinate);
    ep.local = sp.all().without(r) - eliminated;
    std::vector<ParamPolynomial> restricted;
    for (const auto& k : chosen) {
        std::size_t i = 0;
        while (ep.parts[i].tag != k.tag) ++i;
        if (!ep.parts[i].rigorous) {
            ep.failure = k.tag + ": initial part on p = q = 0 not certified (" + ep.parts[i].check + ")";
            return ep;
        }
        ep.presentation.push_back(reembed(ep.parts[i].known_initial.dehomogenize(r), ep.e_space, r));
        restricted.push_back(reembed(ep.parts[i].restricted_initial.dehomogenize(r), ep.e_space, r));
    }
    ep.restricted = restricted;
    CoordSet live = ep.e_space.all() - ep.e_space.set({"p", "q"});
    ep.count = count_points(restricted, live, ledger);
    if (!ep.count.finite) {
        ep.failure = "intersection with p = q = 0 not shown finite: " + ep.count.reason;
        return ep;
    }
    ep.ok = true;
    return ep;
}

ClusterCertificate verify_cluster(ClusterFormat f, bool assume_q_in_s6) {
    ClusterCertificate cc;
    cc.format = f;
    std::string unmet;
    if (!cluster_assumptions(f, assume_q_in_s6, cc.ledger, unmet)) {
        cc.failures.push_back(unmet);
        return cc;
    }
    const FanoCandidate c = registry("#282");
    const auto& sp = c.space;
    cc.curve = plane_curve_reduction(f, cc.ledger);
    if (!cc.curve.ok) cc.failures.push_back("plane curve reduction: " + cc.curve.failure);
    else {
        cc.irreducibility = quadratic_irreducibility(cc.curve.curve, cc.curve.main_var, cc.ledger);
        if (!cc.irreducibility->irreducible) cc.failures.push_back("irreducibility: " + cc.irreducibility->reason);
    }
    if (f == ClusterFormat::G2) {
        BuiltinSystem bs = builtin_system(f);
        CoordSet zeroed = bs.stratum.with(sp.index("w"));
        std::vector<ParamPolynomial> eqs;
        for (const auto& e : bs.equations) eqs.push_back(e.poly.known.restrict(zeroed));
        cc.boundary.description = "Gamma meets (w = 0) in finitely many points";
        cc.boundary.count = count_points(eqs, sp.all() - zeroed, cc.ledger);
        cc.boundary.ok = cc.boundary.count->finite;
    } else {
        cc.boundary.description = "Gamma meets (s = 0) in no curve: stratum {p,q,s} curve-free via ample D_r";
        cc.boundary.stratum = ample_reduction(c, Stratum{sp.set({"p", "q", "s"})}, sp.index("r"),
                                              guaranteed_pure_powers(c).facts);
        cc.boundary.ok = is_curve_free(cc.boundary.stratum->kind);
    }
    if (!cc.boundary.ok) cc.failures.push_back("boundary: " + cc.boundary.description + " not certified");
    cc.exceptional = exceptional_presentation(f, cc.ledger);
    if (!cc.exceptional.ok) cc.failures.push_back("exceptional divisor: " + cc.exceptional.failure);
    const auto& w = cc.exceptional.weight;
    const QuotientPoint& pt = w.point;
    cc.dp = ParamBlowupClass{Rational(1), UPoly(w.order_bound(sp.index("p")))};
    cc.dq = ParamBlowupClass{Rational(6), UPoly(Rational(1, pt.r)) * UPoly::param()};
    cc.e_min = Rational(pt.r) * w.order_bound(sp.index("q"));
    cc.triple_product = y_triple(cc.dp, cc.dp, cc.dq, pt, c.k3);
    cc.triple_negative = negative_for_all_from(cc.triple_product, cc.e_min);
    if (!cc.triple_negative) cc.failures.push_back("triple product " + cc.triple_product.str() + " not negative");
    cc.excluded = cc.failures.empty();
    return cc;
}

namespace {

ojson polys(const std::vector<ParamPolynomial>& v) {
    ojson a = ojson::array();
    for (const auto& p : v) a.push_back(p.str());
    return a;
}

}  // namespace

ojson to_json(const PlaneCurve& pc, const WeightedSpace& sp) {
    ojson j;
    j["ok"] = pc.ok;
    if (!pc.failure.empty()) j["failure"] = pc.failure;
    j["chart"] = sp.name(pc.chart) + " = 1";
    ojson el = ojson::array();
    for (const auto& e : pc.eliminations)
        el.push_back(ojson{{"variable", sp.name(e.var)},
                           {"equation", e.equation},
                           {"coefficient", e.coefficient.str()},
                           {"solution", e.solution.str()}});
    j["eliminations"] = el;
    if (pc.ok) {
        j["generator"] = pc.generator;
        ojson mult = ojson::array();
        for (const auto& [t, q] : pc.multiples) mult.push_back(ojson{{"equation", t}, {"quotient", q.str()}});
        j["multiples"] = mult;
        j["raw"] = pc.raw.str();
        j["scaling"] = pc.scaling.str();
        ojson rp = ojson::object();
        for (const auto& [n, v] : pc.reparametrization) rp[n] = v.str();
        j["reparametrization"] = rp;
        j["curve"] = pc.curve.str();
    }
    return j;
}

ojson to_json(const IrreducibilityCertificate& ic, const WeightedSpace& sp) {
    ojson j{{"irreducible", ic.irreducible},
            {"method", ic.method},
            {"reason", ic.reason},
            {"a", ic.a.str()},
            {"b", ic.b.str()},
            {"c", ic.c.str()},
            {"discriminant", ic.disc.str()}};
    if (ic.other_var) j["discriminant_variable"] = sp.name(*ic.other_var);
    return j;
}

ojson to_json(const PointCount& pc) {
    ojson j{{"finite", pc.finite}};
    if (pc.finite) j["count"] = pc.count;
    else j["reason"] = pc.reason;
    j["transcript"] = pc.transcript;
    return j;
}

ojson to_json(const ExceptionalPresentation& ep, const WeightedSpace& sp) {
    ojson j;
    j["ok"] = ep.ok;
    if (!ep.failure.empty()) j["failure"] = ep.failure;
    j["initial_weight"] = ep.weight.str(sp);
    j["ambient"] = ep.e_space.str();
    ojson parts = ojson::array();
    for (const auto& p : ep.parts)
        parts.push_back(ojson{{"equation", p.tag},
                              {"weight", std::to_string(p.weight) + "/6"},
                              {"known_initial_part", p.known_initial.str()},
                              {"on_p_q_zero", p.restricted_initial.str()},
                              {"certified_on_p_q_zero", p.rigorous},
                              {"check", p.check}});
    j["initial_parts"] = parts;
    ojson kbl = ojson::array();
    for (const auto& k : ep.kbl)
        kbl.push_back(ojson{{"equation", k.tag}, {"coordinate", sp.name(k.coordinate)}, {"monomial", k.monomial.str(sp)}});
    j["kbl"] = kbl;
    if (!ep.kbl.empty()) j["local_coordinates"] = sp.describe(ep.local);
    j["presentation"] = polys(ep.presentation);
    j["presentation_on_p_q_zero"] = polys(ep.restricted);
    j["points_on_p_q_zero"] = to_json(ep.count);
    return j;
}

ojson to_json(const AssumptionLedger& ledger) {
    ojson a = ojson::array();
    for (const auto& e : ledger.entries()) a.push_back(ojson{{"statement", e.statement}, {"provenance", e.provenance}});
    return a;
}

ojson to_json(const ClusterCertificate& cc) {
    const FanoCandidate c = registry("#282");
    const auto& sp = c.space;
    ojson j;
    j["format"] = to_string(cc.format);
    j["excluded"] = cc.excluded;
    if (!cc.failures.empty()) j["failures"] = cc.failures;
    j["assumptions"] = to_json(cc.ledger);
    if (!cc.curve.ok && cc.curve.failure.empty()) return j;
    j["plane_curve"] = to_json(cc.curve, sp);
    if (cc.irreducibility) j["irreducibility"] = to_json(*cc.irreducibility, sp);
    ojson bd{{"description", cc.boundary.description}, {"ok", cc.boundary.ok}};
    if (cc.boundary.count) bd["points"] = to_json(*cc.boundary.count);
    if (cc.boundary.stratum) bd["stratum"] = to_json(*cc.boundary.stratum, sp);
    j["boundary"] = bd;
    j["exceptional_divisor"] = to_json(cc.exceptional, sp);
    j["triple_product"] = ojson{{"D_p", ojson{{"n", cc.dp.n.str()}, {"lambda", cc.dp.lam.str()}}},
                                {"D_q", ojson{{"n", cc.dq.n.str()}, {"lambda", cc.dq.lam.str()}}},
                                {"value", cc.triple_product.str()},
                                {"e_min", cc.e_min.str()},
                                {"negative_for_all_e", cc.triple_negative}};
    return j;
}

}  // namespace fano
