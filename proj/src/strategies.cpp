#include "fano/exclusion.hpp"

#include <functional>
#include <map>

namespace fano {

namespace {

QuotientPoint placed(const FanoCandidate& c, const BasketEntry& b, const std::string& coord) {
    const std::size_t k = c.space.index(coord);
    auto place = coordinate_placement(c, b.r);
    if (!place || c.space.weight(k) != b.r)
        throw std::logic_error(c.id + ": point " + b.type_str() + " cannot be moved to p_" + coord);
    return QuotientPoint::from(b, k);
}

std::vector<std::string> group_of(const FanoCandidate& c, int degree) {
    std::vector<std::string> g;
    for (std::size_t i = 0; i < c.eq_degrees.size(); ++i)
        if (c.eq_degrees[i] == degree) g.push_back(c.equation_tag(i));
    return g;
}

MonomialFact fact(const FanoCandidate& c, const std::string& tag, const std::string& mono, FactStatus st,
                  const std::string& reason) {
    MonomialFact f;
    f.monomial = Monomial::parse(c.space, mono);
    f.equation = tag;
    f.equation_degree = f.monomial.degree(c.space);
    f.group = group_of(c, f.equation_degree);
    f.status = st;
    f.reason = reason;
    return f;
}

OrderBound coordinate_bound(const FanoCandidate& c, const AdmissibleWeight& w, const std::string& coord,
                            const std::string& source) {
    const std::size_t i = c.space.index(coord);
    return {"D_" + coord, Rational(c.space.weight(i)), w.order_bound(i), source};
}

OrderBound residue_bound(const FanoCandidate& c, const QuotientPoint& p, const std::string& coord) {
    const std::size_t i = c.space.index(coord);
    return {"D_" + coord, Rational(c.space.weight(i)), residue_order_bound(p, c.space, i),
            "residue of the weight modulo the index"};
}

ExclusionVerdict ivr_script(const FanoCandidate& c, const BasketEntry& b, const std::string& coord,
                            std::initializer_list<std::string_view> C) {
    return test_ivr(c, placed(c, b, coord), c.space.set(C));
}

ExclusionVerdict nef_script(const FanoCandidate& c, const BasketEntry& b, std::initializer_list<std::string_view> D,
                            const Rational& scale) {
    QuotientPoint p = QuotientPoint::from(b);
    std::vector<OrderBound> bounds;
    for (auto d : D) bounds.push_back(residue_bound(c, p, std::string(d)));
    auto facts = guaranteed_pure_powers(c).facts;
    auto v = test_nef(c, p, bounds, stratum_status(c, Stratum{c.space.set(D)}, facts), scale);
    v.notes.push_back("the point lies on Pi(" + c.space.describe(c.space.set(D)) +
                      ") since those weights are prime to the index");
    return v;
}

/// #308, the 1/5(1,2,3) point at p_q, split on mu*nu' - nu*mu'.
ExclusionVerdict split_308(const FanoCandidate& c, const BasketEntry& b) {
    const auto& sp = c.space;
    const QuotientPoint p = placed(c, b, "q");
    const AdmissibleWeight w_in = initial_weight(p, sp);
    const auto facts = guaranteed_pure_powers(c).facts;
    const std::size_t q = sp.index("q");
    const StratumCertificate finite = ample_reduction(c, Stratum{sp.set({"p", "r", "s"})}, q, facts);
    const std::string writing =
        "F3 = lambda q^3 p + mu q^2 r + nu q^2 s + q f11 + f16, F4 = lambda' q^3 p + mu' q^2 r + nu' q^2 s + q g11 + g16";

    CaseBranch a;
    a.label = "A";
    a.assumptions = {writing, "mu*nu' - nu*mu' != 0",
                     "after replacing r and s: mu = nu' = 1 and lambda = nu = lambda' = mu' = 0"};
    const std::string ra = "normalization of branch A";
    a.normal_form_facts = {fact(c, "F3", "q^2*r", FactStatus::Guaranteed, ra),
                           fact(c, "F3", "q^3*p", FactStatus::Absent, ra),
                           fact(c, "F3", "q^2*s", FactStatus::Absent, ra),
                           fact(c, "F4", "q^2*s", FactStatus::Guaranteed, ra),
                           fact(c, "F4", "q^3*p", FactStatus::Absent, ra),
                           fact(c, "F4", "q^2*r", FactStatus::Absent, ra)};
    NormalForm nfa{"branch A", a.normal_form_facts};
    AdmissibleWeight wa = weight_bump(w_in, lowest_weight_part(c, "F3", w_in, nfa), sp.index("r"), sp);
    wa = weight_bump(wa, lowest_weight_part(c, "F4", wa, nfa), sp.index("s"), sp);
    a.verdict = test_nef(c, p,
                         {coordinate_bound(c, wa, "p", "initial weight"),
                          coordinate_bound(c, wa, "r", "bump by F3^w = q^2 r"),
                          coordinate_bound(c, wa, "s", "bump by F4^w = q^2 s")},
                         finite);
    a.verdict.certificate["initial_weight"] = w_in.str(sp);
    a.verdict.certificate["bumped_weight"] = wa.str(sp);
    a.verdict.certificate["bumps"] = wa.bump_log;

    CaseBranch bb;
    bb.label = "B";
    bb.assumptions = {writing, "mu*nu' - nu*mu' = 0",
                      "after replacing r and s and possibly interchanging F3 and F4: F3 = q^3 p + q f11 + f16, "
                      "F4 = q^2 s + q g11 + g16"};
    const std::string rb = "normalization of branch B";
    bb.normal_form_facts = {fact(c, "F3", "q^3*p", FactStatus::Guaranteed, rb),
                            fact(c, "F3", "q^2*r", FactStatus::Absent, rb),
                            fact(c, "F3", "q^2*s", FactStatus::Absent, rb),
                            fact(c, "F4", "q^2*s", FactStatus::Guaranteed, rb),
                            fact(c, "F4", "q^3*p", FactStatus::Absent, rb),
                            fact(c, "F4", "q^2*r", FactStatus::Absent, rb)};
    NormalForm nfb{"branch B", bb.normal_form_facts};
    AdmissibleWeight wb = weight_bump(w_in, lowest_weight_part(c, "F3", w_in, nfb), sp.index("p"), sp);
    OrderBound S = coordinate_bound(c, wb, "p", "bump by F3^w = q^3 p");
    OrderBound L{"L in <r,s>", Rational(6), wb.order_bound(sp.index("r")), "general member of the pencil <r,s>"};
    bb.verdict = test_curve_family(c, p, S, L, finite);
    bb.verdict.certificate["initial_weight"] = w_in.str(sp);
    bb.verdict.certificate["bumped_weight"] = wb.str(sp);
    bb.verdict.certificate["bumps"] = wb.bump_log;

    return run_case_split("mu*nu' - nu*mu' != 0 or mu*nu' - nu*mu' = 0", {a, bb});
}

ExclusionVerdict unresolved_cluster_point(const FanoCandidate& c, const BasketEntry& b) {
    ExclusionVerdict v;
    v.center = CenterSpec{CenterKind::QuotientPoint, b, std::nullopt};
    v.lemma = Lemma::NegativeCurve;
    v.checks = {{"explicit equations supplied", false}};
    v.notes.push_back("numerical data alone do not exclude this point; verify with --format g2 or --format c2");
    (void)c;
    return v;
}

using Script = std::function<ExclusionVerdict(const FanoCandidate&, const BasketEntry&, const VerifyOptions&, Report&)>;

std::map<std::string, Script> scripts_for(const std::string& id) {
    std::map<std::string, Script> s;
    auto half = [](const FanoCandidate& c, const BasketEntry&, const VerifyOptions&, Report&) {
        return test_half_points(c);
    };
    if (id == "#25") {
        s["1/2(1,1,1)"] = half;
        s["1/5(1,1,4)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            return ivr_script(c, b, "q", {"p", "s", "u", "v"});
        };
        s["1/7(1,2,5)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            return ivr_script(c, b, "s", {"p", "q", "r"});
        };
    } else if (id == "#166") {
        s["1/2(1,1,1)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            return ivr_script(c, b, "p", {"q", "r", "s", "t", "u"});
        };
        s["1/3(1,1,2)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            return ivr_script(c, b, "s", {"p", "q", "r"});
        };
    } else if (id == "#282") {
        s["1/2(1,1,1)"] = half;
        s["1/3(1,1,2)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            auto v = nef_script(c, b, {"p", "s", "t", "w"}, Rational(1));
            const auto pts = stratum_status(c, Stratum{c.space.set({"p", "s", "t", "w"})}).points;
            std::string list;
            for (const auto& x : pts) list += (list.empty() ? "" : ", ") + x;
            v.notes.push_back("computed points on Pi(p,s,t,w): " + list +
                              "; the label 1/2(1,1,2) found in the literature is not a terminal type and is not used");
            return v;
        };
        s["1/7(1,1,6)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            return ivr_script(c, b, "s", {"p", "q", "r"});
        };
        s["1/6(1,1,5)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions& o, Report& rep) {
            if (!o.format) return unresolved_cluster_point(c, b);
            ClusterCertificate cc = verify_cluster(*o.format, o.assume_q_in_s6);
            rep.ledger = cc.ledger;
            return cluster_verdict(cc);
        };
    } else if (id == "#308") {
        s["1/2(1,1,1)"] = half;
        s["1/3(1,1,2)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            auto v = nef_script(c, b, {"p", "q", "u"}, Rational(8));
            return v;
        };
        s["1/6(1,1,5)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            return ivr_script(c, b, "s", {"p", "q", "r"});
        };
        s["1/5(1,2,3)"] = [](const FanoCandidate& c, const BasketEntry& b, const VerifyOptions&, Report&) {
            return split_308(c, b);
        };
    }
    return s;
}

/// Subsets of `from` with 1..max_size elements, by size then by bit pattern.
std::vector<CoordSet> subsets(CoordSet from, int max_size) {
    auto pos = from.positions();
    std::vector<CoordSet> out;
    for (int k = 1; k <= max_size; ++k)
        for (std::uint32_t mask = 0; mask < (1u << pos.size()); ++mask) {
            if (std::popcount(mask) != k) continue;
            CoordSet s;
            for (std::size_t i = 0; i < pos.size(); ++i)
                if (mask >> i & 1u) s = s.with(pos[i]);
            out.push_back(s);
        }
    return out;
}

constexpr int kMaxSubset = 5;

ExclusionVerdict automatic_point(const FanoCandidate& c, const BasketEntry& b) {
    const auto& sp = c.space;
    if (b.r == 2) {
        auto v = test_half_points(c);
        if (v.excluded()) return v;
    }
    const auto facts = guaranteed_pure_powers(c).facts;
    int tried_ivr = 0, tried_nef = 0;
    const auto k = coordinate_placement(c, b.r);
    if (k) {
        const QuotientPoint p = QuotientPoint::from(b, *k);
        const Rational threshold = Rational(weight_product(p)) * c.k3;
        for (CoordSet C : subsets(sp.all().without(*k), kMaxSubset)) {
            if (ivr(p, sp, C) < threshold) continue;
            ++tried_ivr;
            if (!is_empty(stratum_status(c, Stratum{C.with(*k)}, facts).kind)) continue;
            auto v = test_ivr(c, p, C);
            if (v.excluded()) return v;
        }
    }
    const QuotientPoint p = QuotientPoint::from(b, k);
    const Rational wp(weight_product(p));
    for (CoordSet D : subsets(vanishing_coordinates(p, sp), kMaxSubset)) {
        std::vector<OrderBound> bounds;
        for (auto i : D.positions()) bounds.push_back(residue_bound(c, p, sp.name(i)));
        Rational e = bounds.front().ord / bounds.front().n;
        for (const auto& o : bounds) e = min(e, o.ord / o.n);
        if (c.k3 - e / wp > Rational(0)) continue;
        ++tried_nef;
        StratumCertificate fin = stratum_status(c, Stratum{D}, facts);
        if (!is_curve_free(fin.kind) && k) fin = ample_reduction(c, Stratum{D}, *k, facts);
        if (!is_curve_free(fin.kind)) continue;
        auto v = test_nef(c, p, bounds, fin);
        if (v.excluded()) return v;
    }
    ExclusionVerdict v;
    v.center = CenterSpec{CenterKind::QuotientPoint, b, k ? std::optional(sp.name(*k)) : std::nullopt};
    v.lemma = k ? Lemma::Ivr : Lemma::Nef;
    v.checks = {{"automatic search found a certificate", false}};
    v.notes.push_back("automatic search over coordinate subsets of size <= " + std::to_string(kMaxSubset) + ": " +
                      std::to_string(tried_ivr) + " ivr candidates and " + std::to_string(tried_nef) +
                      " nef candidates met the inequality, none with a certified stratum");
    if (!k) v.notes.push_back("the point cannot be moved to a coordinate point; ivr criterion not applicable");
    return v;
}

Report run(const FanoCandidate& c, const VerifyOptions& opts, bool scripted) {
    Report rep;
    rep.candidate_id = c.id;
    rep.tool_version = kToolVersion;
    rep.options = opts;
    if (auto errs = validate(c); !errs.empty()) {
        rep.overall = OverallVerdict::InvalidInput;
        rep.diagnostics = errs;
        rep.strategy = "none";
        return rep;
    }
    if (opts.format && !(c.id == "#282" && matches_registry(c)))
        throw OptionError("--format applies only to the registry candidate #282");
    rep.strategy = scripted ? "scripted" : "automatic";
    auto scripts = scripted ? scripts_for(c.id) : std::map<std::string, Script>{};
    for (const auto& center : enumerate_centers(c)) {
        switch (center.kind) {
            case CenterKind::Curve: rep.verdicts.push_back(test_curves(c)); break;
            case CenterKind::SmoothPoint: rep.verdicts.push_back(test_smooth_points(c, opts.isolating_product)); break;
            case CenterKind::QuotientPoint: {
                const BasketEntry& b = *center.basket_ref;
                auto it = scripts.find(b.type_str());
                ExclusionVerdict v = it != scripts.end() ? it->second(c, b, opts, rep) : automatic_point(c, b);
                v.center.basket_ref = b;
                rep.verdicts.push_back(std::move(v));
                break;
            }
        }
    }
    rep.overall = OverallVerdict::Superrigid;
    for (const auto& v : rep.verdicts)
        if (!v.excluded()) {
            rep.overall = OverallVerdict::Unresolved;
            rep.unresolved.push_back(v.center.label());
        }
    return rep;
}

}  // namespace

Report verify(const FanoCandidate& c, const VerifyOptions& opts) {
    return run(c, opts, matches_registry(c) && !scripts_for(c.id).empty());
}

Report verify_automatic(const FanoCandidate& c, const VerifyOptions& opts) { return run(c, opts, false); }

}  // namespace fano
