#include "fano/monomial_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fano {

std::string to_string(FactStatus s) {
    switch (s) {
        case FactStatus::Guaranteed: return "guaranteed";
        case FactStatus::Possible: return "possible";
        case FactStatus::Absent: return "absent";
    }
    return "?";
}

std::string to_string(StratumKind k) {
    switch (k) {
        case StratumKind::EmptyByChain: return "empty-by-chain";
        case StratumKind::EmptyByIndex: return "empty-by-index";
        case StratumKind::FiniteByIndex: return "finite-by-index";
        case StratumKind::FiniteByAmple: return "finite-by-ample";
        case StratumKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

bool is_empty(StratumKind k) { return k == StratumKind::EmptyByChain || k == StratumKind::EmptyByIndex; }

bool is_curve_free(StratumKind k) { return k != StratumKind::Inconclusive; }

namespace {

struct DegreeGroup {
    int degree;
    std::vector<std::string> tags;
};

std::vector<DegreeGroup> degree_groups(const FanoCandidate& c) {
    std::vector<DegreeGroup> out;
    for (std::size_t i = 0; i < c.eq_degrees.size(); ++i) {
        if (out.empty() || out.back().degree != c.eq_degrees[i]) out.push_back({c.eq_degrees[i], {}});
        out.back().tags.push_back(c.equation_tag(i));
    }
    return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

}  // namespace

PurePowerReport guaranteed_pure_powers(const FanoCandidate& c) {
    PurePowerReport rep;
    const auto& sp = c.space;
    const auto groups = degree_groups(c);
    for (std::size_t k = 0; k < sp.size(); ++k) {
        const int a = sp.weight(k);
        if (a == 1) continue;
        int same = 0;
        for (std::size_t j = 0; j < sp.size(); ++j) same += sp.weight(j) == a;
        if (same != 1) continue;
        if (c.basket_count(a) != 0) continue;
        std::vector<const DegreeGroup*> divisible;
        for (const auto& g : groups)
            if (g.degree % a == 0) divisible.push_back(&g);
        std::string base = "p_" + sp.name(k) + " not in X since no index-" + std::to_string(a) + " basket entry";
        if (divisible.empty()) {
            rep.inconsistencies.push_back(base + ", but no equation degree is divisible by " + std::to_string(a));
            continue;
        }
        for (const auto* g : divisible) {
            MonomialFact f;
            f.monomial = Monomial::var(sp.size(), k, g->degree / a);
            f.equation_degree = g->degree;
            f.equation = g->tags.front();
            f.group = g->tags;
            if (divisible.size() == 1) {
                f.status = FactStatus::Guaranteed;
                f.reason = base;
                if (g->tags.size() > 1) f.reason += "; after possibly interchanging " + join(g->tags, ", ");
            } else {
                f.status = FactStatus::Possible;
                f.reason = base + "; the power may lie in any of several degrees";
            }
            rep.facts.push_back(std::move(f));
        }
    }
    return rep;
}

std::vector<Monomial> restrict_support(const FanoCandidate& c, int d, const Stratum& s) {
    return monomials_of_degree(c.space, d, s.live(c.space));
}

namespace {

std::vector<IndexClass> classify(const FanoCandidate& c, CoordSet live, std::optional<CoordSet>& gcd_one) {
    std::map<int, IndexClass> by_index;
    const std::uint32_t L = live.bits();
    for (std::uint32_t sub = L; sub != 0; sub = (sub - 1) & L) {
        CoordSet B(sub);
        int g = c.space.gcd_of(B);
        if (g == 1) {
            if (!gcd_one || B.bits() < gcd_one->bits()) gcd_one = B;
            continue;
        }
        auto& ic = by_index[g];
        ic.index = g;
        ic.blocks.push_back(B);
        ic.basket_count = c.basket_count(g);
    }
    std::vector<IndexClass> out;
    for (auto& [g, ic] : by_index) {
        std::sort(ic.blocks.begin(), ic.blocks.end(), [](CoordSet x, CoordSet y) { return x.bits() < y.bits(); });
        out.push_back(std::move(ic));
    }
    return out;
}

IndexAnalysis analyze(const FanoCandidate& c, CoordSet live, IndexRule rule) {
    IndexAnalysis ia;
    ia.live = live;
    ia.rule = rule;
    ia.indices = classify(c, live, ia.gcd_one_block);
    for (const auto& ic : ia.indices) ia.point_bound += ic.basket_count;
    return ia;
}

/// No basket point can have one of these indices.
bool index_excluded(const FanoCandidate& c, const IndexAnalysis& ia) {
    if (ia.gcd_one_block) return false;
    for (const auto& ic : ia.indices) {
        for (const auto& b : c.basket) {
            bool hit = ia.rule == IndexRule::Equal ? b.r == ic.index : ic.index % b.r == 0;
            if (hit) return false;
        }
    }
    return true;
}

std::vector<std::string> point_types(const FanoCandidate& c, const IndexAnalysis& ia) {
    std::vector<std::string> out;
    for (const auto& ic : ia.indices)
        for (const auto& b : c.basket)
            if (b.r == ic.index) out.push_back(std::to_string(b.count) + " x " + b.type_str());
    return out;
}

struct Searcher {
    const FanoCandidate& c;
    std::vector<MonomialFact> facts;
    CoordSet live;
    bool blocks;
    std::vector<DegreeGroup> groups;

    struct Result {
        int rank = 0;
        int progress = 0;
        std::vector<StratumStep> steps;
    };
    std::map<std::pair<std::uint32_t, std::uint32_t>, Result> memo;

    Searcher(const FanoCandidate& cand, std::vector<MonomialFact> fs, CoordSet lv, bool use_blocks)
        : c(cand), facts(std::move(fs)), live(lv), blocks(use_blocks), groups(degree_groups(cand)) {
        std::stable_sort(facts.begin(), facts.end(), [](const MonomialFact& a, const MonomialFact& b) {
            return a.equation_degree < b.equation_degree;
        });
    }

    int group_index(int degree) const {
        for (std::size_t i = 0; i < groups.size(); ++i)
            if (groups[i].degree == degree) return static_cast<int>(i);
        return -1;
    }

    static bool better(const Result& a, const Result& b) {
        if (a.rank != b.rank) return a.rank > b.rank;
        if (a.progress != b.progress) return a.progress > b.progress;
        return a.steps.size() < b.steps.size();
    }

    Result terminal(CoordSet Z) const {
        Result r;
        CoordSet R = live - Z;
        r.progress = Z.size();
        if (R.empty()) {
            r.rank = 3;
            return r;
        }
        if (!blocks) return r;
        IndexAnalysis ia = analyze(c, R, IndexRule::Divides);
        if (!ia.gcd_one_block) r.rank = index_excluded(c, ia) ? 2 : 1;
        r.steps.push_back(ia);
        return r;
    }

    std::optional<ChainStep> chain_move(CoordSet Z, const MonomialFact& f) const {
        auto x = f.monomial.pure_power_of();
        if (!x || !live.contains(*x) || Z.contains(*x)) return std::nullopt;
        ChainStep st;
        st.var = *x;
        st.equation = f.equation;
        st.degree = f.equation_degree;
        st.pure_power = f.monomial;
        st.support = monomials_of_degree(c.space, f.equation_degree, live);
        bool has_power = false;
        for (const auto& m : st.support) {
            if (m == f.monomial) {
                has_power = true;
                continue;
            }
            CoordSet killers = m.support() & Z;
            if (killers.empty()) return std::nullopt;
            st.killed.emplace_back(m, killers.positions().front());
        }
        if (!has_power) return std::nullopt;
        return st;
    }

    std::optional<BlockStep> block_move(CoordSet Z, CoordSet G) const {
        CoordSet R = live - Z;
        BlockStep st;
        st.block = G;
        std::optional<CoordSet> gcd_one;
        st.indices = classify(c, G, gcd_one);
        if (gcd_one) return std::nullopt;
        for (const auto& ic : st.indices)
            if (ic.basket_count != 0) return std::nullopt;
        for (const auto& g : groups) {
            if (monomials_of_degree(c.space, g.degree, G).empty()) continue;
            for (const auto& m : monomials_of_degree(c.space, g.degree, R))
                if (!m.support().subset_of(G)) return std::nullopt;
            st.closed_degrees.push_back(g.degree);
        }
        return st;
    }

    Result solve(CoordSet Z, std::uint32_t used) {
        auto key = std::make_pair(Z.bits(), used);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Result best = terminal(Z);
        if (best.rank < 3) {
            for (const auto& f : facts) {
                if (f.status != FactStatus::Guaranteed) continue;
                int gi = group_index(f.equation_degree);
                if (gi < 0 || (used >> gi) & 1u) continue;
                auto st = chain_move(Z, f);
                if (!st) continue;
                Result sub = solve(Z.with(st->var), used | (1u << gi));
                Result cand;
                cand.rank = sub.rank;
                cand.progress = sub.progress;
                cand.steps.push_back(*st);
                cand.steps.insert(cand.steps.end(), sub.steps.begin(), sub.steps.end());
                if (better(cand, best)) best = std::move(cand);
                if (best.rank == 3) break;
            }
        }
        if (blocks && best.rank < 3) {
            const std::uint32_t R = (live - Z).bits();
            std::vector<std::uint32_t> subs;
            for (std::uint32_t g = R; g != 0; g = (g - 1) & R) subs.push_back(g);
            std::sort(subs.begin(), subs.end());
            for (auto g : subs) {
                auto st = block_move(Z, CoordSet(g));
                if (!st) continue;
                Result sub = solve(Z | CoordSet(g), used);
                Result cand;
                cand.rank = sub.rank;
                cand.progress = sub.progress;
                cand.steps.push_back(*st);
                cand.steps.insert(cand.steps.end(), sub.steps.begin(), sub.steps.end());
                if (better(cand, best)) best = std::move(cand);
                if (best.rank == 3) break;
            }
        }
        memo[key] = best;
        return best;
    }
};

StratumCertificate finish(const FanoCandidate& c, const Stratum& s, Searcher::Result res) {
    StratumCertificate cert;
    cert.stratum = s;
    cert.steps = std::move(res.steps);
    CoordSet eliminated;
    bool only_chain = true;
    for (const auto& st : cert.steps) {
        if (auto* ch = std::get_if<ChainStep>(&st)) eliminated = eliminated.with(ch->var);
        else if (auto* bl = std::get_if<BlockStep>(&st)) {
            eliminated = eliminated | bl->block;
            only_chain = false;
        } else if (auto* ia = std::get_if<IndexAnalysis>(&st)) {
            only_chain = false;
            cert.points = point_types(c, *ia);
            cert.point_bound = ia->point_bound;
        }
    }
    cert.residual = s.live(c.space) - eliminated;
    if (res.rank >= 2) cert.kind = only_chain ? StratumKind::EmptyByChain : StratumKind::EmptyByIndex;
    else if (res.rank == 1) cert.kind = StratumKind::FiniteByIndex;
    else cert.kind = StratumKind::Inconclusive;
    if (res.rank >= 2) {
        cert.points.clear();
        cert.point_bound = 0;
    }
    return cert;
}

}  // namespace

StratumCertificate chain_certificate(const FanoCandidate& c, const Stratum& s, const std::vector<MonomialFact>& facts) {
    Searcher sr(c, facts, s.live(c.space), false);
    return finish(c, s, sr.solve(CoordSet(), 0));
}

StratumCertificate index_certificate(const FanoCandidate& c, const Stratum& s, IndexRule rule) {
    StratumCertificate cert;
    cert.stratum = s;
    CoordSet live = s.live(c.space);
    cert.residual = live;
    if (live.empty()) {
        cert.kind = StratumKind::EmptyByIndex;
        return cert;
    }
    IndexAnalysis ia = analyze(c, live, rule);
    if (ia.gcd_one_block) cert.kind = StratumKind::Inconclusive;
    else if (index_excluded(c, ia)) cert.kind = StratumKind::EmptyByIndex;
    else {
        cert.kind = StratumKind::FiniteByIndex;
        cert.points = point_types(c, ia);
        cert.point_bound = ia.point_bound;
    }
    cert.steps.push_back(std::move(ia));
    return cert;
}

StratumCertificate stratum_status(const FanoCandidate& c, const Stratum& s, const std::vector<MonomialFact>& facts) {
    Searcher sr(c, facts, s.live(c.space), true);
    return finish(c, s, sr.solve(CoordSet(), 0));
}

StratumCertificate stratum_status(const FanoCandidate& c, const Stratum& s) {
    return stratum_status(c, s, guaranteed_pure_powers(c).facts);
}

StratumCertificate ample_reduction(const FanoCandidate& c, const Stratum& s, std::size_t x,
                                   const std::vector<MonomialFact>& facts) {
    StratumCertificate cert;
    cert.stratum = s;
    cert.ample_coordinate = x;
    cert.residual = s.live(c.space);
    StratumCertificate inner = stratum_status(c, Stratum{s.zeroed.with(x)}, facts);
    cert.kind = is_empty(inner.kind) ? StratumKind::FiniteByAmple : StratumKind::Inconclusive;
    cert.inner.push_back(std::move(inner));
    return cert;
}

LowestPartFact lowest_weight_part(const FanoCandidate& c, const std::string& tag, const AdmissibleWeight& w,
                                  const NormalForm& nf) {
    int degree = -1;
    for (std::size_t i = 0; i < c.eq_degrees.size(); ++i)
        if (c.equation_tag(i) == tag) degree = c.eq_degrees[i];
    if (degree < 0) throw std::invalid_argument("lowest_weight_part: unknown equation " + tag);
    auto status_of = [&](const Monomial& m) -> std::optional<FactStatus> {
        for (const auto& f : nf.facts)
            if (f.equation == tag && f.monomial == m) return f.status;
        return std::nullopt;
    };
    LowestPartFact out;
    out.tag = tag;
    out.degree = degree;
    out.weight_b = w.b;
    out.provenance = nf.label.empty() ? "generic coefficients" : nf.label;
    std::optional<long> best;
    for (const auto& m : monomials_of_degree(c.space, degree, c.space.all())) {
        if (status_of(m) == FactStatus::Absent) continue;
        long v = m.weighted(w.b);
        if (!best || v < *best) {
            best = v;
            out.support.clear();
        }
        if (v == *best) out.support.push_back(m);
    }
    out.coefficient_certified = out.support.size() == 1 && status_of(out.support.front()) == FactStatus::Guaranteed;
    return out;
}

namespace {

ojson monos(const std::vector<Monomial>& v, const WeightedSpace& sp) {
    ojson a = ojson::array();
    for (const auto& m : v) a.push_back(m.str(sp));
    return a;
}

ojson index_classes(const std::vector<IndexClass>& v, const WeightedSpace& sp) {
    ojson a = ojson::array();
    for (const auto& ic : v) {
        ojson blocks = ojson::array();
        for (auto b : ic.blocks) blocks.push_back(sp.describe(b));
        a.push_back(ojson{{"index", ic.index}, {"blocks", blocks}, {"basket_count", ic.basket_count}});
    }
    return a;
}

}  // namespace

ojson to_json(const MonomialFact& f, const WeightedSpace& space) {
    return ojson{{"monomial", f.monomial.str(space)},
                 {"equation", f.equation},
                 {"equation_degree", f.equation_degree},
                 {"group", f.group},
                 {"status", to_string(f.status)},
                 {"reason", f.reason}};
}

ojson to_json(const StratumCertificate& cert, const WeightedSpace& sp) {
    ojson j;
    j["zeroed"] = sp.describe(cert.stratum.zeroed);
    j["live"] = sp.describe(cert.stratum.live(sp));
    j["kind"] = to_string(cert.kind);
    ojson steps = ojson::array();
    for (const auto& st : cert.steps) {
        if (auto* ch = std::get_if<ChainStep>(&st)) {
            ojson killed = ojson::array();
            for (const auto& [m, v] : ch->killed) killed.push_back(ojson{{"monomial", m.str(sp)}, {"killed_by", sp.name(v)}});
            steps.push_back(ojson{{"step", "chain"},
                                  {"eliminate", sp.name(ch->var)},
                                  {"equation", ch->equation},
                                  {"degree", ch->degree},
                                  {"pure_power", ch->pure_power.str(sp)},
                                  {"restricted_support", monos(ch->support, sp)},
                                  {"killed", killed}});
        } else if (auto* bl = std::get_if<BlockStep>(&st)) {
            steps.push_back(ojson{{"step", "block"},
                                  {"eliminate", sp.describe(bl->block)},
                                  {"index_rule", "exact index match"},
                                  {"indices", index_classes(bl->indices, sp)},
                                  {"closed_degrees", bl->closed_degrees}});
        } else if (auto* ia = std::get_if<IndexAnalysis>(&st)) {
            ojson s{{"step", "index"},
                    {"live", sp.describe(ia->live)},
                    {"index_rule", ia->rule == IndexRule::Equal ? "exact index match" : "index divides"},
                    {"indices", index_classes(ia->indices, sp)}};
            if (ia->gcd_one_block) s["gcd_one_block"] = sp.describe(*ia->gcd_one_block);
            s["point_bound"] = ia->point_bound;
            steps.push_back(s);
        }
    }
    j["steps"] = steps;
    j["residual"] = sp.describe(cert.residual);
    if (cert.kind == StratumKind::FiniteByIndex) {
        j["points"] = cert.points;
        j["point_bound"] = cert.point_bound;
    }
    if (cert.ample_coordinate) {
        j["ample_divisor"] = "D_" + sp.name(*cert.ample_coordinate);
        ojson inner = ojson::array();
        for (const auto& in : cert.inner) inner.push_back(to_json(in, sp));
        j["reduced_to"] = inner;
    }
    return j;
}

ojson to_json(const LowestPartFact& f, const WeightedSpace& sp) {
    return ojson{{"equation", f.tag},
                 {"degree", f.degree},
                 {"weight", f.weight_b},
                 {"lowest_support", monos(f.support, sp)},
                 {"coefficient_certified", f.coefficient_certified},
                 {"provenance", f.provenance}};
}

}  // namespace fano
