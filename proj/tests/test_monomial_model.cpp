#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_util.hpp"

#include "fano/candidate.hpp"
#include "fano/monomial_model.hpp"

#include <algorithm>
#include <numeric>

using namespace fano;

namespace {

std::vector<std::string> power_facts(const FanoCandidate& c) {
    std::vector<std::string> out;
    for (const auto& f : guaranteed_pure_powers(c).facts)
        if (f.status == FactStatus::Guaranteed)
            out.push_back(f.monomial.str(c.space) + " in " + f.equation + "(" + std::to_string(f.equation_degree) + ")");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> strs(const std::vector<Monomial>& v, const WeightedSpace& sp) {
    std::vector<std::string> out;
    for (const auto& m : v) out.push_back(m.str(sp));
    std::sort(out.begin(), out.end());
    return out;
}

Stratum zero(const FanoCandidate& c, std::initializer_list<std::string_view> names) {
    return Stratum{c.space.set(names)};
}

Stratum live_only(const FanoCandidate& c, std::initializer_list<std::string_view> names) {
    return Stratum{c.space.all() - c.space.set(names)};
}

std::vector<std::string> eliminated(const StratumCertificate& cert, const WeightedSpace& sp) {
    std::vector<std::string> out;
    for (const auto& st : cert.steps)
        if (auto* ch = std::get_if<ChainStep>(&st)) out.push_back(sp.name(ch->var));
    return out;
}

/// Same candidate with the coordinate order reversed.
FanoCandidate reversed(const FanoCandidate& c) {
    auto coords = c.space.coords();
    std::reverse(coords.begin(), coords.end());
    FanoCandidate r = c;
    r.space = WeightedSpace(coords);
    return r;
}

CoordSet translate(CoordSet s, const WeightedSpace& from, const WeightedSpace& to) {
    CoordSet out;
    for (auto i : s.positions()) out = out.with(to.index(from.name(i)));
    return out;
}

}  // namespace

TEST_CASE("guaranteed pure powers") {
    // Every coordinate point absent from X yields a pure power; the listed ones must be among them.
    CHECK(power_facts(registry("#25")) == std::vector<std::string>{"r^3 in F3(18)", "t^2 in F1(16)", "u^2 in F3(18)",
                                                                   "v^2 in F6(20)", "w^2 in F9(22)"});
    CHECK(power_facts(registry("#282")) ==
          std::vector<std::string>{"t^2 in F1(16)", "u^2 in F3(18)", "v^2 in F6(20)", "w^2 in F9(22)"});
    CHECK(power_facts(registry("#308")) ==
          std::vector<std::string>{"t^2 in F1(14)", "u^2 in F3(16)", "v^2 in F6(18)", "w^2 in F9(20)"});
    for (const char* id : {"#25", "#166", "#282", "#308"}) {
        const auto rep = guaranteed_pure_powers(registry(id));
        CHECK(rep.inconsistencies.empty());
        for (const auto& f : rep.facts) {
            CHECK(f.monomial.degree(registry(id).space) == f.equation_degree);
            CHECK_FALSE(f.reason.empty());
        }
    }
}

TEST_CASE("pure powers with no divisible degree are reported") {
    auto c = registry("#308");
    c.eq_degrees = {14, 15, 16, 16, 17, 18, 18, 19, 21};
    CHECK_FALSE(guaranteed_pure_powers(c).inconsistencies.empty());
}

TEST_CASE("restrict_support") {
    const auto c25 = registry("#25");
    CHECK(strs(restrict_support(c25, 22, live_only(c25, {"r", "t", "w"})), c25.space) ==
          std::vector<std::string>{"r*t^2", "w^2"});
    const auto c166 = registry("#166");
    CHECK(strs(restrict_support(c166, 8, live_only(c166, {"t", "u", "v", "w"})), c166.space) ==
          std::vector<std::string>{"t*u", "t^2", "u^2"});
    CHECK(restrict_support(c166, 3, live_only(c166, {"t", "u", "v", "w"})).empty());
}

TEST_CASE("chain certificates") {
    const auto c25 = registry("#25");
    const auto facts25 = guaranteed_pure_powers(c25).facts;
    const auto cert = chain_certificate(c25, zero(c25, {"p", "q", "s", "u", "v"}), facts25);
    CHECK(cert.kind == StratumKind::EmptyByChain);
    CHECK(eliminated(cert, c25.space) == std::vector<std::string>{"t", "r", "w"});

    const auto c308 = registry("#308");
    const auto facts308 = guaranteed_pure_powers(c308).facts;
    const auto cert308 = chain_certificate(c308, zero(c308, {"p", "q", "r", "s"}), facts308);
    CHECK(cert308.kind == StratumKind::EmptyByChain);
    auto order = eliminated(cert308, c308.space);
    std::sort(order.begin(), order.end());
    CHECK(order == std::vector<std::string>{"t", "u", "v", "w"});
    // Every killed monomial is divisible by an eliminated variable or the pure-power variable.
    for (const auto& st : cert308.steps)
        if (auto* ch = std::get_if<ChainStep>(&st))
            for (const auto& [m, by] : ch->killed) CHECK(m.exp(by) > 0);

    const auto c166 = registry("#166");
    CHECK(chain_certificate(c166, zero(c166, {"p", "q"}), guaranteed_pure_powers(c166).facts).kind ==
          StratumKind::Inconclusive);
}

TEST_CASE("index certificates") {
    const auto c166 = registry("#166");
    CHECK(index_certificate(c166, live_only(c166, {"v", "w"})).kind == StratumKind::EmptyByIndex);

    const auto c282 = registry("#282");
    const auto fin = index_certificate(c282, live_only(c282, {"q", "r", "u"}));
    CHECK(fin.kind == StratumKind::FiniteByIndex);
    CHECK(fin.points == std::vector<std::string>{"2 x 1/3(1,1,2)", "1 x 1/6(1,1,5)"});
    CHECK(fin.point_bound == 3);

    CHECK(index_certificate(c282, live_only(c282, {"p", "q"})).kind == StratumKind::Inconclusive);
}

TEST_CASE("stratum status") {
    const auto c282 = registry("#282");
    const auto s282 = stratum_status(c282, zero(c282, {"p", "s", "t", "w"}));
    CHECK(s282.kind == StratumKind::FiniteByIndex);
    CHECK(eliminated(s282, c282.space) == std::vector<std::string>{"v"});
    CHECK(s282.residual == c282.space.set({"q", "r", "u"}));
    // The printed 1/2(1,1,2) label is not a terminal type; the computed set has index 3 and 6 points.
    CHECK(s282.points == std::vector<std::string>{"2 x 1/3(1,1,2)", "1 x 1/6(1,1,5)"});

    const auto c308 = registry("#308");
    const auto s308 = stratum_status(c308, zero(c308, {"p", "q", "u"}));
    CHECK(is_curve_free(s308.kind));
    CHECK_FALSE(is_empty(s308.kind));
    CHECK(s308.residual == c308.space.set({"r", "s", "v"}));

    const auto c25 = registry("#25");
    CHECK(stratum_status(c25, zero(c25, {"p", "q", "r", "s"})).kind == StratumKind::EmptyByChain);
}

TEST_CASE("ample reduction") {
    const auto c = registry("#308");
    const auto facts = guaranteed_pure_powers(c).facts;
    const auto cert = ample_reduction(c, zero(c, {"p", "r", "s"}), c.space.index("q"), facts);
    CHECK(cert.kind == StratumKind::FiniteByAmple);
    CHECK(cert.ample_coordinate == c.space.index("q"));
    REQUIRE(cert.inner.size() == 1);
    CHECK(is_empty(cert.inner.front().kind));
    const auto j = to_json(cert, c.space);
    CHECK(j["ample_divisor"] == "D_q");
}

TEST_CASE("chain certificate does not depend on the coordinate order") {
    for (const char* id : {"#25", "#282", "#308"}) {
        const auto c = registry(id);
        const auto r = reversed(c);
        const auto fc = guaranteed_pure_powers(c).facts;
        const auto fr = guaranteed_pure_powers(r).facts;
        for (std::uint32_t bits = 0; bits < (1u << c.space.size()); ++bits) {
            const CoordSet z(bits);
            const auto a = chain_certificate(c, Stratum{z}, fc);
            const auto b = chain_certificate(r, Stratum{translate(z, c.space, r.space)}, fr);
            CAPTURE(id);
            CAPTURE(c.space.describe(z));
            CHECK(a.kind == b.kind);
        }
    }
}

TEST_CASE("index certificate never claims emptiness when a basket index divides a block gcd") {
    for (const char* id : {"#25", "#166", "#282", "#308"}) {
        const auto c = registry(id);
        for (std::uint32_t bits = 0; bits < (1u << c.space.size()); ++bits) {
            const Stratum s{CoordSet(bits)};
            if (index_certificate(c, s).kind != StratumKind::EmptyByIndex) continue;
            const CoordSet live = s.live(c.space);
            for (std::uint32_t sub = 1; sub <= live.bits(); ++sub) {
                const CoordSet block(sub);
                if (!block.subset_of(live)) continue;
                const int g = c.space.gcd_of(block);
                for (const auto& b : c.basket) {
                    CAPTURE(id);
                    CAPTURE(c.space.describe(s.zeroed));
                    CHECK(g % b.r != 0);
                }
            }
        }
    }
}

TEST_CASE("lowest weight part under a normal form") {
    const auto c = registry("#308");
    const auto& sp = c.space;
    const auto w = initial_weight(QuotientPoint{5, 2, sp.index("q")}, sp);
    auto make = [&](const char* tag, const char* mono, FactStatus st) {
        MonomialFact f;
        f.monomial = Monomial::parse(sp, mono);
        f.equation_degree = f.monomial.degree(sp);
        f.equation = tag;
        f.status = st;
        f.reason = "test normal form";
        return f;
    };
    NormalForm nf{"B",
                  {make("F3", "q^3*p", FactStatus::Guaranteed), make("F3", "q^2*r", FactStatus::Absent),
                   make("F3", "q^2*s", FactStatus::Absent)}};
    const auto lp = lowest_weight_part(c, "F3", w, nf);
    CHECK(lp.coefficient_certified);
    CHECK(strs(lp.support, sp) == std::vector<std::string>{"p*q^3"});

    NormalForm open{"open", {make("F3", "q^3*p", FactStatus::Guaranteed)}};
    const auto lp2 = lowest_weight_part(c, "F3", w, open);
    CHECK(lp2.support.size() == 3);
}
