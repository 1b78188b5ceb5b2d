// Acceptance suite: one PASS/FAIL line per criterion, detail lines for failures.
// Exit status 0 iff every criterion passes.
#include "fano/explicit_eq.hpp"
#include "fano/exclusion.hpp"
#include "fano/report.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <sys/wait.h>

#ifndef FANO_PYTHON
#error "FANO_PYTHON must name the Python interpreter"
#endif
#ifndef FANO_CLI
#error "FANO_CLI must name the fano-rigidity binary"
#endif
#ifndef FANO_ORACLE_DIR
#error "FANO_ORACLE_DIR must name tests/oracles"
#endif

using namespace fano;

namespace {

class Criterion {
public:
    explicit Criterion(std::string title) : title_(std::move(title)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    template <class A, class B>
    void equal(const A& got, const B& want, const std::string& what) {
        if (!(got == want)) {
            std::ostringstream os;
            os << what << ": got " << got << ", want " << want;
            failures_.push_back(os.str());
        }
    }

    bool report() const {
        std::cout << (failures_.empty() ? "PASS " : "FAIL ") << title_ << "\n";
        for (const auto& f : failures_) std::cout << "     " << f << "\n";
        return failures_.empty();
    }

private:
    std::string title_;
    std::vector<std::string> failures_;
};

std::ostream& operator<<(std::ostream& os, OverallVerdict v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, const std::vector<std::string>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os << "]";
}

const ExclusionVerdict* find(const Report& r, const std::string& label) {
    for (const auto& v : r.verdicts)
        if (v.center.label() == label) return &v;
    return nullptr;
}

Rational value_or_nan(const Report& r, const std::string& label, const std::string& name, Criterion& c) {
    const auto* v = find(r, label);
    if (!v) {
        c.require(false, r.candidate_id + ": no center " + label);
        return Rational(0);
    }
    try {
        return v->value(name);
    } catch (const std::out_of_range&) {
        c.require(false, r.candidate_id + " " + label + ": no value " + name);
        return Rational(0);
    }
}

VerifyOptions opts(std::optional<long> m = std::nullopt, std::optional<ClusterFormat> f = std::nullopt) {
    VerifyOptions o;
    o.isolating_product = m;
    o.format = f;
    return o;
}

int run_command(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion_golden_numbers() {
    Criterion c("1. golden numbers (exact rational equality)");
    const auto r25 = verify(registry("#25"));
    const auto r166 = verify(registry("#166"), opts(20));
    const auto r282 = verify(registry("#282"));
    const auto r282g = verify(registry("#282"), opts(std::nullopt, ClusterFormat::G2));
    const auto r308 = verify(registry("#308"));

    struct Ivr {
        const Report* r;
        const char* center;
        Rational want;
    };
    for (const auto& k : {Ivr{&r25, "1/5(1,1,4)", Rational(2, 35)}, Ivr{&r25, "1/7(1,2,5)", Rational(1, 7)},
                          Ivr{&r166, "1/2(1,1,1)", Rational(1, 6)}, Ivr{&r166, "1/3(1,1,2)", Rational(1, 3)},
                          Ivr{&r282, "1/7(1,1,6)", Rational(1, 7)}, Ivr{&r308, "1/6(1,1,5)", Rational(1, 6)}}) {
        const std::string tag = k.r->candidate_id + " " + k.center;
        c.equal(value_or_nan(*k.r, k.center, "ivr", c), k.want, tag + " ivr");
        c.equal(value_or_nan(*k.r, k.center, "wp*(-K)^3", c), k.want, tag + " wp*(-K)^3");
    }

    c.equal(e_cubed(QuotientPoint{5, 2}), Rational(25, 6), "E^3 of 1/5(1,2,3)");
    c.equal(e_cubed(QuotientPoint{6, 1}), Rational(36, 5), "E^3 of 1/6(1,1,5)");
    c.equal(e_cubed(QuotientPoint{2, 1}), Rational(4), "E^3 of 1/2(1,1,1)");

    c.equal(value_or_nan(r282, "1/3(1,1,2)", "lambda", c), Rational(1, 21), "#282 1/3 lambda");
    c.equal(value_or_nan(r282, "1/3(1,1,2)", "nef_pairing", c), Rational(0), "#282 1/3 nef pairing");
    c.equal(value_or_nan(r308, "1/3(1,1,2)", "nef_pairing", c), Rational(-1, 15), "#308 1/3 nef pairing");
    const Rational half25 = value_or_nan(r25, "1/2(1,1,1)", "nef_pairing", c);
    c.equal(half25, Rational(11, 70) - Rational(1, 2), "#25 1/2 pairing 11/70 - 1/2");
    c.require(half25 < 0, "#25 1/2 pairing negative");

    const auto* split = find(r308, "1/5(1,2,3)");
    c.require(split && split->branches.size() == 2, "#308 1/5 split has two branches");
    if (split && split->branches.size() == 2) {
        const auto& a = split->branches[0].verdict;
        const auto& b = split->branches[1].verdict;
        c.equal(a.value("nef_pairing"), Rational(0), "#308 1/5 branch A nef pairing");
        c.equal(a.value("lambda"), Rational(1, 5), "#308 1/5 branch A lambda");
        c.equal(b.value("ord_S"), Rational(6, 5), "#308 1/5 branch B ord_E(D_p)");
        c.equal(b.value("pairing"), Rational(1, 5) - Rational(6, 5) / 6, "#308 1/5 branch B pairing");
        c.equal(b.value("pairing"), Rational(0), "#308 1/5 branch B pairing is 0");
    }

    const auto cc = verify_cluster(ClusterFormat::G2);
    c.equal(cc.triple_product.str(), std::string("1/7 - 1/30*e"), "#282 triple product");
    c.equal(cc.e_min, Rational(6), "#282 e lower bound");
    c.require(negative_for_all_from(cc.triple_product, cc.e_min), "1/7 - e/30 < 0 for all integers e >= 6");
    c.require(cc.triple_negative, "certificate records the negativity");
    const auto* g = find(r282g, "1/6(1,1,5)");
    c.require(g && g->excluded(), "#282 g2 1/6 point excluded via the triple product");
    return c.report();
}

bool criterion_verdicts() {
    Criterion c("2. verdicts (each run under 10 s)");
    auto timed = [&](const FanoCandidate& cand, const VerifyOptions& o) {
        const auto t0 = std::chrono::steady_clock::now();
        Report r = verify(cand, o);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.require(s < 10, cand.id + " took " + std::to_string(s) + " s");
        return r;
    };
    c.equal(timed(registry("#25"), {}).overall, OverallVerdict::Superrigid, "#25");
    const auto r166 = timed(registry("#166"), {});
    c.equal(r166.overall, OverallVerdict::Unresolved, "#166 without override");
    c.equal(r166.unresolved, std::vector<std::string>{"smooth-points"}, "#166 unresolved centers");
    c.equal(value_or_nan(r166, "smooth-points", "product*(-K)^3", c), Rational(25, 6), "#166 reported product");
    c.equal(timed(registry("#166"), opts(20)).overall, OverallVerdict::Superrigid, "#166 with override 20");
    c.equal(timed(registry("#308"), {}).overall, OverallVerdict::Superrigid, "#308");
    const auto r282 = timed(registry("#282"), {});
    c.equal(r282.overall, OverallVerdict::Unresolved, "#282 numeric only");
    c.equal(r282.unresolved, std::vector<std::string>{"1/6(1,1,5)"}, "#282 numeric-only unresolved centers");
    c.equal(timed(registry("#282"), opts(std::nullopt, ClusterFormat::G2)).overall, OverallVerdict::Superrigid,
            "#282 g2");
    const auto c2 = timed(registry("#282"), opts(std::nullopt, ClusterFormat::C2));
    c.equal(c2.overall, OverallVerdict::Superrigid, "#282 c2");
    bool q = false, general = false;
    if (c2.ledger)
        for (const auto& e : c2.ledger->entries()) {
            q = q || e.statement.find("S6 = q") != std::string::npos;
            general = general || e.statement.find("general") != std::string::npos;
        }
    c.require(q, "#282 c2 ledger lists q in S6");
    c.require(general, "#282 c2 ledger lists the genericity assumption");
    return c.report();
}

bool criterion_stratum_soundness() {
    Criterion c("3. stratum-certificate soundness (100 instances over Q and GF(10007) per stratum)");
    const std::string cmd = std::string(FANO_PYTHON) + " " + FANO_ORACLE_DIR + "/stratum_oracle.py " + FANO_CLI +
                            " 100 > stratum_oracle.log 2>&1";
    const int code = run_command(cmd);
    c.equal(code, 0, "stratum oracle exit status (see stratum_oracle.log)");
    return c.report();
}

bool criterion_explicit_equations() {
    Criterion c("4. explicit-equation checks");
    const int oracle = run_command(std::string(FANO_PYTHON) + " " + FANO_ORACLE_DIR +
                                   "/explicit_eq_oracle.py > explicit_eq_oracle.log 2>&1");
    c.equal(oracle, 0, "independent sympy oracle asserts (see explicit_eq_oracle.log)");

    // Frozen oracle output. The C2 discriminant is b^2 - 4ac = 1 + 4*lambda*mu^2*nu^3*t^7;
    // the printed minus sign does not survive the computation.
    const std::map<ClusterFormat, std::pair<std::string, std::string>> want{
        {ClusterFormat::G2, {"lambda*r^2*v + mu^3*r*v^6 - 1", "mu^6*v^12 + 4*lambda*v"}},
        {ClusterFormat::C2, {"r - lambda*nu*r^2*t + mu^2*nu^2*t^6", "1 + 4*lambda*mu^2*nu^3*t^7"}}};
    std::mt19937_64 rng(20);
    for (auto f : {ClusterFormat::G2, ClusterFormat::C2}) {
        const std::string name = to_string(f);
        const auto cc = verify_cluster(f);
        const auto& sp = cc.curve.curve.space();
        const std::set<std::string> params{"lambda", "mu", "nu"};
        c.require(cc.curve.ok, name + " plane curve reduction");
        c.require(cc.curve.curve == parse_poly(sp, want.at(f).first, {}, params),
                  name + " plane curve " + cc.curve.curve.str());
        c.require(cc.irreducibility && cc.irreducibility->irreducible, name + " irreducibility certificate");
        if (cc.irreducibility)
            c.require(cc.irreducibility->disc == parse_poly(sp, want.at(f).second, {}, params),
                      name + " discriminant " + cc.irreducibility->disc.str());
        c.equal(cc.exceptional.count.count, 2, name + " points on E");
        c.require(cc.exceptional.count.finite, name + " finiteness on E");
        const CoordSet live = cc.exceptional.e_space.all() - cc.exceptional.e_space.set({"p", "q"});
        for (int i = 0; i < 20; ++i) {
            std::map<std::string, Rational> vals;
            for (const char* p : {"lambda", "mu", "nu"}) {
                const long n = 1 + static_cast<long>(rng() % 40), d = 1 + static_cast<long>(rng() % 40);
                vals[p] = Rational(rng() % 2 ? n : -n, d);
            }
            std::vector<ParamPolynomial> eqs;
            for (const auto& g : cc.exceptional.restricted) eqs.push_back(g.evaluate_params(vals));
            const auto pc = count_points(eqs, live, AssumptionLedger{});
            c.require(pc.finite && pc.count == 2,
                      name + " instantiation " + std::to_string(i) + " gives " + std::to_string(pc.count) + " points");
        }
    }
    return c.report();
}

bool criterion_properties() {
    Criterion c("5. property suites (y_triple, residue/ivr, enumeration, determinism)");
    std::mt19937_64 rng(1);
    auto rat = [&] {
        return Rational(static_cast<long>(rng() % 121) - 60, 1 + static_cast<long>(rng() % 60));
    };
    const QuotientPoint pts[] = {{2, 1}, {3, 1}, {5, 2}, {6, 1}, {7, 2}};
    int bad_y = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto& p = pts[i % 5];
        const Rational k3(1, 1 + static_cast<long>(rng() % 100));
        const BlowupClass a{rat(), rat()}, b{rat(), rat()}, d{rat(), rat()}, e{rat(), rat()};
        const Rational s = rat(), t = rat();
        const Rational abd = y_triple(a, b, d, p, k3);
        const BlowupClass comb{s * a.n + t * e.n, s * a.lam + t * e.lam};
        if (abd != y_triple(b, a, d, p, k3) || abd != y_triple(a, d, b, p, k3) || abd != y_triple(d, b, a, p, k3) ||
            y_triple(comb, b, d, p, k3) != s * abd + t * y_triple(e, b, d, p, k3))
            ++bad_y;
    }
    c.equal(bad_y, 0, "y_triple symmetry/multilinearity violations in 1000 cases");

    int bad_res = 0;
    for (long r = 1; r <= 30; ++r)
        for (long a = -200; a <= 200; ++a) {
            const long x = residue(a, r);
            if ((x - a) % r != 0 || x <= 0 || x > r || residue(a + r, r) != x) ++bad_res;
        }
    c.equal(bad_res, 0, "residue identity violations");
    int bad_ivr = 0;
    for (const char* id : {"#25", "#166", "#282", "#308"}) {
        const auto cand = registry(id);
        for (const auto& b : cand.basket) {
            const auto q = QuotientPoint::from(b);
            if (e_cubed(q) * Rational(weight_product(q)) != Rational(b.r * b.r)) ++bad_ivr;
            const auto k = coordinate_placement(cand, b.r);
            if (!k) continue;
            const QuotientPoint p{b.r, b.a, *k};
            const CoordSet others = cand.space.all().without(*k);
            for (int i = 0; i < 100; ++i) {
                const CoordSet A = CoordSet(static_cast<std::uint32_t>(rng())) & others;
                const CoordSet B = CoordSet(static_cast<std::uint32_t>(rng())) & others;
                if (A.empty() || B.empty()) continue;
                if (ivr(p, cand.space, A | B) != min(ivr(p, cand.space, A), ivr(p, cand.space, B))) ++bad_ivr;
            }
        }
    }
    c.equal(bad_ivr, 0, "ivr union/min and E^3*wp = r^2 violations");

    int bad_enum = 0;
    for (const char* id : {"#25", "#166", "#282", "#308"}) {
        const auto sp = registry(id).space;
        std::map<int, std::set<Monomial>> brute;
        std::vector<int> e(sp.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
            if (i == sp.size()) {
                if (used > 0) brute[used].insert(Monomial(e));
                return;
            }
            for (int k = 0; used + k * sp.weight(i) <= 40; ++k) {
                e[i] = k;
                rec(i + 1, used + k * sp.weight(i));
            }
            e[i] = 0;
        };
        rec(0, 0);
        for (int d = 1; d <= 40; ++d) {
            const auto got = monomials_of_degree(sp, d, sp.all());
            if (std::set<Monomial>(got.begin(), got.end()) != brute[d] || got.size() != brute[d].size()) ++bad_enum;
        }
    }
    c.equal(bad_enum, 0, "degrees where enumeration differs from brute force");

    for (const char* id : {"#25", "#166", "#282", "#308"}) {
        const auto cand = registry(id);
        c.require(render_text(report_json(verify(cand), cand)) == render_text(report_json(verify(cand), cand)) &&
                      report_json(verify(cand), cand).dump(2) == report_json(verify(cand), cand).dump(2),
                  std::string(id) + " report not byte-identical across runs");
    }
    const int cli = run_command(std::string(FANO_CLI) + " verify '#308' --json > determinism_a.json && " + FANO_CLI +
                                " verify '#308' --json > determinism_b.json && cmp -s determinism_a.json determinism_b.json");
    c.equal(cli, 0, "two CLI runs byte-identical");
    return c.report();
}

}  // namespace

int main() {
    bool ok = true;
    ok = criterion_golden_numbers() && ok;
    ok = criterion_verdicts() && ok;
    ok = criterion_stratum_soundness() && ok;
    ok = criterion_explicit_equations() && ok;
    ok = criterion_properties() && ok;
    std::cout << (ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
    return ok ? 0 : 1;
}
