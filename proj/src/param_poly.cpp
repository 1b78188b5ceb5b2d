#include "fano/param_poly.hpp"

#include <cctype>
#include <stdexcept>

namespace fano {

ParamScalar::ParamScalar(const Rational& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

ParamScalar ParamScalar::param(const std::string& name, int e) {
    ParamScalar s;
    if (e == 0) s.terms_[{}] = Rational(1);
    else s.terms_[{{name, e}}] = Rational(1);
    return s;
}

bool ParamScalar::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational ParamScalar::constant() const {
    if (!is_constant()) throw std::logic_error("ParamScalar: not a constant: " + str());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::optional<std::pair<Rational, ParamScalar::PMono>> ParamScalar::as_term() const {
    if (terms_.size() != 1) return std::nullopt;
    return std::make_pair(terms_.begin()->second, terms_.begin()->first);
}

std::set<std::string> ParamScalar::params() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [n, e] : m) out.insert(n);
    return out;
}

void ParamScalar::add(const PMono& m, const Rational& c) {
    if (c.is_zero()) return;
    auto& slot = terms_[m];
    slot += c;
    if (slot.is_zero()) terms_.erase(m);
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

ParamScalar& ParamScalar::operator*=(const ParamScalar& o) {
    ParamScalar out;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            PMono m = m1;
            for (const auto& [n, e] : m2) {
                m[n] += e;
                if (m[n] == 0) m.erase(n);
            }
            out.add(m, c1 * c2);
        }
    *this = std::move(out);
    return *this;
}

ParamScalar ParamScalar::monomial_inverse() const {
    auto t = as_term();
    if (!t) throw std::domain_error("ParamScalar: inverse of a non-monomial scalar " + str());
    ParamScalar out;
    PMono m;
    for (const auto& [n, e] : t->second) m[n] = -e;
    out.terms_[m] = t->first.inverse();
    return out;
}

ParamScalar ParamScalar::substitute(const std::map<std::string, ParamScalar>& repl) const {
    ParamScalar out;
    for (const auto& [m, c] : terms_) {
        ParamScalar term(c);
        for (const auto& [n, e] : m) {
            auto it = repl.find(n);
            ParamScalar base = it == repl.end() ? param(n) : it->second;
            if (e < 0) base = base.monomial_inverse();
            for (int k = 0; k < std::abs(e); ++k) term *= base;
        }
        out += term;
    }
    return out;
}

Rational ParamScalar::evaluate(const std::map<std::string, Rational>& values) const {
    Rational v;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [n, e] : m) {
            auto it = values.find(n);
            if (it == values.end()) throw std::invalid_argument("ParamScalar: no value for parameter " + n);
            t *= it->second.pow(e);
        }
        v += t;
    }
    return v;
}

namespace {

std::string pmono_str(const ParamScalar::PMono& m) {
    std::string out;
    for (const auto& [n, e] : m) {
        if (!out.empty()) out += "*";
        out += n;
        if (e != 1) out += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    }
    return out;
}

}  // namespace

std::string ParamScalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c.abs();
        std::string body = m.empty() ? mag.str() : (mag == Rational(1) ? "" : mag.str() + "*") + pmono_str(m);
        if (out.empty()) out = (c.sign() < 0 ? "-" : "") + body;
        else out += (c.sign() < 0 ? " - " : " + ") + body;
    }
    return out;
}

void AssumptionLedger::assert_nonzero(const ParamScalar& value, const std::string& provenance) {
    if (value.is_zero()) throw std::invalid_argument("AssumptionLedger: cannot assert 0 is nonzero");
    entries_.push_back({value.str() + " != 0", provenance, value});
}

void AssumptionLedger::record(const std::string& statement, const std::string& provenance) {
    entries_.push_back({statement, provenance, std::nullopt});
}

bool AssumptionLedger::param_nonzero(const std::string& name) const {
    for (const auto& e : entries_) {
        if (!e.nonzero) continue;
        auto t = e.nonzero->as_term();
        if (t && t->second.size() == 1 && t->second.begin()->first == name) return true;
    }
    return false;
}

bool AssumptionLedger::certified_nonzero(const ParamScalar& x) const {
    if (x.is_zero()) return false;
    if (x.is_constant()) return true;
    if (auto t = x.as_term()) {
        bool all = true;
        for (const auto& [n, e] : t->second) all = all && param_nonzero(n);
        if (all) return true;
    }
    const auto& [m, cx] = *x.terms().begin();
    for (const auto& e : entries_) {
        if (!e.nonzero) continue;
        auto it = e.nonzero->terms().find(m);
        if (it == e.nonzero->terms().end()) continue;
        if (x * ParamScalar(it->second) == *e.nonzero * ParamScalar(cx)) return true;
    }
    return false;
}

ParamScalar AssumptionLedger::unit_inverse(const ParamScalar& x) const {
    if (!certified_nonzero(x) || !x.as_term())
        throw std::domain_error("AssumptionLedger: " + x.str() + " is not a certified unit");
    return x.monomial_inverse();
}

ParamPolynomial ParamPolynomial::constant(const WeightedSpace& space, const ParamScalar& c) {
    ParamPolynomial p(space);
    p.add_term(Monomial::one(space.size()), c);
    return p;
}

ParamPolynomial ParamPolynomial::var(const WeightedSpace& space, std::size_t i) {
    ParamPolynomial p(space);
    p.add_term(Monomial::var(space.size(), i), ParamScalar(1));
    return p;
}

ParamScalar ParamPolynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ParamScalar() : it->second;
}

void ParamPolynomial::add_term(const Monomial& m, const ParamScalar& c) {
    if (c.is_zero()) return;
    auto& slot = terms_[m];
    slot += c;
    if (slot.is_zero()) terms_.erase(m);
}

std::optional<int> ParamPolynomial::degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int dm = m.degree(space_);
        if (d && *d != dm) return std::nullopt;
        d = dm;
    }
    return d;
}

int ParamPolynomial::degree_in(std::size_t coord) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exp(coord));
    return d;
}

int ParamPolynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

ParamPolynomial ParamPolynomial::coefficient_in(std::size_t coord, int k) const {
    ParamPolynomial out(space_);
    for (const auto& [m, c] : terms_) {
        if (m.exp(coord) != k) continue;
        Monomial mm = m;
        mm.set_exp(coord, 0);
        out.add_term(mm, c);
    }
    return out;
}

CoordSet ParamPolynomial::variables() const {
    CoordSet s;
    for (const auto& [m, c] : terms_) s = s | m.support();
    return s;
}

ParamPolynomial ParamPolynomial::restrict(CoordSet zeroed) const {
    ParamPolynomial out(space_);
    for (const auto& [m, c] : terms_)
        if (!m.divisible_by_any(zeroed)) out.add_term(m, c);
    return out;
}

ParamPolynomial ParamPolynomial::dehomogenize(std::size_t coord) const {
    ParamPolynomial out(space_);
    for (const auto& [m, c] : terms_) {
        Monomial mm = m;
        mm.set_exp(coord, 0);
        out.add_term(mm, c);
    }
    return out;
}

ParamPolynomial ParamPolynomial::pow(int e) const {
    if (e < 0) throw std::domain_error("ParamPolynomial: negative power");
    ParamPolynomial out = constant(space_, ParamScalar(1));
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
}

ParamPolynomial ParamPolynomial::substitute(std::size_t coord, const ParamPolynomial& value) const {
    ParamPolynomial out(space_);
    std::map<int, ParamPolynomial> powers;
    for (const auto& [m, c] : terms_) {
        int k = m.exp(coord);
        Monomial rest = m;
        rest.set_exp(coord, 0);
        ParamPolynomial term(space_);
        term.add_term(rest, c);
        if (k > 0) {
            auto it = powers.find(k);
            if (it == powers.end()) it = powers.emplace(k, value.pow(k)).first;
            term = term * it->second;
        }
        out += term;
    }
    return out;
}

ParamPolynomial ParamPolynomial::map_params(const std::map<std::string, ParamScalar>& repl) const {
    ParamPolynomial out(space_);
    for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(repl));
    return out;
}

ParamPolynomial ParamPolynomial::evaluate_params(const std::map<std::string, Rational>& values) const {
    ParamPolynomial out(space_);
    for (const auto& [m, c] : terms_) out.add_term(m, ParamScalar(c.evaluate(values)));
    return out;
}

Rational ParamPolynomial::evaluate(const std::vector<Rational>& point, const std::map<std::string, Rational>& values) const {
    Rational v;
    for (const auto& [m, c] : terms_) {
        Rational t = c.evaluate(values);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m.exp(i)) t *= point.at(i).pow(m.exp(i));
        v += t;
    }
    return v;
}

long ParamPolynomial::min_weight(const std::vector<int>& b) const {
    if (terms_.empty()) throw std::domain_error("ParamPolynomial: weight of zero polynomial");
    long best = terms_.begin()->first.weighted(b);
    for (const auto& [m, c] : terms_) best = std::min(best, m.weighted(b));
    return best;
}

ParamPolynomial ParamPolynomial::initial_part(const std::vector<int>& b) const {
    ParamPolynomial out(space_);
    if (terms_.empty()) return out;
    long w = min_weight(b);
    for (const auto& [m, c] : terms_)
        if (m.weighted(b) == w) out.add_term(m, c);
    return out;
}

std::set<std::string> ParamPolynomial::params() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& n : c.params()) out.insert(n);
    return out;
}

std::string ParamPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono = m.is_one() ? "" : m.str(space_);
        bool negative = false;
        std::string coef;
        if (auto t = c.as_term()) {
            negative = t->first.sign() < 0;
            Rational mag = t->first.abs();
            ParamScalar unit = c * ParamScalar(t->first.inverse());
            std::string ps = unit.is_constant() ? "" : unit.str();
            if (ps.empty()) coef = mono.empty() || mag != Rational(1) ? mag.str() : "";
            else coef = (mag == Rational(1) ? "" : mag.str() + "*") + ps;
        } else {
            coef = "(" + c.str() + ")";
        }
        std::string body = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
        if (out.empty()) out = (negative ? "-" : "") + body;
        else out += (negative ? " - " : " + ") + body;
    }
    return out;
}

ParamPolynomial& ParamPolynomial::operator+=(const ParamPolynomial& o) {
    if (space_.size() == 0) space_ = o.space_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ParamPolynomial& ParamPolynomial::operator-=(const ParamPolynomial& o) {
    if (space_.size() == 0) space_ = o.space_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b) {
    ParamPolynomial out(a.space_.size() ? a.space_ : b.space_);
    for (const auto& [m1, c1] : a.terms_)
        for (const auto& [m2, c2] : b.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

ParamPolynomial operator*(const ParamScalar& s, const ParamPolynomial& p) {
    ParamPolynomial out(p.space_);
    for (const auto& [m, c] : p.terms_) out.add_term(m, s * c);
    return out;
}

std::optional<ParamPolynomial> divide_exact(const ParamPolynomial& h, const ParamPolynomial& g,
                                            const AssumptionLedger& ledger) {
    if (g.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    const Monomial& lm = g.leading_monomial();
    ParamScalar inv = ledger.unit_inverse(g.coeff(lm));
    ParamPolynomial rem = h;
    ParamPolynomial q(h.space());
    while (!rem.is_zero()) {
        const Monomial& rm = rem.leading_monomial();
        if (!lm.divides(rm)) return std::nullopt;
        ParamPolynomial t(h.space());
        t.add_term(rm / lm, rem.coeff(rm) * inv);
        q += t;
        rem -= t * g;
    }
    return q;
}

bool UncertainPolynomial::coefficient_certified(const Monomial& m, const AssumptionLedger& ledger) const {
    return !unknown.count(m) && ledger.certified_nonzero(known.coeff(m));
}

long UncertainPolynomial::min_weight(const std::vector<int>& b) const {
    std::optional<long> best;
    if (!known.is_zero()) best = known.min_weight(b);
    for (const auto& m : unknown) {
        long v = m.weighted(b);
        if (!best || v < *best) best = v;
    }
    if (!best) throw std::domain_error("UncertainPolynomial: weight of zero polynomial");
    return *best;
}

UncertainPolynomial UncertainPolynomial::restrict(CoordSet zeroed) const {
    UncertainPolynomial out(known.restrict(zeroed));
    for (const auto& m : unknown)
        if (!m.divisible_by_any(zeroed)) out.unknown.insert(m);
    return out;
}

UncertainPolynomial& UncertainPolynomial::operator+=(const UncertainPolynomial& o) {
    known += o.known;
    unknown.insert(o.unknown.begin(), o.unknown.end());
    return *this;
}

UncertainPolynomial& UncertainPolynomial::operator-=(const UncertainPolynomial& o) {
    known -= o.known;
    unknown.insert(o.unknown.begin(), o.unknown.end());
    return *this;
}

UncertainPolynomial operator*(const UncertainPolynomial& a, const UncertainPolynomial& b) {
    UncertainPolynomial out(a.known * b.known);
    auto cross = [&](const std::set<Monomial>& u, const ParamPolynomial& k) {
        for (const auto& m : u)
            for (const auto& [mk, c] : k.terms()) out.unknown.insert(m * mk);
    };
    cross(a.unknown, b.known);
    cross(b.unknown, a.known);
    for (const auto& m1 : a.unknown)
        for (const auto& m2 : b.unknown) out.unknown.insert(m1 * m2);
    return out;
}

UncertainPolynomial UncertainPolynomial::pow(int e) const {
    if (e < 0) throw std::domain_error("UncertainPolynomial: negative power");
    UncertainPolynomial out(ParamPolynomial::constant(known.space(), ParamScalar(1)));
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
}

namespace {

using UP = UncertainPolynomial;

class Parser {
public:
    Parser(const WeightedSpace& sp, std::string_view text, const std::map<std::string, UP>& forms,
           const std::set<std::string>& params)
        : sp_(sp), s_(text), forms_(forms), params_(params) {}

    UP parse() {
        UP p = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse_poly: " + what + " at offset " + std::to_string(i_) + " in '" +
                                    std::string(s_) + "'");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    UP expr() {
        UP out{ParamPolynomial(sp_)};
        bool neg = eat('-');
        if (!neg) eat('+');
        UP t = term();
        out = neg ? out - t : out + t;
        for (;;) {
            if (eat('+')) out += term();
            else if (eat('-')) out -= term();
            else break;
        }
        return out;
    }
    UP term() {
        UP out = factor();
        while (eat('*')) out = out * factor();
        return out;
    }
    UP factor() {
        UP base = atom();
        if (eat('^')) {
            skip();
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("expected exponent");
            base = base.pow(std::stoi(std::string(s_.substr(st, i_ - st))));
        }
        return base;
    }
    UP atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char ch = s_[i_];
        if (ch == '(') {
            ++i_;
            UP p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (ch == '-') {
            ++i_;
            return UP(ParamPolynomial(sp_)) - atom();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t st = i_;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
            return UP(ParamPolynomial::constant(sp_, ParamScalar(Rational::parse(s_.substr(st, i_ - st)))));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t st = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name(s_.substr(st, i_ - st));
            if (auto f = forms_.find(name); f != forms_.end()) return f->second;
            if (params_.count(name)) return UP(ParamPolynomial::constant(sp_, ParamScalar::param(name)));
            if (auto k = sp_.find(name)) return UP(ParamPolynomial::var(sp_, *k));
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    const WeightedSpace& sp_;
    std::string_view s_;
    const std::map<std::string, UP>& forms_;
    const std::set<std::string>& params_;
    std::size_t i_ = 0;
};

}  // namespace

UncertainPolynomial parse_uncertain(const WeightedSpace& space, std::string_view text,
                                    const std::map<std::string, UncertainPolynomial>& forms,
                                    const std::set<std::string>& params) {
    return Parser(space, text, forms, params).parse();
}

ParamPolynomial parse_poly(const WeightedSpace& space, std::string_view text,
                           const std::map<std::string, ParamPolynomial>& forms, const std::set<std::string>& params) {
    std::map<std::string, UncertainPolynomial> uf;
    for (const auto& [n, f] : forms) uf.emplace(n, UncertainPolynomial(f));
    return Parser(space, text, uf, params).parse().known;
}

}  // namespace fano
