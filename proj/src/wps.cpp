#include "fano/wps.hpp"

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fano {

std::vector<std::size_t> CoordSet::positions() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
}

WeightedSpace::WeightedSpace(std::vector<Coordinate> coords) : coords_(std::move(coords)) {
    if (coords_.size() > 32) throw std::invalid_argument("WeightedSpace: at most 32 coordinates");
    std::set<std::string> seen;
    for (const auto& c : coords_) {
        if (c.weight <= 0) throw std::invalid_argument("WeightedSpace: non-positive weight for '" + c.name + "'");
        if (c.name.empty()) throw std::invalid_argument("WeightedSpace: empty coordinate name");
        if (!seen.insert(c.name).second) throw std::invalid_argument("WeightedSpace: duplicate coordinate '" + c.name + "'");
    }
}

std::optional<std::size_t> WeightedSpace::find(std::string_view name) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i].name == name) return i;
    return std::nullopt;
}

std::size_t WeightedSpace::index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw std::out_of_range("unknown coordinate '" + std::string(name) + "'");
}

CoordSet WeightedSpace::set(std::initializer_list<std::string_view> names) const {
    CoordSet s;
    for (auto n : names) s = s.with(index(n));
    return s;
}

CoordSet WeightedSpace::set(const std::vector<std::string>& names) const {
    CoordSet s;
    for (const auto& n : names) s = s.with(index(n));
    return s;
}

std::vector<std::string> WeightedSpace::names(CoordSet s) const {
    std::vector<std::string> out;
    for (auto i : s.positions()) out.push_back(name(i));
    return out;
}

std::string WeightedSpace::describe(CoordSet s) const {
    std::string out = "{";
    bool first = true;
    for (auto i : s.positions()) {
        if (!first) out += ",";
        out += name(i);
        first = false;
    }
    return out + "}";
}

int WeightedSpace::gcd_of(CoordSet s) const {
    int g = 0;
    for (auto i : s.positions()) g = std::gcd(g, weight(i));
    return g;
}

bool WeightedSpace::well_formed() const {
    for (std::size_t j = 0; j < size(); ++j)
        if (gcd_of(all().without(j)) != 1) return false;
    return true;
}

std::string WeightedSpace::str() const {
    std::ostringstream os;
    os << "P(";
    for (std::size_t i = 0; i < size(); ++i) os << (i ? "," : "") << weight(i) << "_" << name(i);
    os << ")";
    return os.str();
}

Monomial Monomial::var(std::size_t n, std::size_t i, int e) {
    Monomial m = one(n);
    m.exps_.at(i) = e;
    return m;
}

Monomial Monomial::parse(const WeightedSpace& space, std::string_view text) {
    Monomial m = one(space.size());
    std::string s(text);
    if (s == "1") return m;
    std::stringstream ss(s);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        auto caret = factor.find('^');
        std::string name = factor.substr(0, caret);
        int e = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
        m.exps_.at(space.index(name)) += e;
    }
    return m;
}

int Monomial::degree(const WeightedSpace& space) const {
    int d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += exps_[i] * space.weight(i);
    return d;
}

long Monomial::weighted(const std::vector<int>& weights) const {
    long d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += static_cast<long>(exps_[i]) * weights.at(i);
    return d;
}

int Monomial::total_degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

CoordSet Monomial::support() const {
    CoordSet s;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != 0) s = s.with(i);
    return s;
}

std::optional<std::size_t> Monomial::pure_power_of() const {
    auto s = support();
    if (s.size() != 1) return std::nullopt;
    return s.positions().front();
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > o.exps_.at(i)) return false;
    return true;
}

std::string Monomial::str(const WeightedSpace& space) const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += space.name(i);
        if (exps_[i] != 1) out += "^" + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] += b.exps_.at(i);
    return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exps_.size(); ++i) {
        m.exps_[i] -= b.exps_.at(i);
        if (m.exps_[i] < 0) throw std::domain_error("Monomial: inexact division");
    }
    return m;
}

long residue(long a, long r) {
    if (r < 1) throw std::domain_error("residue: modulus must be positive");
    long m = a % r;
    if (m <= 0) m += r;
    return m;
}

namespace {

void enumerate(const WeightedSpace& space, const std::vector<std::size_t>& vars, std::size_t k, int remaining,
               Monomial& cur, std::vector<Monomial>& out) {
    if (k == vars.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    const auto i = vars[k];
    const int w = space.weight(i);
    for (int e = remaining / w; e >= 0; --e) {
        cur.set_exp(i, e);
        enumerate(space, vars, k + 1, remaining - e * w, cur, out);
    }
    cur.set_exp(i, 0);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const WeightedSpace& space, int d, CoordSet allowed) {
    std::vector<Monomial> out;
    if (d < 0 || !allowed.subset_of(space.all())) return out;
    Monomial cur = Monomial::one(space.size());
    enumerate(space, allowed.positions(), 0, d, cur, out);
    return out;
}

}  // namespace fano
