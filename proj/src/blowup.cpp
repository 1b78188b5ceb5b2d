#include "fano/blowup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fano {

QuotientPoint QuotientPoint::from(const BasketEntry& b, std::optional<std::size_t> at) {
    return QuotientPoint{b.r, b.a, at};
}

std::string QuotientPoint::type_str() const { return BasketEntry{r, a, 1}.type_str(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UPoly::at(const Rational& x) const {
    Rational v;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

UPoly UPoly::shifted(const Rational& x0) const {
    UPoly out;
    UPoly lin = UPoly::param() + UPoly(x0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * lin + UPoly(*it);
    return out;
}

std::string UPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
        const Rational& c = c_[i];
        if (c.is_zero()) continue;
        Rational mag = c.abs();
        std::string term;
        if (i == 0) term = mag.str();
        else term = (mag == Rational(1) ? "" : mag.str() + "*") + var + (i > 1 ? "^" + std::to_string(i) : "");
        if (out.empty()) out = (c.sign() < 0 ? "-" : "") + term;
        else out += (c.sign() < 0 ? " - " : " + ") + term;
    }
    return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly out;
    if (a.c_.empty() || b.c_.empty()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    out.trim();
    return out;
}

bool negative_for_all_from(const UPoly& p, const Rational& e0) {
    UPoly s = p.shifted(e0);
    if (s.coeff(0).sign() >= 0) return false;
    for (int i = 1; i <= s.degree(); ++i)
        if (s.coeff(i).sign() > 0) return false;
    return true;
}

BlowupClass anticanonical(const QuotientPoint& p) { return BlowupClass{Rational(1), Rational(1, p.r)}; }

long weight_product(const QuotientPoint& p) { return static_cast<long>(p.a) * (p.r - p.a); }

Rational e_cubed(const QuotientPoint& p) { return Rational(static_cast<long>(p.r) * p.r, weight_product(p)); }

Rational ivr(const QuotientPoint& p, const WeightedSpace& space, CoordSet C) {
    if (C.empty()) throw std::invalid_argument("ivr: empty coordinate set");
    if (p.at && C.contains(*p.at)) throw std::invalid_argument("ivr: set contains the center coordinate");
    std::optional<Rational> best;
    for (auto i : C.positions()) {
        long a = space.weight(i);
        Rational v(residue(a, p.r), a * p.r);
        if (!best || v < *best) best = v;
    }
    return *best;
}

Rational nef_pairing(const BlowupClass& N, const QuotientPoint& p, const Rational& k3) {
    return N.n * k3 - N.lam / Rational(weight_product(p));
}

CoordSet vanishing_coordinates(const QuotientPoint& p, const WeightedSpace& space) {
    if (p.at) return space.all().without(*p.at);
    CoordSet s;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (space.weight(i) % p.r != 0) s = s.with(i);
    return s;
}

Rational residue_order_bound(const QuotientPoint& p, const WeightedSpace& space, std::size_t coord) {
    return Rational(residue(space.weight(coord), p.r), p.r);
}

Rational AdmissibleWeight::order_bound(std::size_t coord) const { return Rational(b.at(coord), point.r); }

bool AdmissibleWeight::admissible(const WeightedSpace& space) const {
    if (b.size() != space.size()) return false;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (point.at && i == *point.at) continue;
        if (b[i] <= 0 || residue(b[i], point.r) != residue(space.weight(i), point.r)) return false;
    }
    return true;
}

std::string AdmissibleWeight::str(const WeightedSpace& space) const {
    std::string names, vals;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (point.at && i == *point.at) continue;
        names += (names.empty() ? "" : ",") + space.name(i);
        vals += (vals.empty() ? "" : ",") + std::to_string(b[i]);
    }
    return "(" + names + ") -> (" + vals + ")/" + std::to_string(point.r);
}

AdmissibleWeight initial_weight(const QuotientPoint& p, const WeightedSpace& space) {
    if (!p.at) throw std::invalid_argument("initial_weight: point is not placed at a coordinate point");
    AdmissibleWeight w{p, std::vector<int>(space.size(), 0), {}, {}};
    for (std::size_t i = 0; i < space.size(); ++i)
        if (i != *p.at) w.b[i] = static_cast<int>(residue(space.weight(i), p.r));
    return w;
}

AdmissibleWeight weight_bump(const AdmissibleWeight& w, const LowestPartFact& fact, std::size_t coord,
                             const WeightedSpace& space) {
    const auto& p = w.point;
    if (!p.at) throw BumpRejected("weight_bump: point is not placed at a coordinate point");
    const std::size_t k = *p.at;
    if (coord == k || coord >= space.size()) throw BumpRejected("weight_bump: invalid coordinate");
    if (fact.weight_b != w.b)
        throw BumpRejected("weight_bump: fact for " + fact.tag + " was computed under a different weight");
    if (!fact.coefficient_certified)
        throw BumpRejected("weight_bump: coefficient in the lowest part of " + fact.tag + " is not certified");
    if (fact.support.size() != 1)
        throw BumpRejected("weight_bump: lowest part of " + fact.tag + " is not a single monomial");
    if (std::find(w.tags_used.begin(), w.tags_used.end(), fact.tag) != w.tags_used.end())
        throw BumpRejected("weight_bump: equation " + fact.tag + " already used for a bump");
    const Monomial& m = fact.support.front();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == k) continue;
        int want = i == coord ? 1 : 0;
        if (m.exp(i) != want)
            throw BumpRejected("weight_bump: lowest part " + m.str(space) + " of " + fact.tag + " is not of the form " +
                               space.name(k) + "^m*" + space.name(coord));
    }
    AdmissibleWeight out = w;
    out.b[coord] += p.r;
    out.tags_used.push_back(fact.tag);
    out.bump_log.push_back(space.name(coord) + ": " + std::to_string(w.b[coord]) + "/" + std::to_string(p.r) + " -> " +
                           std::to_string(out.b[coord]) + "/" + std::to_string(p.r) + " via " + fact.tag +
                           " lowest part " + m.str(space));
    return out;
}

}  // namespace fano
