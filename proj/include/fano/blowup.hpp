#pragma once

#include "fano/candidate.hpp"
#include "fano/rational.hpp"
#include "fano/wps.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

/// Terminal quotient point of type 1/r(1, a, r-a), optionally placed at a coordinate point.
struct QuotientPoint {
    int r = 2;
    int a = 1;
    std::optional<std::size_t> at;

    static QuotientPoint from(const BasketEntry& b, std::optional<std::size_t> at = std::nullopt);
    std::string type_str() const;
};

/// Univariate polynomial over Q in one integer parameter (default name "e").
class UPoly {
public:
    UPoly() = default;
    UPoly(const Rational& c) : c_{c} { trim(); }  // NOLINT(google-explicit-constructor)
    UPoly(int c) : UPoly(Rational(c)) {}          // NOLINT(google-explicit-constructor)
    static UPoly param() { UPoly p; p.c_ = {Rational(0), Rational(1)}; return p; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
    bool is_zero() const { return c_.empty(); }
    Rational at(const Rational& x) const;
    /// p(x0 + k) as a polynomial in k.
    UPoly shifted(const Rational& x0) const;
    std::string str(const std::string& var = "e") const;

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator-(const UPoly& a) { return UPoly(0) - a; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly&, const UPoly&) = default;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Proof that p(e) < 0 for every integer e >= e0: after e = e0 + k every
/// coefficient in k is <= 0 and the constant term is < 0.
bool negative_for_all_from(const UPoly& p, const Rational& e0);

/// Divisor class -n*phi^*K_X - lam*E on the Kawamata blowup.
template <class S>
struct BasicBlowupClass {
    Rational n;
    S lam;
};
using BlowupClass = BasicBlowupClass<Rational>;
using ParamBlowupClass = BasicBlowupClass<UPoly>;

/// -K_Y = (1, 1/r).
BlowupClass anticanonical(const QuotientPoint& p);

long weight_product(const QuotientPoint& p);
Rational e_cubed(const QuotientPoint& p);

/// min over x_i in C of residue(a_i, r) / (a_i r). Throws if C is empty or contains the center.
Rational ivr(const QuotientPoint& p, const WeightedSpace& space, CoordSet C);

template <class S>
S y_triple(const BasicBlowupClass<S>& c1, const BasicBlowupClass<S>& c2, const BasicBlowupClass<S>& c3,
           const QuotientPoint& p, const Rational& k3) {
    S pull = S(c1.n * c2.n * c3.n * k3);
    return pull - c1.lam * c2.lam * c3.lam * S(e_cubed(p));
}

/// N.(-K_Y)^2 = n k3 - lam / wp.
Rational nef_pairing(const BlowupClass& N, const QuotientPoint& p, const Rational& k3);

/// Coordinates vanishing at the point: all but the center for a coordinate
/// point, otherwise those with r not dividing the weight.
CoordSet vanishing_coordinates(const QuotientPoint& p, const WeightedSpace& space);
/// residue(a_i, r)/r, a valid lower bound of ord_E(D_i) for vanishing coordinates.
Rational residue_order_bound(const QuotientPoint& p, const WeightedSpace& space, std::size_t coord);

/// Lowest-weight part of one equation under a weight, as established by monomial
/// reasoning or by explicit polynomials.
struct LowestPartFact {
    std::string tag;
    int degree = 0;
    std::vector<int> weight_b;
    /// Monomials attaining the minimum weight with possibly nonzero coefficient.
    std::vector<Monomial> support;
    bool coefficient_certified = false;
    std::string provenance;
};

class BumpRejected : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct AdmissibleWeight {
    QuotientPoint point;
    /// Numerators b_i of b_i/r in coordinate order; b at the center is 0.
    std::vector<int> b;
    std::vector<std::string> bump_log;
    std::vector<std::string> tags_used;

    Rational order_bound(std::size_t coord) const;
    /// b_i = a_i mod r for every non-center coordinate.
    bool admissible(const WeightedSpace& space) const;
    /// "(p,r,s,...) -> (1,1,1,...)/5"
    std::string str(const WeightedSpace& space) const;
};

/// Requires p.at. b_i = residue(a_i, r).
AdmissibleWeight initial_weight(const QuotientPoint& p, const WeightedSpace& space);

/// Raises b_coord by r, given a certified fact that the lowest part of the tagged
/// equation under w is exactly x_k^m * x_coord. Throws BumpRejected otherwise.
AdmissibleWeight weight_bump(const AdmissibleWeight& w, const LowestPartFact& fact, std::size_t coord,
                             const WeightedSpace& space);

}  // namespace fano
