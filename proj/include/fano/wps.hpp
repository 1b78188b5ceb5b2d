#pragma once

#include "fano/rational.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fano {

struct Coordinate {
    std::string name;
    int weight = 1;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// Set of coordinate positions of a fixed WeightedSpace (at most 32 coordinates).
class CoordSet {
public:
    constexpr CoordSet() = default;
    constexpr explicit CoordSet(std::uint32_t bits) : bits_(bits) {}

    static CoordSet single(std::size_t i) { return CoordSet(std::uint32_t{1} << i); }

    bool contains(std::size_t i) const { return (bits_ >> i) & 1u; }
    CoordSet with(std::size_t i) const { return CoordSet(bits_ | (std::uint32_t{1} << i)); }
    CoordSet without(std::size_t i) const { return CoordSet(bits_ & ~(std::uint32_t{1} << i)); }
    bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    bool subset_of(CoordSet o) const { return (bits_ & ~o.bits_) == 0; }
    std::uint32_t bits() const { return bits_; }

    std::vector<std::size_t> positions() const;

    friend CoordSet operator|(CoordSet a, CoordSet b) { return CoordSet(a.bits_ | b.bits_); }
    friend CoordSet operator&(CoordSet a, CoordSet b) { return CoordSet(a.bits_ & b.bits_); }
    friend CoordSet operator-(CoordSet a, CoordSet b) { return CoordSet(a.bits_ & ~b.bits_); }
    friend bool operator==(CoordSet, CoordSet) = default;

private:
    std::uint32_t bits_ = 0;
};

/// Weighted projective space P(a_0, ..., a_n) with named coordinates.
/// Construction checks names are unique and weights positive; it does not
/// require well-formedness (candidate validation reports that).
class WeightedSpace {
public:
    WeightedSpace() = default;
    explicit WeightedSpace(std::vector<Coordinate> coords);

    std::size_t size() const { return coords_.size(); }
    const std::vector<Coordinate>& coords() const { return coords_; }
    const std::string& name(std::size_t i) const { return coords_.at(i).name; }
    int weight(std::size_t i) const { return coords_.at(i).weight; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws std::out_of_range for an unknown name.
    std::size_t index(std::string_view name) const;

    CoordSet all() const { return CoordSet(size() == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << size()) - 1); }
    CoordSet set(std::initializer_list<std::string_view> names) const;
    CoordSet set(const std::vector<std::string>& names) const;
    std::vector<std::string> names(CoordSet s) const;
    /// "{p,q,r}"
    std::string describe(CoordSet s) const;
    /// gcd of the weights in s (0 for the empty set).
    int gcd_of(CoordSet s) const;

    bool well_formed() const;

    /// "P(2_p,5_q,...)"
    std::string str() const;

    friend bool operator==(const WeightedSpace&, const WeightedSpace&) = default;

private:
    std::vector<Coordinate> coords_;
};

/// Exponent vector against a fixed WeightedSpace (positions match coordinates).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}
    static Monomial one(std::size_t n) { return Monomial(std::vector<int>(n, 0)); }
    static Monomial var(std::size_t n, std::size_t i, int e = 1);
    /// Parses "r*t^2" / "1" against the given space.
    static Monomial parse(const WeightedSpace& space, std::string_view text);

    std::size_t size() const { return exps_.size(); }
    int exp(std::size_t i) const { return exps_.at(i); }
    void set_exp(std::size_t i, int e) { exps_.at(i) = e; }
    const std::vector<int>& exps() const { return exps_; }

    int degree(const WeightedSpace& space) const;
    /// Weighted degree under an arbitrary per-coordinate weight vector.
    long weighted(const std::vector<int>& weights) const;
    int total_degree() const;
    CoordSet support() const;
    bool is_one() const { return support().empty(); }
    /// Position of the only variable if this is x^m with m >= 1.
    std::optional<std::size_t> pure_power_of() const;
    bool divisible_by_any(CoordSet vars) const { return !(support() & vars).empty(); }
    bool divides(const Monomial& o) const;

    std::string str(const WeightedSpace& space) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<int> exps_;
};

/// The representative of a mod r in (0, r]; r itself (never 0) when r | a.
long residue(long a, long r);

/// Monomials of weighted degree d using only coordinates in `allowed`,
/// ordered lexicographically (descending) by exponent vector in coordinate order.
std::vector<Monomial> monomials_of_degree(const WeightedSpace& space, int d, CoordSet allowed);

}  // namespace fano
