#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace fano {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : q_(n) {}   // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    /// Parses "a", "-a" or "a/b".
    static Rational parse(std::string_view text);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational abs() const;
    Rational inverse() const;
    Rational pow(long e) const;

    std::string str() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a);

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    const mpq_class& raw() const { return q_; }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace fano

template <>
struct std::hash<fano::Rational> {
    std::size_t operator()(const fano::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
