#include "fano/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace fano {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(q_.get_den(), q_.get_num()));
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fano
