#pragma once

#include "fano/rational.hpp"
#include "fano/wps.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fano {

/// Laurent polynomial in named parameters with rational coefficients.
/// Negative exponents only arise from inverting parameters the ledger
/// certifies nonzero.
class ParamScalar {
public:
    using PMono = std::map<std::string, int>;

    ParamScalar() = default;
    ParamScalar(const Rational& c);  // NOLINT(google-explicit-constructor)
    ParamScalar(int c) : ParamScalar(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    static ParamScalar param(const std::string& name, int e = 1);

    const std::map<PMono, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Rational value when constant; 0 for the zero scalar.
    Rational constant() const;
    /// Coefficient and parameter monomial when this is a single term.
    std::optional<std::pair<Rational, PMono>> as_term() const;
    std::set<std::string> params() const;

    ParamScalar substitute(const std::map<std::string, ParamScalar>& repl) const;
    Rational evaluate(const std::map<std::string, Rational>& values) const;
    std::string str() const;

    ParamScalar& operator+=(const ParamScalar& o);
    ParamScalar& operator-=(const ParamScalar& o);
    ParamScalar& operator*=(const ParamScalar& o);
    friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
    friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
    friend ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }
    friend ParamScalar operator-(const ParamScalar& a) { return a * ParamScalar(-1); }
    friend bool operator==(const ParamScalar&, const ParamScalar&) = default;

    /// Inverse of a single-term scalar (monomial in the parameters).
    ParamScalar monomial_inverse() const;

private:
    void add(const PMono& m, const Rational& c);
    std::map<PMono, Rational> terms_;
};

struct LedgerEntry {
    std::string statement;
    std::string provenance;
    std::optional<ParamScalar> nonzero;
};

/// Append-only record of the hypotheses a computation relies on.
class AssumptionLedger {
public:
    void assert_nonzero(const ParamScalar& value, const std::string& provenance);
    void record(const std::string& statement, const std::string& provenance);

    /// Nonzero constants, single-term scalars in parameters each asserted
    /// nonzero, and constant multiples of asserted values.
    bool certified_nonzero(const ParamScalar& x) const;
    /// Inverse of a certified single-term scalar; throws otherwise.
    ParamScalar unit_inverse(const ParamScalar& x) const;

    const std::vector<LedgerEntry>& entries() const { return entries_; }

private:
    bool param_nonzero(const std::string& name) const;
    std::vector<LedgerEntry> entries_;
};

/// Polynomial in the coordinates of a weighted space with ParamScalar coefficients.
class ParamPolynomial {
public:
    ParamPolynomial() = default;
    explicit ParamPolynomial(WeightedSpace space) : space_(std::move(space)) {}
    static ParamPolynomial constant(const WeightedSpace& space, const ParamScalar& c);
    static ParamPolynomial var(const WeightedSpace& space, std::size_t i);

    const WeightedSpace& space() const { return space_; }
    const std::map<Monomial, ParamScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    ParamScalar coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const ParamScalar& c);

    /// Weighted degree when homogeneous and nonzero.
    std::optional<int> degree() const;
    int degree_in(std::size_t coord) const;
    int total_degree() const;
    /// Part with coord-exponent k, the coord factor removed.
    ParamPolynomial coefficient_in(std::size_t coord, int k) const;
    /// Coordinates that occur.
    CoordSet variables() const;
    /// True when no coordinate occurs.
    bool is_scalar() const { return variables().empty(); }

    ParamPolynomial restrict(CoordSet zeroed) const;
    ParamPolynomial dehomogenize(std::size_t coord) const;
    ParamPolynomial substitute(std::size_t coord, const ParamPolynomial& value) const;
    ParamPolynomial map_params(const std::map<std::string, ParamScalar>& repl) const;
    ParamPolynomial evaluate_params(const std::map<std::string, Rational>& values) const;
    /// Value at a full coordinate point (parameters must already be numeric).
    Rational evaluate(const std::vector<Rational>& point, const std::map<std::string, Rational>& values) const;

    long min_weight(const std::vector<int>& b) const;
    ParamPolynomial initial_part(const std::vector<int>& b) const;

    /// Lex-largest monomial (first coordinate most significant).
    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    std::set<std::string> params() const;

    std::string str() const;

    ParamPolynomial& operator+=(const ParamPolynomial& o);
    ParamPolynomial& operator-=(const ParamPolynomial& o);
    friend ParamPolynomial operator+(ParamPolynomial a, const ParamPolynomial& b) { return a += b; }
    friend ParamPolynomial operator-(ParamPolynomial a, const ParamPolynomial& b) { return a -= b; }
    friend ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b);
    friend ParamPolynomial operator*(const ParamScalar& s, const ParamPolynomial& p);
    friend bool operator==(const ParamPolynomial& a, const ParamPolynomial& b) { return a.terms_ == b.terms_; }
    ParamPolynomial pow(int e) const;

private:
    WeightedSpace space_;
    std::map<Monomial, ParamScalar> terms_;
};

/// Quotient of h by g when g divides h exactly (lex division with the
/// leading coefficient of g inverted through the ledger); nullopt otherwise.
std::optional<ParamPolynomial> divide_exact(const ParamPolynomial& h, const ParamPolynomial& g,
                                            const AssumptionLedger& ledger);

/// Exactly known part plus a set of monomials whose coefficients are unknown.
struct UncertainPolynomial {
    ParamPolynomial known;
    std::set<Monomial> unknown;

    UncertainPolynomial() = default;
    explicit UncertainPolynomial(ParamPolynomial k, std::set<Monomial> u = {}) : known(std::move(k)), unknown(std::move(u)) {}

    bool exact() const { return unknown.empty(); }
    /// Known with nonzero value for every admissible completion.
    bool coefficient_certified(const Monomial& m, const AssumptionLedger& ledger) const;
    /// Minimum weight over known and unknown supports.
    long min_weight(const std::vector<int>& b) const;
    UncertainPolynomial restrict(CoordSet zeroed) const;

    UncertainPolynomial& operator+=(const UncertainPolynomial& o);
    UncertainPolynomial& operator-=(const UncertainPolynomial& o);
    friend UncertainPolynomial operator+(UncertainPolynomial a, const UncertainPolynomial& b) { return a += b; }
    friend UncertainPolynomial operator-(UncertainPolynomial a, const UncertainPolynomial& b) { return a -= b; }
    friend UncertainPolynomial operator*(const UncertainPolynomial& a, const UncertainPolynomial& b);
    UncertainPolynomial pow(int e) const;
};

/// Parses "t^2 - q*v + s*Q9" over the space: identifiers are coordinates,
/// names in `forms`, or names in `params`; integers and rationals "a/b" allowed.
UncertainPolynomial parse_uncertain(const WeightedSpace& space, std::string_view text,
                                    const std::map<std::string, UncertainPolynomial>& forms = {},
                                    const std::set<std::string>& params = {});
ParamPolynomial parse_poly(const WeightedSpace& space, std::string_view text,
                           const std::map<std::string, ParamPolynomial>& forms = {},
                           const std::set<std::string>& params = {});

}  // namespace fano
