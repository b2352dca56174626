#pragma once

#include "epsum/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace epsum {

/// Variables are totally ordered k < N < ep < x.
enum class Var : std::uint8_t { k = 0, N = 1, ep = 2, x = 3 };
inline constexpr std::size_t kVarCount = 4;

const char* var_name(Var v);

using Exponents = std::array<std::int32_t, kVarCount>;

/// Graded lexicographic comparison, x highest. Returns true if a > b.
bool monomial_greater(const Exponents& a, const Exponents& b);

/// Sparse multivariate polynomial over Q in k, N, ep, x.
/// Terms are kept sorted in decreasing graded-lex order with no zero coefficients.
class Polynomial {
public:
    using Term = std::pair<Exponents, Rational>;

    Polynomial() = default;
    Polynomial(const Rational& c);
    Polynomial(long c) : Polynomial(Rational(c)) {}
    Polynomial(int c) : Polynomial(Rational(c)) {}

    static Polynomial variable(Var v);
    static Polynomial monomial(const Exponents& e, const Rational& c);
    static Polynomial from_terms(std::vector<Term> terms);
    /// sum_i coeffs[i] * v^i
    static Polynomial from_coefficients(Var v, const std::vector<Polynomial>& coeffs);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;
    Rational constant_term() const;
    const Rational& leading_coefficient() const;
    const Exponents& leading_monomial() const;

    int degree(Var v) const;
    int total_degree() const;
    /// Smallest exponent of v among all terms.
    int low_degree(Var v) const;
    bool uses(Var v) const { return degree(v) > 0; }
    unsigned variable_mask() const;
    /// Coefficients as polynomials in the remaining variables, index = power of v.
    std::vector<Polynomial> coefficients(Var v) const;
    Polynomial coefficient(Var v, int power) const;
    Polynomial leading_coefficient_in(Var v) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    Polynomial pow(unsigned e) const;
    Polynomial substitute(Var v, const Polynomial& value) const;
    Polynomial evaluate(Var v, const Rational& value) const;
    /// p(v) -> p(v + c)
    Polynomial shift(Var v, const Rational& c) const;
    Polynomial derivative(Var v) const;
    /// Full evaluation; missing variables count as zero.
    Rational evaluate_all(const std::array<Rational, kVarCount>& point) const;

    /// Divide by the leading coefficient.
    Polynomial monic() const;
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    Polynomial integer_primitive() const;
    /// Rational c with p = c * integer_primitive().
    Rational rational_content() const;

    std::string to_string() const;

    /// Total order used for canonical containers.
    friend std::strong_ordering compare(const Polynomial& a, const Polynomial& b);

private:
    std::vector<Term> terms_;
};

inline Polynomial var_poly(Var v) { return Polynomial::variable(v); }

/// Exact multivariate division. Empty if b does not divide a.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);
/// Division that must succeed; throws std::logic_error otherwise.
Polynomial divide_known(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b as polynomials in v.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Var v);

/// Quotient and remainder of univariate division over Q (both must only involve v).
std::pair<Polynomial, Polynomial> divide_univariate(const Polynomial& a, const Polynomial& b, Var v);

/// Monic greatest common divisor (leading coefficient 1 in graded-lex order).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Content w.r.t. v: gcd of the coefficients of p viewed as polynomial in v.
Polynomial content_in(const Polynomial& p, Var v);

}  // namespace epsum
