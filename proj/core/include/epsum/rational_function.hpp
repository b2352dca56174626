#pragma once

#include "epsum/polynomial.hpp"

#include <string>

namespace epsum {

/// Quotient of polynomials in k, N, ep, x. Always reduced with a monic denominator.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(const Polynomial& p) : num_(p), den_(1) {}
    RationalFunction(const Rational& c) : num_(c), den_(1) {}
    RationalFunction(long c) : num_(c), den_(1) {}
    RationalFunction(int c) : num_(c), den_(1) {}
    /// Throws PoleError if den is zero.
    RationalFunction(const Polynomial& num, const Polynomial& den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;
    unsigned variable_mask() const { return num_.variable_mask() | den_.variable_mask(); }
    bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFunction pow(int e) const;
    RationalFunction substitute(Var v, const Polynomial& value) const;
    RationalFunction substitute(Var v, const RationalFunction& value) const;
    RationalFunction shift(Var v, const Rational& c) const;
    /// Throws PoleError when the denominator vanishes identically after substitution.
    RationalFunction evaluate(Var v, const Rational& value) const;
    Rational evaluate_all(const std::array<Rational, kVarCount>& point) const;

    std::string to_string() const;

    friend std::strong_ordering compare(const RationalFunction& a, const RationalFunction& b);

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

}  // namespace epsum
