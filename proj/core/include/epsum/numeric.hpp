#pragma once

#include "epsum/sum_expr.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace epsum {

using Real = boost::multiprecision::mpfr_float;

/// Working precision in decimal digits: EPSUM_DIGITS from the environment, else 40.
unsigned default_digits();

/// Sets the default Real precision for the lifetime of the object.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

Real to_real(const Rational& q);
Real real_zeta(int s);
Real real_euler_gamma();
Real real_log(const Rational& q);
Real real_gamma(const Real& x);
Real real_lgamma_abs(const Real& x);

Real constant_value(const FormalConstant& c);
Real constant_monomial_value(const ConstMonomial& m);

/// S_w(n) in floating point.
Real ssum_real(const SWord& w, long n);
/// Value of e at var = n; remaining coefficient variables must be absent.
Real evaluate_real(const SumExpression& e, long n);
/// Value of a constant-only expression.
Real evaluate_real(const SumExpression& e);

/// Decimal rendering with the given number of significant digits.
std::string format_real(const Real& x, unsigned digits);

/// |a - b| / max(|a|, |b|, tiny); absolute difference when both are tiny.
Real relative_deviation(const Real& a, const Real& b);

}  // namespace epsum
