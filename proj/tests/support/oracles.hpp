#pragma once

#include "epsum/hyper.hpp"
#include "epsum/numeric.hpp"
#include "epsum/operators.hpp"

#include <functional>
#include <vector>

namespace epsum::testing {

/// Laurent coefficients of f at ep = 0 for orders -pole, ..., -pole + count - 1, from an
/// interpolation of ep^pole * f on samples +-i/scale. Needs a working precision well above the result's.
std::vector<Real> laurent_coefficients(const std::function<Real(const Rational&)>& f, int pole, int count, int samples = 40,
                                       long scale = 256);

/// Laurent coefficients of sum_{k=lo}^{n} t(n, k) summed term by term.
std::vector<Real> definite_sum_laurent(const HyperTerm& t, long n, long lo, int pole, int count);

/// F(n) for n in [first, last] from op F = rhs at fixed values, starting with ivs at first, first+1, ...
std::vector<Real> iterate_real(const RecOperator& op, const std::function<Real(long)>& rhs, const std::vector<Real>& ivs,
                               long first, long last);

/// Solves a x = b by Gaussian elimination with partial pivoting.
std::vector<Real> solve_real(std::vector<std::vector<Real>> a, std::vector<Real> b);

}  // namespace epsum::testing
