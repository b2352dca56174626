#pragma once

#include "epsum/numeric.hpp"
#include "epsum/operators.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace epsum {

struct VerifyReport {
    bool pass = false;
    /// Largest relative deviation, rendered with 6 digits.
    std::string max_deviation;
    long worst_n = 0;
    std::optional<Rational> worst_eps;
    /// Grid points where a side has a pole.
    std::vector<long> skipped;
    long compared = 0;
    std::string to_string() const;
};

/// High-precision comparison of two expressions on n in [lo, hi] and every eps value (ep-free sides ignore eps_vals).
/// Passes iff the maximal relative deviation is below 10^(-digits/2).
VerifyReport numeric_verify(const SumExpression& lhs, const SumExpression& rhs, long lo, long hi,
                            const std::vector<Rational>& eps_vals = {}, unsigned digits = default_digits());
/// Coefficient-wise comparison through the common truncation order.
VerifyReport numeric_verify(const EpsSeries& lhs, const EpsSeries& rhs, long lo, long hi,
                            const std::vector<Rational>& eps_vals = {}, unsigned digits = default_digits());
/// Comparison against a numeric oracle f(n).
VerifyReport numeric_verify(const SumExpression& lhs, const std::function<Real(long)>& oracle, long lo, long hi,
                            unsigned digits = default_digits());

}  // namespace epsum
