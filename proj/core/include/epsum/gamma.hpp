#pragma once

#include "epsum/hyper.hpp"

#include <optional>

namespace epsum {

/// Series of Gamma(v + p + r*ep) / Gamma(v + p) when v is given, of Gamma(p + r*ep) otherwise,
/// known through orders < order. S-sums are taken at v, which must satisfy v >= vmin.
/// The Gamma(1 + r*ep) factor is part of the returned series.
EpsSeries gamma_expand(int p, std::optional<Var> v, const Rational& r, int order, int vmin = 1);

struct SummandExpansion {
    /// ep-free part: geometric factors, binomials and Gamma factors that do not reduce to rational functions.
    HyperTerm hyper;
    /// Laurent series in ep with coefficients in sum_var (rational in the other variables).
    EpsSeries series;
};

/// Splits t = hyper * series through orders < order. Every ep-dependent Gamma argument must be
/// sum_var + integer + r*ep or integer + r*ep.
SummandExpansion summand_expand(const HyperTerm& t, Var sum_var, int order, int vmin = 1);

/// Numeric value of the truncated series at var = n, ep = eps.
Real evaluate_series(const EpsSeries& s, long n, const Real& eps);

}  // namespace epsum
