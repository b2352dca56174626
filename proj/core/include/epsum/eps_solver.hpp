#pragma once

#include "epsum/rec_solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epsum {

struct NormalizedRecurrence {
    RecOperator op;
    EpsSeries rhs;
    /// Lowest order of the expansion.
    int lambda = 0;
    /// Power of ep divided out of the operator.
    int eps_shift = 0;
};

/// Divides op by the largest power of ep that divides all coefficients and fixes lambda
/// from the start of the right hand side and of the initial values.
NormalizedRecurrence normalize_leading(const RecOperator& op, const EpsSeries& rhs, const std::vector<EpsSeries>& ivs = {});

struct BootstrapResult {
    /// Found coefficients; truncated at the first order that could not be solved.
    EpsSeries series;
    std::vector<RecSolution> solutions;
    bool complete = false;
    /// When incomplete: the order, the error and the constraint recurrence at that order.
    std::optional<int> failed_order;
    std::string failure;
    std::string constraint;
};

/// Coefficients F_lambda, ..., F_{lambda+orders-1} of F with op F = rhs, from ivs = F(first_n), ..., F(first_n + d - 1).
/// Throws TruncationError when rhs or ivs do not carry the requested orders.
BootstrapResult bootstrap_expansion(const RecOperator& op, const EpsSeries& rhs, const std::vector<EpsSeries>& ivs, int orders,
                                    long first_n = 1);

/// op * series - rhs vanishes through the truncation order of series.
bool bootstrap_certify(const RecOperator& op, const EpsSeries& rhs, const EpsSeries& series);

}  // namespace epsum
