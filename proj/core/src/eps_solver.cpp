#include "epsum/eps_solver.hpp"
#include "epsum/errors.hpp"

#include <algorithm>

namespace epsum {

namespace {

int eps_order(const Polynomial& p)
{
    auto cs = p.coefficients(Var::ep);
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (!cs[i].is_zero()) return static_cast<int>(i);
    return kExactOrder;
}

}  // namespace

NormalizedRecurrence normalize_leading(const RecOperator& op, const EpsSeries& rhs, const std::vector<EpsSeries>& ivs)
{
    if (op.is_zero()) throw DomainError("zero operator");
    int s = kExactOrder;
    for (const auto& c : op.coeffs())
        if (!c.is_zero()) s = std::min(s, eps_order(c));
    NormalizedRecurrence out;
    out.eps_shift = s;
    out.op = s == 0 ? op : op.scaled(RationalFunction(Polynomial(1), var_poly(Var::ep).pow(static_cast<unsigned>(s))));
    out.rhs = rhs.div_eps(s);
    out.lambda = out.rhs.start();
    for (const auto& iv : ivs) out.lambda = std::min(out.lambda, iv.start());
    return out;
}

BootstrapResult bootstrap_expansion(const RecOperator& op_in, const EpsSeries& rhs_in, const std::vector<EpsSeries>& ivs,
                                    int orders, long first_n)
{
    if (orders < 0) throw DomainError("negative number of orders");
    NormalizedRecurrence nr = normalize_leading(op_in, rhs_in, ivs);
    const RecOperator& op = nr.op;
    int d = op.order();
    if (static_cast<int>(ivs.size()) < d)
        throw DomainError("need " + std::to_string(d) + " initial values, got " + std::to_string(ivs.size()));
    int last = order_add(nr.lambda, orders);
    if (nr.rhs.trunc() < last)
        throw TruncationError("right hand side known through order " + std::to_string(nr.rhs.trunc() - 1) + ", need " +
                              std::to_string(last - 1));
    for (std::size_t i = 0; i < ivs.size(); ++i)
        if (ivs[i].trunc() < last)
            throw TruncationError("initial value F(" + std::to_string(first_n + static_cast<long>(i)) + ") known through order " +
                                  std::to_string(ivs[i].trunc() - 1) + ", need " + std::to_string(last - 1));

    RecOperator op0 = op_specialize_eps(op, 0);
    BootstrapResult out;
    std::vector<SumExpression> found;
    EpsSeries remaining = nr.rhs;
    for (int j = nr.lambda; j < last; ++j) {
        SumExpression h = remaining.coefficient(j);
        std::vector<InitialValue> iv;
        for (std::size_t i = 0; i < ivs.size(); ++i) iv.push_back({first_n + static_cast<long>(i), ivs[i].coefficient(j)});
        try {
            RecSolution sol = solve_rec(op0, h, iv);
            remaining -= op_apply(op, EpsSeries(j, {sol.match.solution}, kExactOrder, op.var()));
            if (!remaining.coefficient(j).is_zero()) throw std::logic_error("order " + std::to_string(j) + " not removed");
            found.push_back(sol.match.solution);
            out.solutions.push_back(std::move(sol));
        } catch (const Error& e) {
            out.failed_order = j;
            out.failure = e.what();
            out.constraint = op0.to_string() + " = " + h.to_string();
            break;
        }
    }
    int reached = nr.lambda + static_cast<int>(found.size());
    out.series = EpsSeries(nr.lambda, std::move(found), reached, op.var());
    out.complete = !out.failed_order;
    return out;
}

bool bootstrap_certify(const RecOperator& op, const EpsSeries& rhs, const EpsSeries& series)
{
    EpsSeries diff = op_apply(op, series) - rhs;
    for (int o = diff.start(); o < series.trunc(); ++o)
        if (!diff.coefficient(o).is_zero()) return false;
    return true;
}

}  // namespace epsum
