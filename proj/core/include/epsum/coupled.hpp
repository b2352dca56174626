#pragma once

#include "epsum/eps_solver.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace epsum {

/// Strongly connected blocks of unknowns in dependency order.
struct ClusterPlan {
    std::vector<std::vector<std::size_t>> clusters;
    /// For each cluster the earlier clusters it references.
    std::vector<std::vector<std::size_t>> depends_on;
};

/// deps[i] lists the unknowns that the equation of unknown i references.
ClusterPlan cluster_order(const std::vector<std::vector<std::size_t>>& deps);
/// Equation i is taken as the equation of unknown i.
ClusterPlan cluster_order(const CoupledSystem& sys);
/// Every dependency points to the same or an earlier cluster.
bool is_topological(const ClusterPlan& plan, const std::vector<std::vector<std::size_t>>& deps);

/// sum c(ep, N) * h_i(N + s) over the right hand sides h_i of a first-order system.
struct RhsCombination {
    std::map<std::pair<std::size_t, int>, RationalFunction> terms;

    RhsCombination shifted(int j) const;
    RhsCombination& operator+=(const RhsCombination& o);
    RhsCombination scaled(const RationalFunction& f) const;
    Rational evaluate(long n, const Rational& eps, const std::function<Rational(std::size_t, long)>& h) const;
    /// Coefficient-wise series; target bounds the truncation when coefficients have poles in ep.
    EpsSeries series(const std::vector<EpsSeries>& h, int target = kExactOrder) const;
};

struct UncoupledForm {
    std::size_t pivot = 0;
    FirstOrderSystem first_order;
    /// scalar_op X_pivot = scalar_rhs, valid for N >= first_order.base.
    RecOperator scalar_op;
    RhsCombination scalar_rhs;
    /// X_u(N) = sum_j coeffs[u][j] X_pivot(N + j) + tails[u].
    Matrix<RationalFunction> coeffs;
    std::vector<RhsCombination> tails;
};

/// Cyclic vector elimination with the given pivot; DegeneratePivotError if its shifts do not span the system.
UncoupledForm uncouple(const CoupledSystem& sys, std::size_t pivot);
/// Pivot with the lowest operator order, then the smallest coefficient degree, then declaration order.
UncoupledForm uncouple_auto(const CoupledSystem& sys, const std::vector<std::size_t>& candidates = {});

/// h_i(N) of the first-order form, with the known expansions inserted.
std::vector<EpsSeries> first_order_rhs(const CoupledSystem& sys, const FirstOrderSystem& fo);

struct PivotValues {
    long first_n = 1;
    std::vector<EpsSeries> values;
};

struct ClusterResult {
    std::vector<std::string> unknowns;
    std::string pivot;
    std::optional<UncoupledForm> form;
    std::optional<BootstrapResult> expansion;
    bool complete = false;
    std::string failure;
};

/// Expansions of the unknowns. For a differential input the coefficients are those of x^N in the generating functions.
struct CoupledSolution {
    std::map<std::string, EpsSeries> series;
    std::vector<ClusterResult> clusters;
    bool from_differential = false;
    bool complete = false;
};

struct CoupledOptions {
    /// Forced pivot per cluster (by unknown name); others are chosen automatically.
    std::vector<std::string> pivots;
    /// Truncation target for right hand sides whose coefficients have poles in ep.
    int target = kExactOrder;
};

/// Clusters in dependency order; per cluster uncoupling, bootstrap on the pivot and back substitution.
/// A failing cluster stops the run; results of earlier clusters are kept.
CoupledSolution solve_coupled_system(const CoupledSystem& sys, const std::map<std::string, PivotValues>& ivs, int orders,
                                     const CoupledOptions& opts = {});

/// Left minus right hand side of each difference equation with the solution inserted.
std::vector<EpsSeries> coupled_residuals(const CoupledSystem& sys, const std::map<std::string, EpsSeries>& series);

/// Scalar recurrence sum a_i F(N+i) = rhs as the system X1(N+1) = X2(N), ..., sum a_i X_{i+1}(N) ... = rhs.
CoupledSystem companion_system(const RecOperator& op, const EpsSeries& rhs, const std::string& name = "F");

}  // namespace epsum
