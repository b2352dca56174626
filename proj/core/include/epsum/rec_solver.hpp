#pragma once

#include "epsum/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epsum {

/// Polynomial solutions of op F = rhs: a basis of the homogeneous ones and one particular solution.
struct PolynomialSolutions {
    std::vector<Polynomial> basis;
    std::optional<Polynomial> particular;
};
PolynomialSolutions polynomial_solutions(const RecOperator& op, const Polynomial& rhs = Polynomial());

/// Upper bound for the degree of polynomial solutions of op F = f with deg f = rhs_degree (-1 for f = 0).
int polynomial_degree_bound(const RecOperator& op, int rhs_degree);

/// Denominator U such that every rational solution of op F = 0 is P/U with P a polynomial.
Polynomial universal_denominator(const RecOperator& op);
/// Basis of the rational solutions of op F = 0.
std::vector<RationalFunction> rational_solutions(const RecOperator& op);

/// Solution c^N * factor(N).
struct GeometricSolution {
    Rational base = 1;
    RationalFunction factor;
    SumExpression expression(Var v) const;
};
/// All solutions of the form c^N * rational with c rational.
std::vector<GeometricSolution> geometric_solutions(const RecOperator& op);

/// Shift quotients F(N+1)/F(N) of hypergeometric solutions. Factor candidates are linear factors over Q
/// and the remaining squarefree blocks of the boundary coefficients.
std::vector<RationalFunction> hypergeometric_solutions(const RecOperator& op);

/// T with T(N+1) - T(N) = w(N), expressed through S-sums; nothing if a kernel falls outside
/// the recognized class (denominators with non-integer roots).
std::optional<SumExpression> antidifference(const SumExpression& w);

struct SolutionSet {
    std::vector<SumExpression> homogeneous_basis;
    std::optional<SumExpression> particular;
    std::vector<std::string> free_constants;
    /// As many independent solutions as the order of the operator.
    bool complete = false;
    std::vector<std::string> notes;
};

/// Reduction of order over hypergeometric solutions of the form c^N * rational.
SolutionSet dalembertian_solve(const RecOperator& op, const SumExpression& rhs);

/// Exact Casoratian test at N = n0, ..., n0 + size - 1.
bool basis_independent(const std::vector<SumExpression>& basis, long n0);

struct InitialValue {
    long n = 0;
    SumExpression value;
};

struct MatchResult {
    SumExpression solution;
    /// Values of c_1, ..., c_m.
    std::vector<SumExpression> constants;
    /// Directions that the initial values leave free.
    std::vector<SumExpression> family;
};

/// Fixes the free constants; throws DomainError when the values are inconsistent.
MatchResult match_initial_values(const SolutionSet& sol, const std::vector<InitialValue>& ivs);

struct RecSolution {
    SolutionSet set;
    MatchResult match;
};

/// Problem REC: all solutions in the class, then the one selected by the initial values.
/// The result is checked with op_apply before it is returned.
RecSolution solve_rec(const RecOperator& op, const SumExpression& rhs, const std::vector<InitialValue>& ivs);

}  // namespace epsum
