#include "epsum/errors.hpp"
#include "epsum/parse.hpp"
#include "epsum/rec_solver.hpp"
#include "epsum/worked_examples.hpp"

#include <gtest/gtest.h>

using namespace epsum;

TEST(PolynomialSolutions, Particular)
{
    // F(N+1) - F(N) = 2N + 1 has F = N^2
    RecOperator op = parse_rec_operator("F(N+1) - F(N)");
    auto sol = polynomial_solutions(op, parse_polynomial("2*N + 1"));
    ASSERT_TRUE(sol.particular.has_value());
    EXPECT_EQ(sol.particular->coefficient(Var::N, 2), Polynomial(1));
    EXPECT_EQ(sol.basis.size(), 1u);
}

TEST(RationalSolutions, UniversalDenominator)
{
    // (N+2) F(N+1) - N F(N) = 0 has F = 1/(N (N+1))
    RecOperator op = parse_rec_operator("(N+2)*F(N+1) - N*F(N)");
    auto sols = rational_solutions(op);
    ASSERT_EQ(sols.size(), 1u);
    RationalFunction f = sols[0];
    EXPECT_TRUE((f.shift(Var::N, 1) * RationalFunction(parse_polynomial("N + 2")) - f * RationalFunction(var_poly(Var::N))).is_zero());
}

TEST(Hypergeometric, FactorialAndGeometric)
{
    RecOperator op = parse_rec_operator("F(N+2) - (N+3)*F(N+1) + 2*(N+1)*F(N)");
    auto q = hypergeometric_solutions(op);
    EXPECT_GE(q.size(), 1u);
    auto g = geometric_solutions(parse_rec_operator("F(N+1) - 3*F(N)"));
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].base, 3);
}

TEST(Antidifference, HarmonicSums)
{
    auto t = antidifference(parse_sum_expression("1/(N+1)"));
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->shift(1) - *t, parse_sum_expression("1/(N+1)"));
    auto u = antidifference(parse_sum_expression("S[1](N+1)/(N+1)"));
    ASSERT_TRUE(u.has_value());
    EXPECT_EQ(u->shift(1) - *u, parse_sum_expression("S[1](N+1)/(N+1)"));
}

TEST(Dalembertian, OrderTwoWithHarmonicSolution)
{
    // (N+2) F(N+2) - (2N+3) F(N+1) + (N+1) F(N) = 0 is solved by 1 and S1(N)
    RecOperator op = parse_rec_operator("(N+2)*F(N+2) - (2*N+3)*F(N+1) + (N+1)*F(N)");
    SolutionSet set = dalembertian_solve(op, SumExpression(Var::N));
    EXPECT_TRUE(set.complete);
    ASSERT_EQ(set.homogeneous_basis.size(), 2u);
    for (const auto& b : set.homogeneous_basis) EXPECT_TRUE(op_apply(op, b).is_zero());
    EXPECT_TRUE(basis_independent(set.homogeneous_basis, 1));
}

TEST(SolveRec, PoleRecurrence)
{
    RecOperator op = fixtures::pole_operator();
    SumExpression closed = fixtures::pole_closed_form();
    RecSolution sol = solve_rec(op, fixtures::pole_rhs(), {{1, closed.evaluate(1)}, {2, closed.evaluate(2)}});
    EXPECT_TRUE(sol.set.complete);
    EXPECT_EQ(sol.match.solution, closed);
    EXPECT_TRUE((op_apply(op, sol.match.solution) - fixtures::pole_rhs()).is_zero());
}

TEST(SolveRec, InconsistentValues)
{
    RecOperator op = parse_rec_operator("F(N+1) - F(N)");
    EXPECT_THROW(solve_rec(op, SumExpression(Var::N),
                           {{1, parse_sum_expression("1")}, {2, parse_sum_expression("2")}}),
                 DomainError);
}
