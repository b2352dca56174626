#include "epsum/eps_solver.hpp"
#include "epsum/errors.hpp"
#include "epsum/parse.hpp"
#include "epsum/worked_examples.hpp"

#include <gtest/gtest.h>

using namespace epsum;

TEST(Normalize, DividesCommonEpsPower)
{
    RecOperator op = parse_rec_operator("ep*F(N+1) - ep^2*F(N)");
    NormalizedRecurrence n = normalize_leading(op, parse_series("ep^-1 + O[ep]^1"));
    EXPECT_EQ(n.eps_shift, 1);
    EXPECT_EQ(n.op, parse_rec_operator("F(N+1) - ep*F(N)"));
    EXPECT_EQ(n.lambda, -2);
}

TEST(Bootstrap, FirstOrderExample)
{
    // (N+1) F(N+1) - (N+1+ep) F(N) = 0, F(1) = 1 + ep: F = prod (1 + ep/i)
    RecOperator op = parse_rec_operator("(N+1)*F(N+1) - (N+1+ep)*F(N)");
    BootstrapResult b = bootstrap_expansion(op, EpsSeries::zero(3), {parse_series("1 + ep + O[ep]^3")}, 3);
    ASSERT_TRUE(b.complete) << b.failure;
    EXPECT_EQ(b.series.coefficient(0), parse_sum_expression("1"));
    EXPECT_EQ(b.series.coefficient(1), parse_sum_expression("S[1](N)"));
    EXPECT_EQ(b.series.coefficient(2), parse_sum_expression("S[1,1](N) - S[2](N)"));
    EXPECT_TRUE(bootstrap_certify(op, EpsSeries::zero(3), b.series));
}

TEST(Bootstrap, ExpansionFixture)
{
    RecOperator op = fixtures::expansion_operator();
    BootstrapResult b = bootstrap_expansion(op, fixtures::expansion_rhs(), fixtures::expansion_ivs(), 3);
    ASSERT_TRUE(b.complete) << b.failure;
    EXPECT_EQ(b.series, fixtures::expansion());
    EXPECT_TRUE(bootstrap_certify(op, fixtures::expansion_rhs(), b.series));
}

TEST(Bootstrap, MissingOrders)
{
    RecOperator op = fixtures::expansion_operator();
    EXPECT_THROW(bootstrap_expansion(op, fixtures::expansion_rhs(), fixtures::expansion_ivs(), 6), TruncationError);
}
