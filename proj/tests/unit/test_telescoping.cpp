#include "epsum/errors.hpp"
#include "epsum/parse.hpp"
#include "epsum/telescoping.hpp"
#include "epsum/worked_examples.hpp"

#include <gtest/gtest.h>

using namespace epsum;

TEST(Gosper, SummableTerm)
{
    // sum k * k! telescopes to (k+1)! - 1
    HyperTerm t = parse_hyper_term("k*Factorial[k]");
    auto r = gosper(t);
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE(gosper_verify(t.ratio(Var::k), *r));
}

TEST(Gosper, NonSummableTerm)
{
    EXPECT_FALSE(gosper(parse_hyper_term("1/k")).has_value());
    EXPECT_FALSE(gosper(parse_hyper_term("Binomial[N,k]")).has_value());
}

TEST(Gosper, FormConditions)
{
    RationalFunction ratio = parse_hyper_term("Binomial[N,k]^2").ratio(Var::k);
    GosperForm g = gosper_form(ratio);
    EXPECT_EQ(RationalFunction(g.a, g.b) * RationalFunction(g.c.shift(Var::k, 1), g.c), ratio);
}

TEST(Zeilberger, BinomialSum)
{
    Telescoper z = zeilberger(parse_hyper_term("Binomial[N,k]"), 2);
    EXPECT_EQ(z.op.order(), 1);
    EXPECT_TRUE(certificate_verify(z.op, parse_hyper_term("Binomial[N,k]"), z.certificate));
    // proportional to F(N+1) - 2 F(N)
    EXPECT_EQ(z.op.coeff(1) * Rational(-2), z.op.coeff(0));
}

TEST(Zeilberger, CentralBinomialSquares)
{
    HyperTerm t = parse_hyper_term("Binomial[N,k]^2");
    Telescoper z = zeilberger(t, 2);
    EXPECT_EQ(z.op.order(), 1);
    EXPECT_TRUE(certificate_verify(z.op, t, z.certificate));
}

TEST(Zeilberger, SummandGivesPrintedOperator)
{
    HyperTerm t = fixtures::summand();
    Telescoper z = zeilberger(t, 2);
    EXPECT_EQ(z.op.order(), 2);
    EXPECT_TRUE(certificate_verify(z.op, t, z.certificate));
    RecOperator a = z.op.trimmed(), b = fixtures::expansion_operator();
    RationalFunction f = RationalFunction(a.coeff(0)) / RationalFunction(b.coeff(0));
    for (int i = 0; i <= 2; ++i) EXPECT_EQ(RationalFunction(a.coeff(i)), f * RationalFunction(b.coeff(i))) << i;
}

TEST(Zeilberger, OrderBoundExhausted)
{
    EXPECT_THROW(zeilberger(fixtures::summand(), 1), NotFoundError);
}

TEST(Zeilberger, DefiniteSumIdentity)
{
    HyperTerm t = parse_hyper_term("Binomial[N,k]*(k+ep)");
    Telescoper z = zeilberger(t, 2);
    Rational eps = make_rational(1, 5);
    auto tv = [&](long n, long k) -> Rational {
        if (k < 0 || k > n) return 0;
        Rational b = 1;
        for (long i = 1; i <= k; ++i) b = b * (n - k + i) / i;
        return b * (k + eps);
    };
    for (long n = 1; n <= 8; ++n) {
        auto sum = [&](long m) {
            Rational s = 0;
            for (long k = 0; k <= m; ++k) s += tv(m, k);
            return s;
        };
        EXPECT_EQ(op_apply_values(z.op, sum, n, eps), definite_sum_rhs(z, tv, n, 0, eps)) << n;
    }
}
