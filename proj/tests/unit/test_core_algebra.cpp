#include "epsum/errors.hpp"
#include "epsum/linalg.hpp"
#include "epsum/parse.hpp"
#include "epsum/polynomial.hpp"
#include "epsum/rational_function.hpp"
#include "epsum/univariate.hpp"

#include <gtest/gtest.h>

using namespace epsum;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }
RationalFunction R(const char* s) { return parse_rational_function(s); }

}  // namespace

TEST(Polynomial, ArithmeticAndPrinting)
{
    Polynomial a = P("N + 1"), b = P("N - 1");
    EXPECT_EQ(a * b, P("N^2 - 1"));
    EXPECT_EQ((a + b).to_string(), "2*N");
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a.pow(3), P("N^3 + 3*N^2 + 3*N + 1"));
    EXPECT_EQ(P("k*N + ep").degree(Var::N), 1);
    EXPECT_EQ(P("k^2*N + ep^3").total_degree(), 3);
}

TEST(Polynomial, SubstituteShiftDerivative)
{
    Polynomial p = P("N^2 + ep*N");
    EXPECT_EQ(p.shift(Var::N, 1), P("N^2 + 2*N + 1 + ep*N + ep"));
    EXPECT_EQ(p.substitute(Var::N, P("k + 1")), P("k^2 + 2*k + 1 + ep*k + ep"));
    EXPECT_EQ(p.derivative(Var::N), P("2*N + ep"));
    std::array<Rational, kVarCount> pt{};
    pt[static_cast<std::size_t>(Var::N)] = 3;
    pt[static_cast<std::size_t>(Var::ep)] = make_rational(1, 2);
    EXPECT_EQ(p.evaluate_all(pt), make_rational(21, 2));
}

TEST(Polynomial, ExactDivisionAndGcd)
{
    Polynomial f = P("N + ep + 2"), a = P("N^2 - ep") * f, b = P("3*N*ep + 1") * f;
    auto q = divide_exact(a, f);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, P("N^2 - ep"));
    EXPECT_FALSE(divide_exact(P("N^2 + 1"), P("N + 1")).has_value());
    EXPECT_EQ(gcd(a, b), f);
    EXPECT_EQ(gcd(P("6*N + 6"), P("4*N + 4")), P("N + 1"));
    EXPECT_EQ(gcd(P("N + 1"), P("N + 2")), Polynomial(1));
}

TEST(Polynomial, GcdOfLargerMultivariateInputs)
{
    Polynomial f = P("2*N^2*ep - 3*k*N + ep^2 + 5");
    Polynomial a = f * P("N^3*ep - k^2*ep + 7*N + 1"), b = f * P("k*N^2 + 4*ep^3 - N*ep + 2");
    Polynomial g = gcd(a, b);
    EXPECT_EQ(g, f.monic());
    EXPECT_TRUE(divide_exact(a, g).has_value());
    EXPECT_TRUE(divide_exact(b, g).has_value());
}

TEST(Polynomial, ContentAndPrimitive)
{
    Polynomial p = P("6/5*N^2 + 9/5*N");
    EXPECT_EQ(p.integer_primitive(), P("2*N^2 + 3*N"));
    EXPECT_EQ(p.rational_content(), make_rational(3, 5));
    EXPECT_EQ(content_in(P("ep*N^2 + ep^2*N"), Var::N), P("ep"));
}

TEST(RationalFunction, NormalFormIsCanonical)
{
    RationalFunction f = R("(N^2 - 1)/(2*N + 2)");
    EXPECT_EQ(f, R("(N - 1)/2"));
    EXPECT_TRUE(f.is_polynomial());
    RationalFunction g = R("1/(N+1) - 1/(N+2)");
    EXPECT_EQ(g, R("1/((N+1)*(N+2))"));
    EXPECT_EQ(g.den().leading_coefficient(), 1);
    EXPECT_TRUE((g - g).is_zero());
}

TEST(RationalFunction, EvaluationAndPoles)
{
    RationalFunction f = R("(ep + N)/(N - 2)");
    EXPECT_EQ(f.evaluate(Var::N, 3), R("ep + 3"));
    EXPECT_THROW(f.evaluate(Var::N, 2), PoleError);
    EXPECT_THROW(RationalFunction(P("N"), Polynomial()), PoleError);
    EXPECT_EQ(f.shift(Var::N, 1), R("(ep + N + 1)/(N - 1)"));
    EXPECT_EQ(R("N/(N+1)").pow(-2), R("(N+1)^2/N^2"));
}

TEST(Parse, ReportsPosition)
{
    try {
        parse_polynomial("N + * 2");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.column(), 5);
    }
    EXPECT_THROW(parse_polynomial("1/N"), Error);
}

TEST(Univariate, RootsAndResultant)
{
    UPoly p = to_upoly(P("N^3 - 2*N^2 - N + 2"), Var::N);
    auto roots = integer_roots(p);
    std::sort(roots.begin(), roots.end());
    ASSERT_EQ(roots.size(), 3u);
    EXPECT_EQ(roots[0], -1);
    EXPECT_EQ(roots[2], 2);
    EXPECT_EQ(resultant(to_upoly(P("N - 1"), Var::N), to_upoly(P("N - 3"), Var::N)), -2);
    auto d = shift_distance(to_upoly(P("N + 5"), Var::N), to_upoly(P("N + 2"), Var::N));
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(abs(*d), 3);
}

TEST(Univariate, SquarefreeAndInterpolation)
{
    auto sf = squarefree_factorization(to_upoly(P("(N+1)^2*(N+2)"), Var::N));
    int total = 0;
    for (const auto& [f, m] : sf) total += degree(f) * m;
    EXPECT_EQ(total, 3);
    UPoly q = interpolate({0, 1, 2}, {1, 2, 5});
    EXPECT_EQ(from_upoly(q, Var::N), P("N^2 + 1"));
}

TEST(LinearAlgebra, SolveAndNullspace)
{
    Matrix<Rational> a = {{1, 2}, {3, 4}};
    auto x = solve_linear(a, std::vector<Rational>{5, 6}, Rational(0));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0], -4);
    EXPECT_EQ((*x)[1], make_rational(9, 2));
    Matrix<RationalFunction> m = {{R("N"), R("N^2")}, {R("1"), R("N")}};
    EXPECT_EQ(rank(m), 1u);
    auto ns = nullspace(m, 2);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_TRUE((m[0][0] * ns[0][0] + m[0][1] * ns[0][1]).is_zero());
}
