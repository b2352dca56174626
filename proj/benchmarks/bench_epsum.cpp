#include "epsum/coupled.hpp"
#include "epsum/eps_solver.hpp"
#include "epsum/gamma.hpp"
#include "epsum/parse.hpp"
#include "epsum/telescoping.hpp"
#include "epsum/worked_examples.hpp"

#include <benchmark/benchmark.h>

using namespace epsum;

static void BM_PolynomialGcd(benchmark::State& state)
{
    Polynomial f = parse_polynomial("2*N^2*ep - 3*k*N + ep^2 + 5");
    Polynomial a = f * parse_polynomial("N^3*ep - k^2*ep + 7*N + 1");
    Polynomial b = f * parse_polynomial("k*N^2 + 4*ep^3 - N*ep + 2");
    for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(BM_PolynomialGcd)->Unit(benchmark::kMicrosecond);

static void BM_Stuffle(benchmark::State& state)
{
    SumExpression a = parse_sum_expression("S[1,2,-1](N)"), b = parse_sum_expression("S[-2,1](N) + S[3](N)");
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Stuffle)->Unit(benchmark::kMicrosecond);

static void BM_SummandExpand(benchmark::State& state)
{
    HyperTerm t = fixtures::summand();
    for (auto _ : state) benchmark::DoNotOptimize(summand_expand(t, Var::k, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SummandExpand)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Zeilberger(benchmark::State& state)
{
    HyperTerm t = fixtures::summand();
    for (auto _ : state) benchmark::DoNotOptimize(zeilberger(t, 2));
}
BENCHMARK(BM_Zeilberger)->Unit(benchmark::kMillisecond);

static void BM_SolveRec(benchmark::State& state)
{
    RecOperator op = fixtures::pole_operator();
    SumExpression rhs = fixtures::pole_rhs(), closed = fixtures::pole_closed_form();
    std::vector<InitialValue> ivs{{1, closed.evaluate(1)}, {2, closed.evaluate(2)}};
    for (auto _ : state) benchmark::DoNotOptimize(solve_rec(op, rhs, ivs));
}
BENCHMARK(BM_SolveRec)->Unit(benchmark::kMillisecond);

static void BM_Bootstrap(benchmark::State& state)
{
    RecOperator op = fixtures::expansion_operator();
    EpsSeries rhs = fixtures::expansion_rhs();
    auto ivs = fixtures::expansion_ivs();
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_expansion(op, rhs, ivs, 3));
}
BENCHMARK(BM_Bootstrap)->Unit(benchmark::kMillisecond);

static void BM_UncoupleLadder(benchmark::State& state)
{
    CoupledSystem sys = fixtures::ladder_recurrences();
    for (auto _ : state) benchmark::DoNotOptimize(uncouple(sys, 0));
}
BENCHMARK(BM_UncoupleLadder)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
