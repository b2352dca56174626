#include "properties.hpp"

#include <gtest/gtest.h>

using namespace epsum;
using namespace epsum::testing;

// Reduced-size runs of the property suites; the acceptance binary runs them at full size.

namespace {

constexpr std::uint64_t kSeed = 20240611;

void expect_pass(const PropertyResult& r) { EXPECT_TRUE(r.pass()) << r.summary(); }

}  // namespace

TEST(CoreAlgebraProperties, RingAxioms)
{
    Rng rng(kSeed);
    expect_pass(ring_axioms(rng, 100));
}

TEST(CoreAlgebraProperties, GcdDivides)
{
    Rng rng(kSeed + 1);
    expect_pass(gcd_divides(rng, 20));
}

TEST(CoreAlgebraProperties, EvaluationHomomorphism)
{
    Rng rng(kSeed + 2);
    expect_pass(evaluation_homomorphism(rng, 50));
}

TEST(CoreAlgebraProperties, CanonicalForms)
{
    Rng rng(kSeed + 3);
    expect_pass(canonical_forms(rng, 20));
}

TEST(SumExprProperties, Telescoping)
{
    Rng rng(kSeed + 4);
    expect_pass(ssum_telescoping(rng, 10));
}

TEST(SumExprProperties, Stuffle)
{
    Rng rng(kSeed + 5);
    expect_pass(stuffle_numeric(rng, 10));
}

TEST(SumExprProperties, ShiftAndNormalization)
{
    Rng rng(kSeed + 6);
    expect_pass(shift_roundtrip(rng, 20));
    expect_pass(normalization_idempotent(rng, 10));
}

TEST(EpsSeriesProperties, ProductsAndExpLog)
{
    Rng rng(kSeed + 7);
    expect_pass(series_product_numeric(rng, 10));
    expect_pass(exp_log_inverse(rng, 10));
}

TEST(EpsSeriesProperties, Summand) { expect_pass(summand_numeric()); }

TEST(OperatorProperties, ApplyAndSpecialize)
{
    Rng rng(kSeed + 8);
    expect_pass(op_apply_numeric(rng, 10));
    expect_pass(op_specialize_reassembles(rng, 20));
    expect_pass(ode_roundtrip(rng, 5));
}

TEST(TelescopingProperties, Gosper)
{
    Rng rng(kSeed + 9);
    expect_pass(gosper_certificates(rng, 30));
}

TEST(TelescopingProperties, Fibers) { expect_pass(zeilberger_fibers()); }

TEST(RecSolverProperties, Solutions)
{
    Rng rng(kSeed + 10);
    expect_pass(rec_solutions(rng, 3));
}

TEST(EpsSolverProperties, Bootstrap)
{
    Rng rng(kSeed + 11);
    expect_pass(bootstrap_random(rng, 2));
    expect_pass(bootstrap_numeric());
}

TEST(CoupledProperties, UncouplingAndClusters)
{
    Rng rng(kSeed + 12);
    expect_pass(uncoupling_fibers(rng, 4, 20));
    expect_pass(cluster_topological(rng, 20));
}

TEST(CoupledProperties, Pipelines)
{
    expect_pass(coupled_residuals_zero());
    expect_pass(ode_pipeline());
}
