#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncplush/errors.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/oracle.hpp"
#include "ncplush/sampling.hpp"

using namespace ncplush;
using namespace ncplush::testing;

TEST(Krylov, Fixtures) {
  EXPECT_EQ(krylov_span(F1()).dim(), 1);
  EXPECT_EQ(krylov_span(F2()).dim(), 2);
  EXPECT_EQ(krylov_span(F3()).dim(), 3);
  EXPECT_EQ(krylov_span(F4()).dim(), 2);
}

TEST(Krylov, F4SpanIsFirstTwoCoordinates) {
  const Subspace s = krylov_span(F4());
  EXPECT_LE(s.containment_residual(mat({{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}})), 1e-12);
}

TEST(IsMinimal, Fixtures) {
  EXPECT_TRUE(is_minimal(F1()));
  EXPECT_TRUE(is_minimal(F2()));
  EXPECT_TRUE(is_minimal(F3()));
  EXPECT_FALSE(is_minimal(F4()));
}

TEST(IsMinimal, ZeroCoefficients) {
  const SymmetricRealization one(diag({1.0}), {mat({{0.0}})}, vec({1.0}));
  EXPECT_TRUE(is_minimal(one));
  const SymmetricRealization two(diag({1.0, -1.0}), {Matrix::Zero(2, 2)}, vec({1.0, 0.0}));
  EXPECT_FALSE(is_minimal(two));
}

TEST(Reduce, F4) {
  const ReductionResult res = minimal_reduce_with_report(F4());
  EXPECT_EQ(res.original_d, 3);
  EXPECT_EQ(res.realization.d(), 2);
  EXPECT_TRUE(res.changed);
  EXPECT_TRUE(is_minimal(res.realization));
  EXPECT_LE(res.max_residual, 1e-10);
  Rng rng(5, 6);
  for (int i = 0; i < 20; ++i) {
    const MatrixTuple x = random_ball_tuple(rng, 1, 1 + i % 3, 0.2);
    const Matrix want = eval(F4(), x);
    EXPECT_LE(spectral_norm(eval(res.realization, x) - want), 1e-8 * (1.0 + spectral_norm(want)));
  }
}

TEST(Reduce, MinimalInputUnchanged) {
  for (const SymmetricRealization& r : {F1(), F2(), F3()}) {
    const ReductionResult res = minimal_reduce_with_report(r);
    EXPECT_FALSE(res.changed);
    EXPECT_EQ(res.realization.K(), r.K());
    EXPECT_EQ(res.realization.B(0), r.B(0));
    EXPECT_EQ(res.realization.c(), r.c());
  }
}

TEST(Reduce, ZeroCoefficientsCollapseToConstant) {
  const SymmetricRealization r(diag({1.0, -1.0}), {Matrix::Zero(2, 2)}, vec({2.0, 1.0}));
  const SymmetricRealization m = minimal_reduce(r);
  EXPECT_EQ(m.d(), 1);
  EXPECT_NEAR(m.value_at_zero(), 3.0, 1e-12);
}

TEST(Reduce, DirectSumWithDeadBlock) {
  // F2 padded by a K-negative block that c never reaches.
  const SymmetricRealization r(diag({1.0, -1.0, -1.0}),
                               {mat({{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.3}})},
                               vec({1.0, 1.0, 0.0}));
  const SymmetricRealization m = minimal_reduce(r);
  EXPECT_EQ(m.d(), 2);
  EXPECT_TRUE(is_minimal(m));
}

TEST(Reduce, RandomRealizationsBecomeMinimal) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SymmetricRealization r = gen_random(1 + seed % 4, 1 + seed % 2, seed);
    const ReductionResult res = minimal_reduce_with_report(r);
    EXPECT_TRUE(is_minimal(res.realization)) << "seed " << seed;
    EXPECT_LE(res.realization.d(), r.d());
    EXPECT_LE(res.max_residual, 1e-7) << "seed " << seed;
  }
}

TEST(Reduce, ReducedKIsSignatureOrdered) {
  const SymmetricRealization m = minimal_reduce(F4());
  EXPECT_LE(max_abs(m.K() - diag({1.0, -1.0})), 1e-12);
  for (Index i = 0; i < m.d(); ++i) {
    EXPECT_LE(std::abs(m.c()(i).imag()), 1e-12);
    EXPECT_GE(m.c()(i).real(), -1e-12);
  }
}
