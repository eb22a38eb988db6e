#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncplush/calculus.hpp"
#include "ncplush/certify.hpp"
#include "ncplush/errors.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/oracle.hpp"

using namespace ncplush;
using namespace ncplush::testing;

TEST(SampleDomain, Validate) {
  EXPECT_NO_THROW(SampleDomain{}.validate());
  EXPECT_NO_THROW((SampleDomain{2, 0.1, 0, 0}.validate()));
  EXPECT_THROW((SampleDomain{0, 0.1, 10, 0}.validate()), Error);
  EXPECT_THROW((SampleDomain{2, 0.0, 10, 0}.validate()), Error);
  EXPECT_THROW((SampleDomain{2, 0.1, -1, 0}.validate()), Error);
}

TEST(SampleHessian, F1NonnegativeAndCounts) {
  const SampleReport rep = sample_hessian(F1(), {3, 0.3, 50, 1});
  EXPECT_EQ(rep.samples, 50);
  EXPECT_EQ(rep.probes, 1);
  EXPECT_GE(rep.min_eig, -1e-12);
}

TEST(SampleHessian, F2ProbeFindsMinusOne) {
  const SampleReport rep = sample_hessian(F2(), {2, 0.1, 10, 0});
  EXPECT_LE(rep.min_eig, -1.0 + 1e-9);
}

TEST(SampleHessian, ZeroCoefficients) {
  const SymmetricRealization r(diag({1.0}), {mat({{0.0}})}, vec({1.0}));
  const SampleReport rep = sample_hessian(r, {3, 0.5, 20, 0});
  EXPECT_EQ(rep.min_eig, 0.0);
}

TEST(SampleHessian, Deterministic) {
  const SymmetricRealization r = gen_random(3, 2, 4);
  const SampleReport a = sample_hessian(r, {3, 0.05, 30, 8});
  const SampleReport b = sample_hessian(r, {3, 0.05, 30, 8});
  EXPECT_EQ(a.min_eig, b.min_eig);
  EXPECT_EQ(a.argmin, b.argmin);
}

TEST(FindWitness, F2) {
  const auto w = find_witness(F2(), {});
  ASSERT_TRUE(w.has_value());
  EXPECT_NEAR(w->hess_eig, -1.0, 1e-6);
  const Matrix hess = symmetrize(complex_hessian_eval(F2(), w->X, w->H)).value;
  const Vector hv = hess * w->v;
  EXPECT_LE((hv - w->hess_eig * w->v).norm(), 1e-9);
  EXPECT_NEAR(w->v.norm(), 1.0, 1e-12);
}

TEST(FindWitness, PlushHasNone) {
  EXPECT_FALSE(find_witness(F3(), {}).has_value());
  EXPECT_FALSE(find_witness(F1(), {}).has_value());
}

TEST(FindWitness, RequiresMinimal) {
  try {
    find_witness(F4(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MinimalityRequired);
  }
}

TEST(FindWitness, RandomFailuresAreGenuine) {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SymmetricRealization r = minimal_reduce(gen_random(1 + seed % 4, 1 + seed % 2, seed));
    const auto w = find_witness(r, {});
    const bool plush = certify_plush(r, {}, {false, {}}).verdict == Verdict::CertifiedTrue;
    EXPECT_EQ(plush, !w.has_value()) << "seed " << seed;
    if (!w) continue;
    ++found;
    const Matrix hess = symmetrize(complex_hessian_eval(r, w->X, w->H)).value;
    EXPECT_LE(hermitian_eig(hess).values(0), -1e-9 * (1.0 + spectral_norm(hess))) << "seed " << seed;
    EXPECT_LT(w->X.column_norm(), 1.0);
  }
  EXPECT_GT(found, 0);
}

TEST(PlushFromAngular, ReproducesF3) {
  const SymmetricRealization r =
      plush_from_angular(mat({{0.6, 0.0}}), mat({{0.0, 0.6}}), {diag({1.0, 1.0})}, vec({1.0, 1.0, 1.0}));
  EXPECT_LE(max_abs(r.K() - F3().K()), 0.0);
  // [I; rho] E [I rho_*^*] with rho = [0.6 0], rho_* = [0 0.6].
  EXPECT_LE(max_abs(r.B(0) - mat({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.6}, {0.6, 0.0, 0.0}})), 1e-15);
}

TEST(GenPlush, CertifiesAndIsDeterministic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SymmetricRealization r = gen_plush(1 + seed % 3, 1 + seed % 2, 1 + seed % 2, seed);
    const SymmetricRealization again = gen_plush(1 + seed % 3, 1 + seed % 2, 1 + seed % 2, seed);
    EXPECT_EQ(r.B(0), again.B(0));
    const SymmetricRealization m = minimal_reduce(r);
    EXPECT_EQ(certify_plush(m, {}, {false, {}}).verdict, Verdict::CertifiedTrue) << seed;
  }
}

TEST(GenRandom, Shapes) {
  const SymmetricRealization r = gen_random(4, 2, 3);
  EXPECT_EQ(r.d(), 4);
  EXPECT_EQ(r.g(), 2);
  EXPECT_NEAR(r.c().norm(), 1.0, 1e-12);
  EXPECT_TRUE(is_signature_matrix(r.K()));
}
