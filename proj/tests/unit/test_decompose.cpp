#include <functional>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ncplush/decompose.hpp"
#include "ncplush/errors.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/sampling.hpp"

using namespace ncplush;
using namespace ncplush::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(IndependentReduce, DependentPair) {
  const Matrix b1 = mat({{0.0, 1.0}, {0.0, 0.0}});
  const SymmetricRealization r(diag({1.0, -1.0}), {b1, 2.0 * b1}, vec({1.0, 1.0}));
  const IndependentReduction red = independent_reduce(r);
  EXPECT_EQ(red.rhat.g(), 1);
  EXPECT_EQ(red.chosen, std::vector<Index>{0});
  EXPECT_LE(max_abs(red.M - mat({{1.0}, {2.0}})), 1e-12);
}

TEST(IndependentReduce, ZeroCoefficients) {
  const SymmetricRealization r(diag({1.0}), {mat({{0.0}})}, vec({1.0}));
  EXPECT_EQ(kind_of([&] { independent_reduce(r); }), ErrorKind::ZeroCoefficients);
}

TEST(AlgebraBasis, Examples) {
  EXPECT_EQ(algebra_basis({mat({{0.0, 1.0}, {0.0, 0.0}})}).basis.size(), 1u);
  EXPECT_EQ(algebra_basis({Matrix::Identity(2, 2)}).basis.size(), 1u);
  const AlgebraBasis full =
      algebra_basis({mat({{0.0, 1.0}, {0.0, 0.0}}), mat({{0.0, 0.0}, {1.0, 0.0}})});
  EXPECT_EQ(full.basis.size(), 4u);
  for (std::size_t i = 0; i < full.basis.size(); ++i) {
    Matrix prod = Matrix::Identity(2, 2);
    const std::vector<Matrix> gens{mat({{0.0, 1.0}, {0.0, 0.0}}), mat({{0.0, 0.0}, {1.0, 0.0}})};
    for (const Letter& l : full.words[i].letters) prod = prod * gens[static_cast<std::size_t>(l.index)];
    EXPECT_LE(max_abs(prod - full.basis[i]), 1e-15);
  }
}

TEST(StructureTensor, Examples) {
  const StructureTensor nil = structure_tensor({mat({{0.0, 1.0}, {0.0, 0.0}})});
  ASSERT_EQ(nil.xi.size(), 1u);
  EXPECT_EQ(max_abs(nil.xi[0]), 0.0);
  const StructureTensor id = structure_tensor({Matrix::Identity(2, 2)});
  EXPECT_NEAR(std::abs(id.xi[0](0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_LE(id.residual, 1e-14);
}

TEST(StructureTensor, RebuildsProducts) {
  const AlgebraBasis ab =
      algebra_basis({mat({{0.0, 1.0}, {0.0, 0.0}}), mat({{0.0, 0.0}, {1.0, 0.0}})});
  const StructureTensor st = structure_tensor(ab.basis);
  const std::size_t h = ab.basis.size();
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t k = 0; k < h; ++k) {
      Matrix sum = Matrix::Zero(2, 2);
      for (std::size_t s = 0; s < h; ++s) {
        sum += st.xi[k](static_cast<Index>(j), static_cast<Index>(s)) * ab.basis[s];
      }
      EXPECT_LE(max_abs(ab.basis[j] * ab.basis[k] - sum), 1e-12);
    }
  }
}

TEST(StructureTensor, NotClosed) {
  const Matrix e12 = mat({{0.0, 1.0}, {0.0, 0.0}});
  const Matrix e21 = mat({{0.0, 0.0}, {1.0, 0.0}});
  EXPECT_EQ(kind_of([&] { structure_tensor({e12, e21}); }), ErrorKind::NotClosed);
}

TEST(Signature, Shape) {
  EXPECT_LE(max_abs(decomposition_signature(1) - diag({1.0, 1.0, 1.0, -1.0})), 0.0);
}

TEST(Decompose, F3) {
  const DecompositionResult dec = decompose(F3());
  EXPECT_FALSE(dec.trivial);
  EXPECT_EQ(dec.a, 2);
  EXPECT_EQ(dec.b, 1);
  EXPECT_EQ(dec.q.h, 2);
  EXPECT_LE(max_abs(dec.f.c() - vec({0.0, 0.0, 0.0, 0.0, 1.0, 0.0})), 1e-12);
  EXPECT_LE(max_abs(dec.psi.topRows(2) - mat({{1.25, 0.0, 0.75}, {0.0, 1.0, 0.0}})), 1e-12);
  EXPECT_LE(static_cast<Index>(dec.q.h), (dec.a + dec.b) * (dec.a + dec.b));
}

TEST(Decompose, F3Verify) {
  const DecompositionResult dec = decompose(F3());
  const VerifyReport rep = verify_decomposition(F3(), dec, {50, 3, 0.02, 1});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.samples, 50);
  EXPECT_LE(rep.max_residual, 1e-6);
  EXPECT_LE(rep.psi_residual, 1e-10);
  EXPECT_LE(rep.pb_residual_a, 1e-10);
  EXPECT_LE(rep.pb_residual_b, 1e-10);
  EXPECT_LE(rep.closure_residual, 1e-10);
  EXPECT_TRUE(rep.f_convex);
  EXPECT_TRUE(rep.h_bound);
}

TEST(Decompose, NilpotentF5) {
  const DecompositionResult dec = decompose(F5());
  EXPECT_EQ(dec.q.h, 1);
  EXPECT_EQ(max_abs(dec.q.xi[0]), 0.0);
  EXPECT_TRUE(verify_decomposition(F5(), dec, {30, 3, 0.0, 2}).passed);
}

TEST(Decompose, TrivialWhenKPositive) {
  const DecompositionResult dec = decompose(F1());
  EXPECT_TRUE(dec.trivial);
  EXPECT_TRUE(verify_decomposition(F1(), dec, {20, 2, 0.0, 3}).passed);
}

TEST(Decompose, Errors) {
  EXPECT_EQ(kind_of([] { decompose(F2()); }), ErrorKind::NotPlush);
  EXPECT_EQ(kind_of([] { decompose(F4()); }), ErrorKind::MinimalityRequired);
}

TEST(Decompose, RandomPlush) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const SymmetricRealization r =
        minimal_reduce(gen_plush(1 + seed % 3, 1 + seed % 2, 1 + (seed / 2) % 2, seed));
    const DecompositionResult dec = decompose(r);
    const VerifyReport rep = verify_decomposition(r, dec, {20, 3, 0.0, seed});
    EXPECT_TRUE(rep.passed) << "seed " << seed << " residual " << rep.max_residual;
  }
}

TEST(EvalQ, GeometricSeries) {
  ConvexotonicMap q;
  q.h = 1;
  q.g_active = 1;
  q.xi = {mat({{1.0}})};
  q.words = {Word{{Letter{0, false}}}};
  const MatrixTuple out = eval_q(q, mat({{1.0}}), scalars({0.5}));
  EXPECT_NEAR(std::abs(out[0](0, 0) - 1.0), 0.0, 1e-14);
  q.xi = {mat({{0.0}})};
  EXPECT_NEAR(std::abs(eval_q(q, mat({{1.0}}), scalars({0.5}))[0](0, 0) - 0.5), 0.0, 1e-15);
}

TEST(EvalQ, SingularPencil) {
  ConvexotonicMap q{1, 1, {mat({{1.0}})}, {Word{{Letter{0, false}}}}};
  EXPECT_EQ(kind_of([&] { eval_q(q, mat({{1.0}}), scalars({1.0})); }), ErrorKind::SingularPencil);
}

TEST(Json, RoundTrip) {
  const DecompositionResult dec = decompose(F3());
  const Json j = decomposition_to_json(dec);
  const DecompositionResult back = decomposition_from_json(parse_json(j.dump()));
  EXPECT_EQ(decomposition_to_json(back), j);
  EXPECT_TRUE(verify_decomposition(F3(), back, {10, 2, 0.02, 4}).passed);
}

TEST(Json, RejectsUnknownKey) {
  Json j = decomposition_to_json(decompose(F3()));
  j["extra"] = 1;
  EXPECT_EQ(kind_of([&] { decomposition_from_json(j); }), ErrorKind::ParseError);
}
