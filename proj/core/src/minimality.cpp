#include "ncplush/minimality.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "ncplush/errors.hpp"
#include "ncplush/sampling.hpp"

namespace ncplush {

Subspace krylov_span(const SymmetricRealization& r, const Tolerances& tol) {
  const Index d = r.d();
  std::vector<Matrix> maps;
  for (const Matrix& bj : r.B()) {
    maps.push_back(bj * r.K());
    maps.push_back(bj.adjoint() * r.K());
  }
  Subspace span = orth(Matrix(r.c()), tol);
  for (Index round = 0; round < d; ++round) {
    Matrix cols(d, span.dim() * static_cast<Index>(1 + maps.size()));
    cols.leftCols(span.dim()) = span.basis;
    Index at = span.dim();
    for (const Matrix& m : maps) {
      cols.middleCols(at, span.dim()) = m * span.basis;
      at += span.dim();
    }
    Subspace next = orth(cols, tol);
    if (next.dim() == span.dim()) return span;
    span = std::move(next);
    if (span.dim() == d) return span;
  }
  return span;
}

bool is_minimal(const SymmetricRealization& r, const Tolerances& tol) {
  return krylov_span(r, tol).dim() == r.d();
}

namespace {

// One compress-quotient-resymmetrize pass. Returns nothing when the span is
// already everything.
std::optional<SymmetricRealization> reduce_once(const SymmetricRealization& r,
                                                const Tolerances& tol) {
  const Subspace span = krylov_span(r, tol);
  if (span.dim() == r.d()) return std::nullopt;

  const Matrix& v = span.basis;
  const Matrix gram = hermitian_part(v.adjoint() * r.K() * v);
  const HermitianEig eig = hermitian_eig(gram, tol);
  const double cutoff = tol.rank * std::max(1.0, spectral_norm(gram));
  std::vector<Index> keep;
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i)) > cutoff) keep.push_back(i);
  }
  if (keep.empty()) {
    throw Error(ErrorKind::ReductionFailed, "Gram form vanishes on the reachable span");
  }

  // Kernel of the Gram form is invariant and invisible to the output, so the
  // eigenvector complement inside the span carries the whole function.
  Matrix v2(r.d(), static_cast<Index>(keep.size()));
  RealVector lambda(static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    v2.col(static_cast<Index>(k)) = v * eig.vectors.col(keep[k]);
    lambda(static_cast<Index>(k)) = eig.values(keep[k]);
  }
  const Index m = v2.cols();
  Matrix ginv = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) ginv(i, i) = 1.0 / lambda(i);

  std::vector<Matrix> bprime;
  for (const Matrix& bj : r.B()) bprime.push_back(v2.adjoint() * bj * r.K() * v2 * ginv);
  const Vector cprime = v2.adjoint() * r.c();

  const SignatureForm sf = signature_normalize(ginv, tol);
  std::vector<Matrix> bout;
  for (const Matrix& bj : bprime) bout.push_back(sf.w.adjoint() * bj * sf.w);
  Vector cout = sf.w.adjoint() * cprime;

  // Make c real and nonnegative with a diagonal unitary (commutes with K).
  Matrix phase = Matrix::Identity(m, m);
  for (Index i = 0; i < m; ++i) {
    const double mag = std::abs(cout(i));
    if (mag > 0.0) phase(i, i) = cout(i) / mag;
  }
  for (Matrix& bj : bout) bj = phase.adjoint() * bj * phase;
  cout = phase.adjoint() * cout;
  for (Index i = 0; i < m; ++i) cout(i) = Complex(cout(i).real(), 0.0);

  return SymmetricRealization(sf.sig, std::move(bout), std::move(cout), tol);
}

constexpr int kCheckSamples = 20;
constexpr std::uint64_t kCheckSeed = 0x5eed;

}  // namespace

ReductionResult minimal_reduce_with_report(const SymmetricRealization& r, const Tolerances& tol) {
  tol.validate();
  ReductionResult out{r, r.d(), 0, false, 0.0, 0};
  SymmetricRealization current = r;
  for (;;) {
    if (out.iterations > r.d()) {
      throw Error(ErrorKind::ReductionFailed, "quotient iteration did not settle within d rounds");
    }
    std::optional<SymmetricRealization> next = reduce_once(current, tol);
    if (!next) break;
    current = std::move(*next);
    ++out.iterations;
  }
  if (out.iterations == 0) return out;

  out.changed = true;
  const double norm_sum = coefficient_norm_sum(r);
  const double radius = norm_sum > 0.0 ? std::min(0.1, 0.25 / norm_sum) : 0.1;
  for (int i = 0; i < kCheckSamples; ++i) {
    Rng rng(kCheckSeed, static_cast<std::uint64_t>(i));
    const Index n = rng.uniform_int(1, 3);
    const MatrixTuple x = random_ball_tuple(rng, r.g(), n, radius);
    Matrix before;
    Matrix after;
    try {
      before = eval(r, x, tol);
      after = eval(current, x, tol);
    } catch (const Error& e) {
      throw Error(ErrorKind::ReductionFailed, std::string("check sample left the domain: ") + e.what());
    }
    const double residual = spectral_norm(before - after) / (1.0 + spectral_norm(before));
    out.max_residual = std::max(out.max_residual, residual);
    ++out.samples;
  }
  if (out.max_residual > tol.verify) {
    throw Error(ErrorKind::ReductionFailed,
                "reduced realization disagrees at sampled points (relative residual " +
                    std::to_string(out.max_residual) + ")");
  }
  out.realization = std::move(current);
  return out;
}

SymmetricRealization minimal_reduce(const SymmetricRealization& r, const Tolerances& tol) {
  return minimal_reduce_with_report(r, tol).realization;
}

}  // namespace ncplush
