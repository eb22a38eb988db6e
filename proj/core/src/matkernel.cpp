#include "ncplush/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ncplush/errors.hpp"

namespace ncplush {

void Tolerances::validate() const {
  if (!(psd > 0.0) || !(rank > 0.0) || !(verify > 0.0) || !std::isfinite(psd) ||
      !std::isfinite(rank) || !std::isfinite(verify)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be finite and strictly positive");
  }
}

Matrix Subspace::projector() const { return basis * basis.adjoint(); }

double Subspace::containment_residual(const Matrix& columns) const {
  if (columns.cols() == 0) return 0.0;
  Matrix rest = columns - basis * (basis.adjoint() * columns);
  double worst = 0.0;
  for (Index j = 0; j < rest.cols(); ++j) worst = std::max(worst, rest.col(j).norm());
  return worst;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  RealVector s = singular_values(m);
  return s(s.size() - 1);
}

double hermitian_residual(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return spectral_norm(m - m.adjoint()) / (1.0 + spectral_norm(m));
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

namespace {

void fix_phases(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index pivot = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&pivot);
    const Complex entry = vectors(pivot, j);
    const double mag = std::abs(entry);
    if (mag > 0.0) vectors.col(j) *= std::conj(entry) / mag;
  }
}

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square");
  }
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& m, const Tolerances& tol) {
  require_square(m, "hermitian_eig input");
  require_finite(m, "hermitian_eig input");
  if (m.size() == 0) return {RealVector(), Matrix()};
  const double norm = spectral_norm(m);
  const double asym = spectral_norm(m - m.adjoint());
  if (asym > tol.rank * (1.0 + norm)) {
    throw Error(ErrorKind::NotHermitian,
                "symmetry residual " + std::to_string(asym) + " exceeds bound");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  HermitianEig out{es.eigenvalues(), es.eigenvectors()};
  fix_phases(out.vectors);
  return out;
}

PsdResult psd_check(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return {true, 0.0};
  HermitianEig eig = hermitian_eig(m, tol);
  const double min_eig = eig.values(0);
  const double scale = 1.0 + spectral_norm(m);
  return {min_eig >= -tol.psd * scale, min_eig};
}

Matrix pinv(const Matrix& m, const Tolerances& tol) {
  require_finite(m, "pinv input");
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double cutoff = tol.rank * s(0);
  RealVector inv = RealVector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

Subspace orth(const Matrix& columns, const Tolerances& tol) {
  require_finite(columns, "orth input");
  Subspace out;
  out.ambient = columns.rows();
  if (columns.size() == 0) {
    out.basis = Matrix::Zero(columns.rows(), 0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  Index rank = 0;
  if (s(0) > 0.0) {
    const double cutoff = tol.rank * s(0);
    while (rank < s.size() && s(rank) > cutoff) ++rank;
  }
  out.basis = svd.matrixU().leftCols(rank);
  return out;
}

SignatureForm signature_normalize(const Matrix& g, const Tolerances& tol) {
  HermitianEig eig = hermitian_eig(g, tol);
  const Index n = g.rows();
  const double norm = spectral_norm(g);
  for (Index i = 0; i < n; ++i) {
    if (std::abs(eig.values(i)) <= tol.rank * norm || eig.values(i) == 0.0) {
      throw Error(ErrorKind::SingularGram, "Gram matrix is not invertible");
    }
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_partition(order.begin(), order.end(),
                        [&](Index i) { return eig.values(i) > 0.0; });

  SignatureForm out;
  out.w.resize(n, n);
  out.sig = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index i = order[static_cast<std::size_t>(k)];
    const double lambda = eig.values(i);
    out.w.col(k) = eig.vectors.col(i) / std::sqrt(std::abs(lambda));
    if (lambda > 0.0) {
      out.sig(k, k) = 1.0;
      ++out.positive;
    } else {
      out.sig(k, k) = -1.0;
      ++out.negative;
    }
  }
  return out;
}

Matrix signature_matrix(Index a, Index b) {
  Matrix k = Matrix::Zero(a + b, a + b);
  for (Index i = 0; i < a; ++i) k(i, i) = 1.0;
  for (Index i = a; i < a + b; ++i) k(i, i) = -1.0;
  return k;
}

bool is_signature_matrix(const Matrix& k, const Tolerances& tol) {
  if (k.rows() != k.cols() || !k.allFinite()) return false;
  const Index d = k.rows();
  if (d == 0) return true;
  if (spectral_norm(k - k.adjoint()) > tol.verify) return false;
  return spectral_norm(k * k - Matrix::Identity(d, d)) <= tol.verify;
}

}  // namespace ncplush
