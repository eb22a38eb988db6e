#pragma once

// Dense complex linear algebra shared by every other module. All routines
// are pure functions of their arguments.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace ncplush {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical slack used to render exact statements (PSD, rank, identities).
/// All three are relative and must be strictly positive.
struct Tolerances {
  double psd = 1e-9;
  double rank = 1e-10;
  double verify = 1e-7;

  void validate() const;
};

/// A subspace of C^ambient given by an orthonormal column basis.
struct Subspace {
  Index ambient = 0;
  Matrix basis;  // ambient x dim, orthonormal columns

  Index dim() const { return basis.cols(); }
  /// Orthogonal projection onto the subspace (ambient x ambient).
  Matrix projector() const;
  /// Largest distance ||(I - P) x|| over the given columns.
  double containment_residual(const Matrix& columns) const;
};

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

struct PsdResult {
  bool is_psd = false;
  double min_eig = 0.0;
};

struct SignatureForm {
  Matrix w;    // w^* g w == sig
  Matrix sig;  // diag(I_a, -I_b)
  Index positive = 0;
  Index negative = 0;
};

Matrix kron(const Matrix& a, const Matrix& b);

double spectral_norm(const Matrix& m);
RealVector singular_values(const Matrix& m);
double min_singular_value(const Matrix& m);

/// ||m - m^*|| / (1 + ||m||).
double hermitian_residual(const Matrix& m);
/// (m + m^*) / 2.
Matrix hermitian_part(const Matrix& m);

/// Throws InvalidArgument when any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

/// Eigendecomposition of a Hermitian matrix. Eigenvector phases are fixed so
/// the largest-magnitude entry of each column is real and positive.
HermitianEig hermitian_eig(const Matrix& m, const Tolerances& tol = {});

/// min_eig >= -psd * (1 + ||m||) decides the flag; min_eig is the raw value.
PsdResult psd_check(const Matrix& m, const Tolerances& tol = {});

/// Moore-Penrose pseudoinverse with singular values below rank * sigma_max
/// treated as zero.
Matrix pinv(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis of the column space; rank by rank * sigma_max cutoff.
Subspace orth(const Matrix& columns, const Tolerances& tol = {});

/// Congruence normal form of an invertible Hermitian matrix: g = U L U^*,
/// w = U |L|^{-1/2}, columns permuted so the positive part comes first.
SignatureForm signature_normalize(const Matrix& g, const Tolerances& tol = {});

/// diag(I_a, -I_b).
Matrix signature_matrix(Index a, Index b);

/// True when k is Hermitian and k^2 = I to the verify tolerance.
bool is_signature_matrix(const Matrix& k, const Tolerances& tol = {});

}  // namespace ncplush
