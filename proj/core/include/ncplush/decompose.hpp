#pragma once

// r = f o q for plush r: f is a convex symmetric realization in h
// intermediate variables, q an analytic convexotonic map
//
//   b(y) = y (I - Lambda_Xi(y))^{-1},   q(x) = b(M^T x, 0, .., 0).

#include <cstdint>
#include <vector>

#include "ncplush/certify.hpp"
#include "ncplush/json_codec.hpp"

namespace ncplush {

struct ConvexotonicMap {
  Index h = 0;
  Index g_active = 0;
  std::vector<Matrix> xi;   // h matrices, each h x h
  std::vector<Word> words;  // words[s] = x_s for s < g_active
};

struct DecompositionResult {
  /// Normalized, independent-coefficient realization the pipeline ran on;
  /// r(X) = working(M^T X).
  SymmetricRealization working;
  Matrix M;  // g x k
  std::vector<Matrix> basis;
  ConvexotonicMap q;
  Matrix psi;       // (2a+2) x (a+b)
  Matrix psi_star;  // (a+b) x (2a+2)
  SymmetricRealization f;
  Index a = 0;
  Index b = 0;
  double s = 0.0;
  double t = 0.0;
  bool trivial = false;
};

struct IndependentReduction {
  SymmetricRealization rhat;
  Matrix M;  // B_j = sum_l M(j, l) Bhat_l
  std::vector<Index> chosen;
};

/// Keeps the first linearly independent B_j. Throws ZeroCoefficients.
IndependentReduction independent_reduce(const SymmetricRealization& r, const Tolerances& tol = {});

struct AlgebraBasis {
  std::vector<Word> words;
  std::vector<Matrix> basis;
};

/// Breadth-first closure of {KB_j} under left multiplication by the KB_j.
AlgebraBasis algebra_basis(const std::vector<Matrix>& kb, const Tolerances& tol = {});

struct StructureTensor {
  std::vector<Matrix> xi;
  /// max ||C_j C_k - sum_s (Xi_k)_{js} C_s|| / (||C_j|| ||C_k||).
  double residual = 0.0;
};

/// Throws NotClosed when some product leaves the span.
StructureTensor structure_tensor(const std::vector<Matrix>& basis, const Tolerances& tol = {});

struct PsiPair {
  Matrix psi;
  Matrix psi_star;
};

PsiPair build_psi(Index a, Index b, const Matrix& rho, const Matrix& rho_star, const Matrix& ddag,
                  const Matrix& dstar_dag, const Vector& c);

/// J = I_a (+) I_a (+) 1 (+) -1.
Matrix decomposition_signature(Index a);

/// Throws MinimalityRequired, NotPlush.
DecompositionResult decompose(const SymmetricRealization& r, const Tolerances& tol = {});

/// The h components of q(X).
MatrixTuple eval_q(const ConvexotonicMap& q, const Matrix& m, const MatrixTuple& x,
                   const Tolerances& tol = {});

struct VerifyOptions {
  int n_samples = 50;
  Index n_max = 3;
  double radius = 0.0;  // <= 0 selects min(plush_radius, 0.05)
  std::uint64_t seed = 0;
};

struct VerifyReport {
  int samples = 0;
  double radius = 0.0;
  double max_residual = 0.0;  // ||r - f o q|| / (1 + ||r||)
  int worst_sample = -1;
  MatrixTuple worst_x;
  double psi_residual = 0.0;     // ||psi_* J psi||
  double pb_residual_a = 0.0;    // B_l^* K [psi^* J psi] K B_j = B_l^* K B_j
  double pb_residual_b = 0.0;    // B_l K [psi_* J psi_*^*] K B_j^* = B_l K B_j^*
  double closure_residual = 0.0;
  double pencil_residual = 0.0;  // Lambda_A(q(X)) against psi Omega(X) K psi_*
  double extension_residual = 0.0;  // P B_j P_* = B_j
  double f_min_eig = 0.0;        // J-form on ran A + ran A^*
  bool f_convex = false;
  bool h_bound = false;
  bool passed = false;
};

/// Samples X in the column ball and compares r(X) with f(q(X)); also
/// rechecks the algebraic identities of the construction. Failures are
/// reported through `passed`, never thrown.
VerifyReport verify_decomposition(const SymmetricRealization& r, const DecompositionResult& res,
                                  const VerifyOptions& opts = {}, const Tolerances& tol = {});

Json decomposition_to_json(const DecompositionResult& res);
DecompositionResult decomposition_from_json(const Json& j, const Tolerances& tol = {});

}  // namespace ncplush
