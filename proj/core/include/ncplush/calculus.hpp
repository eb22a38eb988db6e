#pragma once

// Derivatives of a symmetric realization at a point X in direction H, all
// written in terms of Delta(X) and Lambda_B(H) = sum_j B_j (x) H_j.

#include <vector>

#include "ncplush/realization.hpp"

namespace ncplush {

/// c^* Delta Lambda_B(H) Delta c.
Matrix derivative_eval(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& h,
                       const Tolerances& tol = {});

/// Complex Hessian r_{x,x^*}(X)[H, H^*]:
///   C^* Delta L^* Delta L Delta C + C^* Delta L Delta L^* Delta C,  L = Lambda_B(H).
/// The raw value is returned; see symmetrize() before PSD tests.
Matrix complex_hessian_eval(const SymmetricRealization& r, const MatrixTuple& x,
                            const MatrixTuple& h, const Tolerances& tol = {});

/// Full Hessian 2 C^* Delta Phi Delta Phi Delta C with Phi = L + L^*.
Matrix full_hessian_eval(const SymmetricRealization& r, const MatrixTuple& x,
                         const MatrixTuple& h, const Tolerances& tol = {});

struct UpDown {
  Matrix down;  // C^* Delta(X) L^* Delta(Xt) L Delta(X) C
  Matrix up;    // C^* Delta(Xt) L Delta(X) L^* Delta(Xt) C
};

UpDown updown_eval(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& xt,
                   const MatrixTuple& h, const Tolerances& tol = {});

/// Same with X in M_n, Xt in M_m and each H_j an m x n block.
UpDown updown_eval(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& xt,
                   const std::vector<Matrix>& h, const Tolerances& tol = {});

struct FiniteDiffOptions {
  double step = 1e-5;
  /// Combine steps h and h/2 to cancel the O(h^2) term.
  bool richardson = false;
};

/// Mixed central difference of (s, t) -> r(X + sH, (X + tH)^*) at 0.
Matrix finite_diff_hessian(const SymmetricRealization& r, const MatrixTuple& x,
                           const MatrixTuple& h, const FiniteDiffOptions& opts = {},
                           const Tolerances& tol = {});

/// Second central difference of t -> r(X + tH) at 0 (real t).
Matrix finite_diff_full_hessian(const SymmetricRealization& r, const MatrixTuple& x,
                                const MatrixTuple& h, const FiniteDiffOptions& opts = {},
                                const Tolerances& tol = {});

struct Symmetrized {
  Matrix value;             // (M + M^*) / 2
  double asymmetry = 0.0;   // ||M - M^*|| / (1 + ||M||) before symmetrization
};

Symmetrized symmetrize(const Matrix& m);

}  // namespace ncplush
