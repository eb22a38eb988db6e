#pragma once

// Symmetric descriptor realizations
//
//   r(x, x^*) = c^* (K - sum_j B_j x_j - sum_j B_j^* x_j^*)^{-1} c
//
// of nc rational functions regular at 0, evaluated on tuples of square
// matrices through Kronecker products:
//
//   r(X) = (c^* (x) I_n) (K (x) I_n - sum_j B_j (x) X_j - sum_j B_j^* (x) X_j^*)^{-1} (c (x) I_n).

#include <span>
#include <vector>

#include "ncplush/matkernel.hpp"

namespace ncplush {

/// A letter x_{index+1} or, when starred, x_{index+1}^*. Indices are 0-based.
struct Letter {
  int index = 0;
  bool star = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word over {x_1..x_g, x_1^*..x_g^*}; the empty word is the identity.
struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool analytic() const;
  /// (uv)^* = v^* u^*.
  Word adjoint() const;

  /// Integer encoding: letter x_j is j (1-based), x_j^* is -j.
  std::vector<int> to_ints() const;
  static Word from_ints(std::span<const int> codes);

  friend bool operator==(const Word&, const Word&) = default;
};

/// A g-tuple of n x n complex matrices.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<Matrix> mats);

  static MatrixTuple zero(Index g, Index n);

  Index g() const { return static_cast<Index>(mats_.size()); }
  Index n() const { return n_; }
  const Matrix& operator[](Index j) const { return mats_[static_cast<std::size_t>(j)]; }
  const std::vector<Matrix>& mats() const { return mats_; }

  MatrixTuple scaled(Complex alpha) const;
  /// Entrywise X_j + alpha Y_j.
  MatrixTuple plus(const MatrixTuple& other, Complex alpha = 1.0) const;
  MatrixTuple adjoints() const;
  /// sqrt(|| sum_j X_j^* X_j ||): the tuple lies in the column ball of
  /// radius eps iff this is < eps.
  double column_norm() const;

 private:
  Index n_ = 0;
  std::vector<Matrix> mats_;
};

/// X (+) Y, memberwise block diagonal.
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

/// The triple (K, B, c). Construction validates: K is a signature matrix,
/// every B_j is d x d, c has length d and is nonzero, entries finite.
class SymmetricRealization {
 public:
  SymmetricRealization(Matrix k, std::vector<Matrix> b, Vector c, const Tolerances& tol = {});

  Index d() const { return k_.rows(); }
  Index g() const { return static_cast<Index>(b_.size()); }
  const Matrix& K() const { return k_; }
  const std::vector<Matrix>& B() const { return b_; }
  const Matrix& B(Index j) const { return b_[static_cast<std::size_t>(j)]; }
  const Vector& c() const { return c_; }

  /// (U^* K U, U^* B_j U, U^* c) for an invertible U. The caller guarantees
  /// the result is again a signature matrix (e.g. U unitary commuting with K).
  SymmetricRealization conjugated(const Matrix& u) const;

  /// c^* K c, the value at 0.
  double value_at_zero() const;

 private:
  Matrix k_;
  std::vector<Matrix> b_;
  Vector c_;
};

/// General descriptor realization c^* (J - Lambda_A(x) - Lambda_Bst(x^*))^{-1} b.
/// Only used internally (reduction intermediates).
struct GeneralRealization {
  Matrix J;
  std::vector<Matrix> A;
  std::vector<Matrix> Bst;
  Vector b;
  Vector c;

  Index d() const { return J.rows(); }
  Index g() const { return static_cast<Index>(A.size()); }
  void validate(const Tolerances& tol = {}) const;
};

/// sum_j coeffs_j (x) X_j.
Matrix linear_pencil(std::span<const Matrix> coeffs, const MatrixTuple& x);

Matrix eval_word(const Word& w, const MatrixTuple& x);

struct DeltaEval {
  Matrix delta;
  double pencil_norm = 0.0;
  double min_singular = 0.0;
};

/// Delta(X) = (K (x) I - Lambda_B(X) - Lambda_{B^*}(X^*))^{-1}, throwing
/// SingularPencil when sigma_min(pencil) <= rank * ||pencil||.
DeltaEval eval_delta_info(const SymmetricRealization& r, const MatrixTuple& x,
                          const Tolerances& tol = {});
Matrix eval_delta(const SymmetricRealization& r, const MatrixTuple& x, const Tolerances& tol = {});

/// Delta with independent holomorphic and antiholomorphic arguments:
/// (K (x) I - Lambda_B(X) - Lambda_{B^*}(Y))^{-1}, Y standing in for X^*.
Matrix eval_delta_split(const SymmetricRealization& r, const MatrixTuple& x,
                        const MatrixTuple& y, const Tolerances& tol = {});

/// r(X, X^*) as an n x n matrix.
Matrix eval(const SymmetricRealization& r, const MatrixTuple& x, const Tolerances& tol = {});

/// r at X_j = Y_j + i Y_{g+j} for a tuple of 2g Hermitian matrices.
Matrix eval_hermitian(const SymmetricRealization& r, const MatrixTuple& y,
                      const Tolerances& tol = {});

Matrix eval(const GeneralRealization& r, const MatrixTuple& x, const Tolerances& tol = {});

/// c^* K (I - Lambda_{BK}(X) - Lambda_{B^*K}(X^*))^{-1} c, the monic form.
Matrix eval_monic(const SymmetricRealization& r, const MatrixTuple& x, const Tolerances& tol = {});

}  // namespace ncplush
