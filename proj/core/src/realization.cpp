#include "ncplush/realization.hpp"

#include <algorithm>
#include <string>

#include "ncplush/errors.hpp"

namespace ncplush {

bool Word::analytic() const {
  return std::none_of(letters.begin(), letters.end(), [](const Letter& l) { return l.star; });
}

Word Word::adjoint() const {
  Word out;
  out.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    out.letters.push_back({it->index, !it->star});
  }
  return out;
}

std::vector<int> Word::to_ints() const {
  std::vector<int> codes;
  codes.reserve(letters.size());
  for (const Letter& l : letters) codes.push_back(l.star ? -(l.index + 1) : l.index + 1);
  return codes;
}

Word Word::from_ints(std::span<const int> codes) {
  Word w;
  for (int code : codes) {
    if (code == 0) throw Error(ErrorKind::ParseError, "letter code 0 is not valid");
    w.letters.push_back({std::abs(code) - 1, code < 0});
  }
  return w;
}

MatrixTuple::MatrixTuple(std::vector<Matrix> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) return;
  n_ = mats_.front().rows();
  for (const Matrix& m : mats_) {
    if (m.rows() != n_ || m.cols() != n_) {
      throw Error(ErrorKind::DimensionMismatch, "tuple members must be square of common size");
    }
    require_finite(m, "tuple member");
  }
}

MatrixTuple MatrixTuple::zero(Index g, Index n) {
  return MatrixTuple(std::vector<Matrix>(static_cast<std::size_t>(g), Matrix::Zero(n, n)));
}

MatrixTuple MatrixTuple::scaled(Complex alpha) const {
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (const Matrix& m : mats_) out.push_back(alpha * m);
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::plus(const MatrixTuple& other, Complex alpha) const {
  if (other.g() != g() || other.n() != n()) {
    throw Error(ErrorKind::DimensionMismatch, "tuple sizes differ");
  }
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (std::size_t j = 0; j < mats_.size(); ++j) out.push_back(mats_[j] + alpha * other.mats_[j]);
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::adjoints() const {
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (const Matrix& m : mats_) out.push_back(m.adjoint());
  return MatrixTuple(std::move(out));
}

double MatrixTuple::column_norm() const {
  if (mats_.empty() || n_ == 0) return 0.0;
  Matrix gram = Matrix::Zero(n_, n_);
  for (const Matrix& m : mats_) gram += m.adjoint() * m;
  return std::sqrt(spectral_norm(gram));
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.g() != y.g()) throw Error(ErrorKind::DimensionMismatch, "tuples have different g");
  const Index n = x.n();
  const Index m = y.n();
  std::vector<Matrix> out;
  for (Index j = 0; j < x.g(); ++j) {
    Matrix s = Matrix::Zero(n + m, n + m);
    s.topLeftCorner(n, n) = x[j];
    s.bottomRightCorner(m, m) = y[j];
    out.push_back(std::move(s));
  }
  return MatrixTuple(std::move(out));
}

SymmetricRealization::SymmetricRealization(Matrix k, std::vector<Matrix> b, Vector c,
                                           const Tolerances& tol)
    : k_(std::move(k)), b_(std::move(b)), c_(std::move(c)) {
  const Index d = k_.rows();
  if (d == 0 || k_.cols() != d) {
    throw Error(ErrorKind::InvalidRealization, "K must be a nonempty square matrix");
  }
  if (!k_.allFinite() || !c_.allFinite()) {
    throw Error(ErrorKind::InvalidRealization, "non-finite entries");
  }
  if (!is_signature_matrix(k_, tol)) {
    throw Error(ErrorKind::InvalidRealization, "K is not a signature matrix (K = K^*, K^2 = I)");
  }
  if (c_.size() != d) {
    throw Error(ErrorKind::InvalidRealization,
                "c has length " + std::to_string(c_.size()) + ", expected " + std::to_string(d));
  }
  if (c_.norm() == 0.0) throw Error(ErrorKind::InvalidRealization, "c must be nonzero");
  for (const Matrix& bj : b_) {
    if (bj.rows() != d || bj.cols() != d) {
      throw Error(ErrorKind::InvalidRealization, "every B_j must be d x d");
    }
    if (!bj.allFinite()) throw Error(ErrorKind::InvalidRealization, "non-finite entries in B");
  }
}

SymmetricRealization SymmetricRealization::conjugated(const Matrix& u) const {
  std::vector<Matrix> b;
  b.reserve(b_.size());
  for (const Matrix& bj : b_) b.push_back(u.adjoint() * bj * u);
  return SymmetricRealization(u.adjoint() * k_ * u, std::move(b), u.adjoint() * c_);
}

double SymmetricRealization::value_at_zero() const { return c_.dot(k_ * c_).real(); }

void GeneralRealization::validate(const Tolerances& tol) const {
  const Index dim = J.rows();
  if (dim == 0 || J.cols() != dim || A.size() != Bst.size() || b.size() != dim ||
      c.size() != dim) {
    throw Error(ErrorKind::InvalidRealization, "inconsistent general realization sizes");
  }
  for (std::size_t j = 0; j < A.size(); ++j) {
    if (A[j].rows() != dim || A[j].cols() != dim || Bst[j].rows() != dim || Bst[j].cols() != dim) {
      throw Error(ErrorKind::InvalidRealization, "coefficient size mismatch");
    }
  }
  if (min_singular_value(J) <= tol.rank * spectral_norm(J)) {
    throw Error(ErrorKind::InvalidRealization, "J is not invertible");
  }
}

Matrix linear_pencil(std::span<const Matrix> coeffs, const MatrixTuple& x) {
  if (static_cast<Index>(coeffs.size()) != x.g()) {
    throw Error(ErrorKind::DimensionMismatch, "coefficient count differs from tuple size");
  }
  const Index d = coeffs.empty() ? 0 : coeffs.front().rows();
  Matrix out = Matrix::Zero(d * x.n(), d * x.n());
  for (Index j = 0; j < x.g(); ++j) out += kron(coeffs[static_cast<std::size_t>(j)], x[j]);
  return out;
}

Matrix eval_word(const Word& w, const MatrixTuple& x) {
  Matrix out = Matrix::Identity(x.n(), x.n());
  for (const Letter& l : w.letters) {
    if (l.index < 0 || l.index >= x.g()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "letter index " + std::to_string(l.index + 1) + " exceeds g = " +
                      std::to_string(x.g()));
    }
    if (l.star) {
      out = out * x[l.index].adjoint();
    } else {
      out = out * x[l.index];
    }
  }
  return out;
}

namespace {

std::vector<Matrix> adjoint_all(const std::vector<Matrix>& mats) {
  std::vector<Matrix> out;
  out.reserve(mats.size());
  for (const Matrix& m : mats) out.push_back(m.adjoint());
  return out;
}

DeltaEval invert_pencil(const Matrix& pencil, const Tolerances& tol) {
  DeltaEval out;
  RealVector s = singular_values(pencil);
  out.pencil_norm = s(0);
  out.min_singular = s(s.size() - 1);
  if (out.min_singular <= tol.rank * out.pencil_norm) {
    throw Error(ErrorKind::SingularPencil,
                "pencil smallest singular value " + std::to_string(out.min_singular) +
                    " relative to norm " + std::to_string(out.pencil_norm));
  }
  out.delta = pencil.partialPivLu().inverse();
  return out;
}

void check_args(const SymmetricRealization& r, const MatrixTuple& x) {
  if (x.g() != r.g()) {
    throw Error(ErrorKind::DimensionMismatch,
                "tuple has " + std::to_string(x.g()) + " members, realization has g = " +
                    std::to_string(r.g()));
  }
  if (x.n() == 0) throw Error(ErrorKind::DimensionMismatch, "empty tuple");
}

Matrix sandwich_c(const Vector& c, Index n, const Matrix& middle) {
  const Matrix cn = kron(c, Matrix::Identity(n, n));
  return cn.adjoint() * middle * cn;
}

}  // namespace

DeltaEval eval_delta_info(const SymmetricRealization& r, const MatrixTuple& x,
                          const Tolerances& tol) {
  check_args(r, x);
  const Index n = x.n();
  const std::vector<Matrix> bstar = adjoint_all(r.B());
  Matrix pencil = kron(r.K(), Matrix::Identity(n, n)) - linear_pencil(r.B(), x) -
                  linear_pencil(bstar, x.adjoints());
  return invert_pencil(pencil, tol);
}

Matrix eval_delta(const SymmetricRealization& r, const MatrixTuple& x, const Tolerances& tol) {
  return eval_delta_info(r, x, tol).delta;
}

Matrix eval_delta_split(const SymmetricRealization& r, const MatrixTuple& x,
                        const MatrixTuple& y, const Tolerances& tol) {
  check_args(r, x);
  check_args(r, y);
  if (x.n() != y.n()) throw Error(ErrorKind::DimensionMismatch, "slot sizes differ");
  const Index n = x.n();
  const std::vector<Matrix> bstar = adjoint_all(r.B());
  Matrix pencil =
      kron(r.K(), Matrix::Identity(n, n)) - linear_pencil(r.B(), x) - linear_pencil(bstar, y);
  return invert_pencil(pencil, tol).delta;
}

Matrix eval(const SymmetricRealization& r, const MatrixTuple& x, const Tolerances& tol) {
  return sandwich_c(r.c(), x.n(), eval_delta(r, x, tol));
}

Matrix eval_hermitian(const SymmetricRealization& r, const MatrixTuple& y, const Tolerances& tol) {
  if (y.g() != 2 * r.g()) {
    throw Error(ErrorKind::DimensionMismatch, "hermitian evaluation needs 2g matrices");
  }
  for (Index j = 0; j < y.g(); ++j) {
    if (spectral_norm(y[j] - y[j].adjoint()) > tol.verify * (1.0 + spectral_norm(y[j]))) {
      throw Error(ErrorKind::NotHermitian, "hermitian variable " + std::to_string(j + 1));
    }
  }
  const Complex i(0.0, 1.0);
  std::vector<Matrix> x;
  for (Index j = 0; j < r.g(); ++j) x.push_back(y[j] + i * y[r.g() + j]);
  return eval(r, MatrixTuple(std::move(x)), tol);
}

Matrix eval(const GeneralRealization& r, const MatrixTuple& x, const Tolerances& tol) {
  r.validate(tol);
  if (x.g() != r.g()) throw Error(ErrorKind::DimensionMismatch, "tuple size differs from g");
  const Index n = x.n();
  const Matrix id = Matrix::Identity(n, n);
  Matrix pencil = kron(r.J, id) - linear_pencil(r.A, x) - linear_pencil(r.Bst, x.adjoints());
  const Matrix delta = invert_pencil(pencil, tol).delta;
  return kron(r.c, id).adjoint() * delta * kron(r.b, id);
}

Matrix eval_monic(const SymmetricRealization& r, const MatrixTuple& x, const Tolerances& tol) {
  check_args(r, x);
  std::vector<Matrix> bk;
  std::vector<Matrix> bsk;
  for (const Matrix& bj : r.B()) {
    bk.push_back(bj * r.K());
    bsk.push_back(bj.adjoint() * r.K());
  }
  GeneralRealization monic{Matrix::Identity(r.d(), r.d()), bk, bsk, r.c(), r.K() * r.c()};
  return eval(monic, x, tol);
}

}  // namespace ncplush
