#include "ncplush/calculus.hpp"

#include "ncplush/errors.hpp"

namespace ncplush {

namespace {

void check_direction(const MatrixTuple& x, const MatrixTuple& h) {
  if (x.g() != h.g() || x.n() != h.n()) {
    throw Error(ErrorKind::DimensionMismatch, "point and direction tuples differ in shape");
  }
}

Matrix c_block(const SymmetricRealization& r, Index n) {
  return kron(r.c(), Matrix::Identity(n, n));
}

}  // namespace

Matrix derivative_eval(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& h,
                       const Tolerances& tol) {
  check_direction(x, h);
  const Matrix delta = eval_delta(r, x, tol);
  const Matrix cn = c_block(r, x.n());
  const Matrix dc = delta * cn;
  return dc.adjoint() * linear_pencil(r.B(), h) * dc;
}

Matrix complex_hessian_eval(const SymmetricRealization& r, const MatrixTuple& x,
                            const MatrixTuple& h, const Tolerances& tol) {
  check_direction(x, h);
  const Matrix delta = eval_delta(r, x, tol);
  const Matrix dc = delta * c_block(r, x.n());
  const Matrix l = linear_pencil(r.B(), h);
  const Matrix ldc = l * dc;
  const Matrix lsdc = l.adjoint() * dc;
  return ldc.adjoint() * delta * ldc + lsdc.adjoint() * delta * lsdc;
}

Matrix full_hessian_eval(const SymmetricRealization& r, const MatrixTuple& x,
                         const MatrixTuple& h, const Tolerances& tol) {
  check_direction(x, h);
  const Matrix delta = eval_delta(r, x, tol);
  const Matrix dc = delta * c_block(r, x.n());
  const Matrix l = linear_pencil(r.B(), h);
  const Matrix phi = l + l.adjoint();
  const Matrix pdc = phi * dc;
  return 2.0 * pdc.adjoint() * delta * pdc;
}

UpDown updown_eval(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& xt,
                   const std::vector<Matrix>& h, const Tolerances& tol) {
  if (x.g() != xt.g() || static_cast<Index>(h.size()) != x.g()) {
    throw Error(ErrorKind::DimensionMismatch, "point and direction tuples differ in length");
  }
  const Index n = x.n();
  const Index m = xt.n();
  Matrix l = Matrix::Zero(r.d() * m, r.d() * n);
  for (Index j = 0; j < x.g(); ++j) {
    const Matrix& hj = h[static_cast<std::size_t>(j)];
    if (hj.rows() != m || hj.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "direction H_j must be m x n");
    }
    l += kron(r.B(j), hj);
  }
  const Matrix delta = eval_delta(r, x, tol);
  const Matrix delta_t = eval_delta(r, xt, tol);
  const Matrix a = l * delta * c_block(r, n);
  const Matrix b = l.adjoint() * delta_t * c_block(r, m);
  return {a.adjoint() * delta_t * a, b.adjoint() * delta * b};
}

UpDown updown_eval(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& xt,
                   const MatrixTuple& h, const Tolerances& tol) {
  check_direction(x, h);
  check_direction(xt, h);
  return updown_eval(r, x, xt, h.mats(), tol);
}

namespace {

Matrix split_value(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& h,
                   double s, double t, const Tolerances& tol) {
  const MatrixTuple hol = x.plus(h, s);
  const MatrixTuple anti = x.plus(h, t).adjoints();
  const Matrix cn = c_block(r, x.n());
  return cn.adjoint() * eval_delta_split(r, hol, anti, tol) * cn;
}

Matrix mixed_difference(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& h,
                        double step, const Tolerances& tol) {
  const Matrix pp = split_value(r, x, h, step, step, tol);
  const Matrix pm = split_value(r, x, h, step, -step, tol);
  const Matrix mp = split_value(r, x, h, -step, step, tol);
  const Matrix mm = split_value(r, x, h, -step, -step, tol);
  return (pp - pm - mp + mm) / (4.0 * step * step);
}

Matrix second_difference(const SymmetricRealization& r, const MatrixTuple& x,
                         const MatrixTuple& h, double step, const Tolerances& tol) {
  const Matrix plus = eval(r, x.plus(h, step), tol);
  const Matrix mid = eval(r, x, tol);
  const Matrix minus = eval(r, x.plus(h, -step), tol);
  return (plus - 2.0 * mid + minus) / (step * step);
}

void check_step(const FiniteDiffOptions& opts) {
  if (!(opts.step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
}

}  // namespace

Matrix finite_diff_hessian(const SymmetricRealization& r, const MatrixTuple& x,
                           const MatrixTuple& h, const FiniteDiffOptions& opts,
                           const Tolerances& tol) {
  check_direction(x, h);
  check_step(opts);
  const Matrix coarse = mixed_difference(r, x, h, opts.step, tol);
  if (!opts.richardson) return coarse;
  const Matrix fine = mixed_difference(r, x, h, 0.5 * opts.step, tol);
  return (4.0 * fine - coarse) / 3.0;
}

Matrix finite_diff_full_hessian(const SymmetricRealization& r, const MatrixTuple& x,
                                const MatrixTuple& h, const FiniteDiffOptions& opts,
                                const Tolerances& tol) {
  check_direction(x, h);
  check_step(opts);
  const Matrix coarse = second_difference(r, x, h, opts.step, tol);
  if (!opts.richardson) return coarse;
  const Matrix fine = second_difference(r, x, h, 0.5 * opts.step, tol);
  return (4.0 * fine - coarse) / 3.0;
}

Symmetrized symmetrize(const Matrix& m) { return {hermitian_part(m), hermitian_residual(m)}; }

}  // namespace ncplush
