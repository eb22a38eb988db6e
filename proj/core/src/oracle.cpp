#include "ncplush/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncplush/calculus.hpp"
#include "ncplush/certify.hpp"
#include "ncplush/errors.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/sampling.hpp"

namespace ncplush {

void SampleDomain::validate() const {
  if (n_max < 1 || n_samples < 0 || !(radius > 0.0) || std::isnan(radius)) {
    throw Error(ErrorKind::InvalidArgument, "sample domain needs n_max >= 1 and radius > 0");
  }
}

namespace {

struct HessEig {
  double min_eig = 0.0;
  double scale = 1.0;
  Vector vec;
};

HessEig hessian_min(const SymmetricRealization& r, const MatrixTuple& x, const MatrixTuple& h,
                    const Tolerances& tol) {
  const Symmetrized hs = symmetrize(complex_hessian_eval(r, x, h, tol));
  const HermitianEig eig = hermitian_eig(hs.value, tol);
  return {eig.values(0), 1.0 + spectral_norm(hs.value), eig.vectors.col(0)};
}

// X = 0 in M_2, H_j = [[0,0],[1,0]], H_i = 0 otherwise.
MatrixTuple probe_direction(Index g, Index j) {
  std::vector<Matrix> h(static_cast<std::size_t>(g), Matrix::Zero(2, 2));
  h[static_cast<std::size_t>(j)](1, 0) = 1.0;
  return MatrixTuple(std::move(h));
}

}  // namespace

SampleReport sample_hessian(const SymmetricRealization& r, const SampleDomain& dom,
                            const Tolerances& tol) {
  dom.validate();
  SampleReport rep;
  rep.min_eig = std::numeric_limits<double>::infinity();
  rep.min_relative = std::numeric_limits<double>::infinity();
  auto consider = [&](int index, const MatrixTuple& x, const MatrixTuple& h) {
    const HessEig he = hessian_min(r, x, h, tol);
    rep.min_eig = std::min(rep.min_eig, he.min_eig);
    const double rel = he.min_eig / he.scale;
    if (rel < rep.min_relative) {
      rep.min_relative = rel;
      rep.argmin = index;
      rep.argmin_x = x;
      rep.argmin_h = h;
    }
  };
  for (int i = 0; i < dom.n_samples; ++i) {
    Rng rng(dom.seed, static_cast<std::uint64_t>(i));
    const Index n = rng.uniform_int(1, static_cast<int>(dom.n_max));
    const MatrixTuple x = random_ball_tuple(rng, r.g(), n, dom.radius);
    const MatrixTuple h = random_unit_tuple(rng, r.g(), n);
    consider(i, x, h);
    ++rep.samples;
  }
  if (dom.n_max >= 2) {
    const MatrixTuple zero = MatrixTuple::zero(r.g(), 2);
    for (Index j = 0; j < r.g(); ++j) {
      consider(dom.n_samples + static_cast<int>(j), zero, probe_direction(r.g(), j));
      ++rep.probes;
    }
  }
  if (rep.argmin < 0) {
    rep.min_eig = 0.0;
    rep.min_relative = 0.0;
  }
  return rep;
}

namespace {

struct Side {
  bool star = false;
  std::vector<Matrix> e;  // B_j or B_j^*
  Subspace range;
};

// Most K-negative unit vector in s, if the form is not PSD.
std::optional<Vector> negative_direction(const Matrix& k, const Subspace& s,
                                         const Tolerances& tol) {
  if (s.dim() == 0) return std::nullopt;
  const Matrix form = hermitian_part(s.basis.adjoint() * k * s.basis);
  const PsdResult res = psd_check(form, tol);
  if (res.is_psd) return std::nullopt;
  const HermitianEig eig = hermitian_eig(form, tol);
  return Vector(s.basis * eig.vectors.col(0));
}

Matrix hcat(const std::vector<Matrix>& blocks) {
  Index cols = 0;
  for (const Matrix& m : blocks) cols += m.cols();
  Matrix out(blocks.front().rows(), cols);
  Index at = 0;
  for (const Matrix& m : blocks) {
    out.middleCols(at, m.cols()) = m;
    at += m.cols();
  }
  return out;
}

// Assembles Xhat = X (+) 0_1 with rows h_j below (ran B side) or
// Xhat = 0_1 (+) X with columns rows_j^* on the left (ran B^* side).
void assemble(const MatrixTuple& x, const std::vector<Matrix>& rows, bool star, MatrixTuple& xhat,
              MatrixTuple& hhat) {
  const Index n = x.n();
  const Index g = x.g();
  const MatrixTuple zero1 = MatrixTuple::zero(g, 1);
  xhat = star ? direct_sum(zero1, x) : direct_sum(x, zero1);
  std::vector<Matrix> h;
  for (Index j = 0; j < g; ++j) {
    Matrix m = Matrix::Zero(n + 1, n + 1);
    const Matrix& row = rows[static_cast<std::size_t>(j)];
    if (star) {
      m.block(1, 0, n, 1) = row.adjoint();
    } else {
      m.block(n, 0, 1, n) = row;
    }
    h.push_back(std::move(m));
  }
  hhat = MatrixTuple(std::move(h));
  const double norm = hhat.column_norm();
  if (norm > 0.0) hhat = hhat.scaled(1.0 / norm);
}

std::optional<Witness> confirm(const SymmetricRealization& r, const MatrixTuple& xhat,
                               const MatrixTuple& hhat, const Tolerances& tol) {
  const HessEig he = hessian_min(r, xhat, hhat, tol);
  if (!(he.min_eig <= -tol.psd * he.scale)) return std::nullopt;
  Witness w;
  w.X = xhat;
  w.H = hhat;
  w.v = he.vec;
  w.hess_eig = he.min_eig;
  w.scale = he.scale;
  return w;
}

// X = 0, n = 1: reachable vectors are span{E_j K c}.
std::optional<Witness> try_probe(const SymmetricRealization& r, const Side& side,
                                 const Tolerances& tol) {
  std::vector<Matrix> cols;
  for (const Matrix& ej : side.e) cols.push_back(ej * r.K() * r.c());
  const Matrix ecat = hcat(cols);
  const std::optional<Vector> u = negative_direction(r.K(), orth(ecat, tol), tol);
  if (!u) return std::nullopt;
  const Vector alpha = pinv(ecat, tol) * (*u);
  std::vector<Matrix> rows;
  for (Index j = 0; j < r.g(); ++j) {
    Matrix row(1, 1);
    row(0, 0) = alpha(j);
    rows.push_back(std::move(row));
  }
  MatrixTuple xhat;
  MatrixTuple hhat;
  assemble(MatrixTuple::zero(r.g(), 1), rows, side.star, xhat, hhat);
  std::optional<Witness> w = confirm(r, xhat, hhat, tol);
  if (w) {
    w->star_side = side.star;
    w->probe = true;
    w->n = 1;
  }
  return w;
}

constexpr int kRetries = 32;
constexpr double kComponentCond = 1e-8;

std::optional<Witness> try_search(const SymmetricRealization& r, const Side& side, const Vector& u,
                                  const SampleDomain& dom, const Tolerances& tol, int& attempts) {
  const Index d = r.d();
  const Index g = r.g();
  const double norm_sum = coefficient_norm_sum(r);
  const double radius = std::min(dom.radius, 0.25 / norm_sum);
  const Matrix ecat = hcat(side.e);
  const Vector alpha = pinv(ecat, tol) * u;
  std::uint64_t stream = 0;
  for (Index n = d; n <= 4 * d; ++n) {
    for (int t = 0; t < kRetries; ++t) {
      ++attempts;
      Rng rng(dom.seed ^ 0x77697473ULL, stream++);
      const MatrixTuple x = random_ball_tuple(rng, g, n, radius);
      Vector v = rng.gaussian_vector(n);
      v.normalize();
      Matrix delta;
      try {
        delta = eval_delta(r, x, tol);
      } catch (const Error&) {
        continue;
      }
      const Vector z = delta * kron(Matrix(r.c()), Matrix(v));
      Matrix zmat(n, d);
      for (Index i = 0; i < d; ++i) zmat.col(i) = z.segment(i * n, n);
      const RealVector sv = singular_values(zmat);
      if (sv(d - 1) <= kComponentCond * sv(0)) continue;
      const Matrix zdag = pinv(zmat, tol);
      // row_j * zmat = alpha_j^T, so Lambda_E(rows) z = sum_j E_j alpha_j = u.
      std::vector<Matrix> rows;
      for (Index j = 0; j < g; ++j) {
        const Matrix aj = alpha.segment(j * d, d).transpose();
        rows.push_back(aj * zdag);
      }
      MatrixTuple xhat;
      MatrixTuple hhat;
      assemble(x, rows, side.star, xhat, hhat);
      std::optional<Witness> w;
      try {
        w = confirm(r, xhat, hhat, tol);
      } catch (const Error&) {
        continue;
      }
      if (w) {
        w->star_side = side.star;
        w->n = n;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> find_witness(const SymmetricRealization& r, const SampleDomain& dom,
                                    const Tolerances& tol) {
  dom.validate();
  if (!is_minimal(r, tol)) {
    throw Error(ErrorKind::MinimalityRequired, "find_witness needs a minimal realization");
  }
  Side left{false, r.B(), range_B(r, tol)};
  std::vector<Matrix> adj;
  for (const Matrix& bj : r.B()) adj.push_back(bj.adjoint());
  Side right{true, adj, range_Bstar(r, tol)};

  std::vector<std::pair<const Side*, Vector>> failing;
  for (const Side* side : {&left, &right}) {
    if (std::optional<Vector> u = negative_direction(r.K(), side->range, tol)) {
      failing.emplace_back(side, *u);
    }
  }
  if (failing.empty()) return std::nullopt;

  for (const auto& [side, u] : failing) {
    if (std::optional<Witness> w = try_probe(r, *side, tol)) return w;
  }
  int attempts = 0;
  for (const auto& [side, u] : failing) {
    if (std::optional<Witness> w = try_search(r, *side, u, dom, tol, attempts)) {
      w->attempts = attempts;
      return w;
    }
  }
  throw Error(ErrorKind::WitnessSearchFailed,
              "no witness after " + std::to_string(attempts) + " attempts up to n = " +
                  std::to_string(4 * r.d()));
}

SymmetricRealization plush_from_angular(const Matrix& rho, const Matrix& rho_star,
                                        const std::vector<Matrix>& e, const Vector& c) {
  const Index a = rho.cols();
  const Index b = rho.rows();
  if (rho_star.rows() != b || rho_star.cols() != a || c.size() != a + b) {
    throw Error(ErrorKind::DimensionMismatch, "angular data sizes do not match");
  }
  Matrix left(a + b, a);
  left.topRows(a) = Matrix::Identity(a, a);
  left.bottomRows(b) = rho;
  Matrix right(a, a + b);
  right.leftCols(a) = Matrix::Identity(a, a);
  right.rightCols(b) = rho_star.adjoint();
  std::vector<Matrix> bs;
  for (const Matrix& ej : e) {
    if (ej.rows() != a || ej.cols() != a) {
      throw Error(ErrorKind::DimensionMismatch, "E_j must be a x a");
    }
    bs.push_back(left * ej * right);
  }
  return SymmetricRealization(signature_matrix(a, b), std::move(bs), c);
}

namespace {

Matrix random_contraction(Rng& rng, Index rows, Index cols) {
  Matrix m = rng.gaussian(rows, cols);
  if (m.size() == 0) return m;
  const double target = rng.uniform(0.1, 0.9);
  return m * (target / spectral_norm(m));
}

}  // namespace

SymmetricRealization gen_plush(Index a, Index b, Index g, std::uint64_t seed) {
  if (a < 1 || b < 0 || g < 0) throw Error(ErrorKind::InvalidArgument, "gen_plush needs a >= 1");
  Rng rng(seed, 0x706c7573ULL);
  const Matrix rho = random_contraction(rng, b, a);
  const Matrix rho_star = random_contraction(rng, b, a);
  std::vector<Matrix> e;
  for (Index j = 0; j < g; ++j) e.push_back(rng.gaussian(a, a) / std::sqrt(double(a)));
  const Vector c = rng.gaussian_vector(a + b);
  return plush_from_angular(rho, rho_star, e, c);
}

SymmetricRealization gen_random(Index d, Index g, std::uint64_t seed) {
  if (d < 1 || g < 0) throw Error(ErrorKind::InvalidArgument, "gen_random needs d >= 1");
  Rng rng(seed, 0x72616e64ULL);
  const Index a = rng.uniform_int(0, static_cast<int>(d));
  std::vector<Matrix> b;
  for (Index j = 0; j < g; ++j) b.push_back(rng.gaussian(d, d) / std::sqrt(double(d)));
  Vector c = rng.gaussian_vector(d);
  c.normalize();
  return SymmetricRealization(signature_matrix(a, d - a), std::move(b), std::move(c));
}

}  // namespace ncplush
