#include "ncplush/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncplush/errors.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/sampling.hpp"

namespace ncplush {

const char* to_string(Verdict v) {
  return v == Verdict::CertifiedTrue ? "certified_true" : "certified_false";
}

namespace {

bool is_normalized(const Matrix& k, const Tolerances& tol, Index& a) {
  const Index d = k.rows();
  Matrix off = k;
  off.diagonal().setZero();
  if (off.norm() > tol.verify) return false;
  a = 0;
  bool seen_negative = false;
  for (Index i = 0; i < d; ++i) {
    const Complex v = k(i, i);
    if (std::abs(v - 1.0) <= tol.verify) {
      if (seen_negative) return false;
      ++a;
    } else if (std::abs(v + 1.0) <= tol.verify) {
      seen_negative = true;
    } else {
      return false;
    }
  }
  return true;
}

Matrix hstack(const std::vector<Matrix>& blocks, Index rows) {
  Index cols = 0;
  for (const Matrix& m : blocks) cols += m.cols();
  Matrix out(rows, cols);
  Index at = 0;
  for (const Matrix& m : blocks) {
    out.middleCols(at, m.cols()) = m;
    at += m.cols();
  }
  return out;
}

void require_minimal(const SymmetricRealization& r, const Tolerances& tol) {
  if (!is_minimal(r, tol)) {
    throw Error(ErrorKind::MinimalityRequired,
                "realization is not minimal; reduce it first (minimal_reduce / --auto-reduce)");
  }
}

// Smallest eigenvalue of V^* K V above the PSD slack; 1 for a K-neutral space.
double smallest_positive(const Matrix& k, const Subspace& s, const Tolerances& tol) {
  if (s.dim() == 0) return 1.0;
  const Matrix form = hermitian_part(s.basis.adjoint() * k * s.basis);
  const HermitianEig eig = hermitian_eig(form, tol);
  const double slack = tol.psd * (1.0 + spectral_norm(form));
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > slack) return std::min(1.0, eig.values(i));
  }
  return 1.0;
}

}  // namespace

NormalizedRealization normalize_signature(const SymmetricRealization& r, const Tolerances& tol) {
  const Index d = r.d();
  Index a = 0;
  if (is_normalized(r.K(), tol, a)) {
    return {r, Matrix::Identity(d, d), a, d - a};
  }
  const HermitianEig eig = hermitian_eig(r.K(), tol);
  Matrix u(d, d);
  Index at = 0;
  for (Index i = d - 1; i >= 0; --i) {
    if (eig.values(i) > 0.0) u.col(at++) = eig.vectors.col(i);
  }
  a = at;
  for (Index i = 0; i < d; ++i) {
    if (eig.values(i) <= 0.0) u.col(at++) = eig.vectors.col(i);
  }
  std::vector<Matrix> b;
  for (const Matrix& bj : r.B()) b.push_back(u.adjoint() * bj * u);
  SymmetricRealization out(signature_matrix(a, d - a), std::move(b), u.adjoint() * r.c(), tol);
  return {std::move(out), u, a, d - a};
}

KForm k_nonneg_check(const Matrix& k, const Subspace& s, const Tolerances& tol) {
  if (!is_signature_matrix(k, tol) || k.rows() != s.ambient) {
    throw Error(ErrorKind::InvalidRealization, "K must be a signature matrix on the ambient space");
  }
  if (s.dim() == 0) return {true, 0.0};
  const PsdResult res = psd_check(hermitian_part(s.basis.adjoint() * k * s.basis), tol);
  return {res.is_psd, res.min_eig};
}

AngularData angular_extension(const Matrix& k, const Subspace& s, const Tolerances& tol) {
  Index a = 0;
  if (!is_normalized(k, tol, a)) {
    throw Error(ErrorKind::InvalidArgument, "angular_extension needs K = diag(I_a, -I_b)");
  }
  const KForm form = k_nonneg_check(k, s, tol);
  if (!form.nonnegative) {
    throw Error(ErrorKind::NotKNonnegative,
                "subspace is not K-nonnegative (min eigenvalue " + std::to_string(form.min_eig) + ")");
  }
  AngularData out;
  out.a = a;
  out.b = k.rows() - a;
  if (s.dim() == 0 || out.b == 0) {
    out.rho = Matrix::Zero(out.b, a);
  } else {
    const Matrix v1 = s.basis.topRows(a);
    const Matrix v2 = s.basis.bottomRows(out.b);
    out.rho = v2 * pinv(v1, tol);
  }
  if (out.rho.size() > 0 && spectral_norm(out.rho) > 1.0 + tol.psd) {
    throw Error(ErrorKind::NotKNonnegative, "angular operator is not a contraction");
  }

  const Matrix d2 = hermitian_part(Matrix::Identity(a, a) - out.rho.adjoint() * out.rho);
  if (a > 0) {
    const HermitianEig eig = hermitian_eig(d2, tol);
    RealVector root = RealVector::Zero(a);
    RealVector inv = RealVector::Zero(a);
    for (Index i = 0; i < a; ++i) {
      if (eig.values(i) > tol.psd) {
        root(i) = std::sqrt(eig.values(i));
        inv(i) = 1.0 / root(i);
      }
    }
    out.D = eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    out.Ddag = eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  } else {
    out.D = Matrix::Zero(0, 0);
    out.Ddag = Matrix::Zero(0, 0);
  }
  Matrix graph(k.rows(), a);
  graph.topRows(a) = Matrix::Identity(a, a);
  graph.bottomRows(out.b) = out.rho;
  out.subspace = orth(graph, tol);
  return out;
}

Subspace range_B(const SymmetricRealization& r, const Tolerances& tol) {
  return orth(hstack(r.B(), r.d()), tol);
}

Subspace range_Bstar(const SymmetricRealization& r, const Tolerances& tol) {
  std::vector<Matrix> adj;
  for (const Matrix& bj : r.B()) adj.push_back(bj.adjoint());
  return orth(hstack(adj, r.d()), tol);
}

CertificateReport certify_plush(const SymmetricRealization& r, const Tolerances& tol,
                                const CertifyOptions& opts) {
  tol.validate();
  require_minimal(r, tol);
  CertificateReport rep;
  rep.kind = CertificateKind::Plush;
  rep.minimal = true;
  rep.tolerances = tol;
  const Subspace ran_b = range_B(r, tol);
  const Subspace ran_bs = range_Bstar(r, tol);
  const Matrix& k = r.K();
  const Matrix pkp = hermitian_part(ran_b.projector() * k * ran_b.projector());
  const Matrix pskps = hermitian_part(ran_bs.projector() * k * ran_bs.projector());
  const PsdResult left = psd_check(pkp, tol);
  const PsdResult right = psd_check(pskps, tol);
  rep.min_eig_ran_B = left.min_eig;
  rep.min_eig_ran_Bstar = right.min_eig;
  rep.verdict = left.is_psd && right.is_psd ? Verdict::CertifiedTrue : Verdict::CertifiedFalse;
  if (rep.verdict == Verdict::CertifiedFalse && opts.attach_witness) {
    rep.witness = find_witness(r, opts.witness_domain, tol);
    if (!rep.witness) {
      throw Error(ErrorKind::WitnessSearchFailed, "certificate failed but no witness was produced");
    }
  }
  return rep;
}

CertificateReport certify_convex(const SymmetricRealization& r, const Tolerances& tol) {
  tol.validate();
  require_minimal(r, tol);
  CertificateReport rep;
  rep.kind = CertificateKind::Convex;
  rep.minimal = true;
  rep.tolerances = tol;
  std::vector<Matrix> both = r.B();
  for (const Matrix& bj : r.B()) both.push_back(bj.adjoint());
  const Subspace sum = orth(hstack(both, r.d()), tol);
  const Matrix q = sum.projector();
  const PsdResult res = psd_check(hermitian_part(q * r.K() * q), tol);
  rep.min_eig_sum = res.min_eig;
  rep.verdict = res.is_psd ? Verdict::CertifiedTrue : Verdict::CertifiedFalse;
  return rep;
}

double plush_radius(const SymmetricRealization& r, const Tolerances& tol) {
  const CertificateReport rep = certify_plush(r, tol, {.attach_witness = false});
  if (rep.verdict != Verdict::CertifiedTrue) {
    throw Error(ErrorKind::NotCertified, "plush_radius needs a plush certificate");
  }
  const double norm_sum = coefficient_norm_sum(r);
  if (norm_sum == 0.0) return std::numeric_limits<double>::infinity();
  const double eta = std::min(smallest_positive(r.K(), range_B(r, tol), tol),
                              smallest_positive(r.K(), range_Bstar(r, tol), tol));
  return eta / ((2.0 + eta) * 2.0 * norm_sum);
}

double extension_residual(const SymmetricRealization& r, const Tolerances& tol) {
  const NormalizedRealization nr = normalize_signature(r, tol);
  const AngularData left = angular_extension(nr.r.K(), range_B(nr.r, tol), tol);
  const AngularData right = angular_extension(nr.r.K(), range_Bstar(nr.r, tol), tol);
  const Matrix p = left.subspace.projector();
  const Matrix ps = right.subspace.projector();
  double worst = 0.0;
  for (const Matrix& bj : nr.r.B()) {
    worst = std::max(worst, spectral_norm(p * bj * ps - bj) / (1.0 + spectral_norm(bj)));
  }
  return worst;
}

}  // namespace ncplush
