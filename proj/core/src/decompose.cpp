#include "ncplush/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncplush/errors.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/sampling.hpp"

namespace ncplush {

namespace {

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix stack_vecs(const std::vector<Matrix>& mats) {
  const Index len = mats.empty() ? 0 : mats.front().size();
  Matrix out(len, static_cast<Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) out.col(static_cast<Index>(i)) = vec(mats[i]);
  return out;
}

// Orthonormal span of admitted vectorized elements, grown one at a time.
class SpanTracker {
 public:
  SpanTracker(Index len, double cutoff) : q_(len, 0), cutoff_(cutoff) {}

  bool admit(const Vector& v) {
    const double norm = v.norm();
    if (norm == 0.0) return false;
    Vector u = v / norm;
    // Two passes of Gram-Schmidt keep the basis orthonormal to roundoff.
    for (int pass = 0; pass < 2; ++pass) u -= q_ * (q_.adjoint() * u);
    const double rest = u.norm();
    if (rest <= cutoff_) return false;
    q_.conservativeResize(Eigen::NoChange, q_.cols() + 1);
    q_.col(q_.cols() - 1) = u / rest;
    return true;
  }

 private:
  Matrix q_;
  double cutoff_;
};

bool all_zero(const SymmetricRealization& r) {
  return std::all_of(r.B().begin(), r.B().end(), [](const Matrix& m) { return m.norm() == 0.0; });
}

DecompositionResult trivial_result(const SymmetricRealization& working, Index a, Index b) {
  const Index g = working.g();
  ConvexotonicMap q;
  q.h = g;
  q.g_active = g;
  std::vector<Matrix> basis;
  for (Index j = 0; j < g; ++j) {
    q.xi.push_back(Matrix::Zero(g, g));
    q.words.push_back(Word{{Letter{static_cast<int>(j), false}}});
    basis.push_back(working.K() * working.B(j));
  }
  const double value = working.value_at_zero();
  DecompositionResult res{working,
                          Matrix::Identity(g, g),
                          std::move(basis),
                          std::move(q),
                          Matrix::Zero(0, working.d()),
                          Matrix::Zero(working.d(), 0),
                          working,
                          a,
                          b,
                          (1.0 + value) / 2.0,
                          (value - 1.0) / 2.0,
                          true};
  return res;
}

}  // namespace

IndependentReduction independent_reduce(const SymmetricRealization& r, const Tolerances& tol) {
  if (all_zero(r)) {
    throw Error(ErrorKind::ZeroCoefficients, "all B_j vanish; the function is constant");
  }
  const Index d = r.d();
  SpanTracker span(d * d, tol.rank);
  std::vector<Index> chosen;
  for (Index j = 0; j < r.g(); ++j) {
    if (span.admit(vec(r.B(j)))) chosen.push_back(j);
  }
  if (chosen.empty()) {
    throw Error(ErrorKind::ZeroCoefficients, "all B_j vanish; the function is constant");
  }
  std::vector<Matrix> bhat;
  for (Index j : chosen) bhat.push_back(r.B(j));
  const Matrix basis = stack_vecs(bhat);
  const Matrix coords = pinv(basis, tol) * stack_vecs(r.B());  // k x g
  Matrix m = coords.transpose();
  for (std::size_t l = 0; l < chosen.size(); ++l) {
    m.row(chosen[l]).setZero();
    m(chosen[l], static_cast<Index>(l)) = 1.0;
  }
  SymmetricRealization rhat(r.K(), std::move(bhat), r.c(), tol);
  return {std::move(rhat), std::move(m), std::move(chosen)};
}

AlgebraBasis algebra_basis(const std::vector<Matrix>& kb, const Tolerances& tol) {
  AlgebraBasis out;
  if (kb.empty()) return out;
  const Index d = kb.front().rows();
  SpanTracker span(d * d, tol.rank);
  std::vector<std::size_t> level;
  for (std::size_t j = 0; j < kb.size(); ++j) {
    if (span.admit(vec(kb[j]))) {
      level.push_back(out.basis.size());
      out.basis.push_back(kb[j]);
      out.words.push_back(Word{{Letter{static_cast<int>(j), false}}});
    }
  }
  while (!level.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j < kb.size(); ++j) {
      for (std::size_t idx : level) {
        Matrix cand = kb[j] * out.basis[idx];
        if (!span.admit(vec(cand))) continue;
        Word w;
        w.letters.push_back(Letter{static_cast<int>(j), false});
        const Word& tail = out.words[idx];
        w.letters.insert(w.letters.end(), tail.letters.begin(), tail.letters.end());
        next.push_back(out.basis.size());
        out.basis.push_back(std::move(cand));
        out.words.push_back(std::move(w));
      }
    }
    level = std::move(next);
  }
  return out;
}

StructureTensor structure_tensor(const std::vector<Matrix>& basis, const Tolerances& tol) {
  StructureTensor out;
  const Index h = static_cast<Index>(basis.size());
  if (h == 0) return out;
  const Matrix v = stack_vecs(basis);
  const Matrix vdag = pinv(v, tol);
  out.xi.assign(static_cast<std::size_t>(h), Matrix::Zero(h, h));
  for (Index k = 0; k < h; ++k) {
    for (Index j = 0; j < h; ++j) {
      const Vector prod = vec(basis[j] * basis[k]);
      const Vector coords = vdag * prod;
      const double scale = basis[j].norm() * basis[k].norm();
      const double res = (v * coords - prod).norm() / (scale > 0.0 ? scale : 1.0);
      out.residual = std::max(out.residual, res);
      out.xi[static_cast<std::size_t>(k)].row(j) = coords.transpose();
    }
  }
  if (out.residual > tol.verify) {
    throw Error(ErrorKind::NotClosed, "basis is not closed under multiplication (residual " +
                                          std::to_string(out.residual) + ")");
  }
  return out;
}

PsiPair build_psi(Index a, Index b, const Matrix& rho, const Matrix& rho_star, const Matrix& ddag,
                  const Matrix& dstar_dag, const Vector& c) {
  const Index d = a + b;
  if (rho.rows() != b || rho.cols() != a || rho_star.rows() != b || rho_star.cols() != a ||
      ddag.rows() != a || ddag.cols() != a || dstar_dag.rows() != a || dstar_dag.cols() != a ||
      c.size() != d) {
    throw Error(ErrorKind::DimensionMismatch, "angular data does not match (a, b)");
  }
  PsiPair out;
  out.psi = Matrix::Zero(2 * a + 2, d);
  Matrix top(a, d);
  top.leftCols(a) = Matrix::Identity(a, a);
  top.rightCols(b) = rho.adjoint();
  out.psi.topRows(a) = ddag * top;
  out.psi.row(2 * a) = c.adjoint();
  out.psi.row(2 * a + 1) = c.adjoint();

  out.psi_star = Matrix::Zero(d, 2 * a + 2);
  Matrix graph(d, a);
  graph.topRows(a) = Matrix::Identity(a, a);
  graph.bottomRows(b) = rho_star;
  out.psi_star.middleCols(a, a) = graph * dstar_dag;
  out.psi_star.col(2 * a) = c;
  out.psi_star.col(2 * a + 1) = c;
  return out;
}

Matrix decomposition_signature(Index a) {
  Matrix j = Matrix::Identity(2 * a + 2, 2 * a + 2);
  j(2 * a + 1, 2 * a + 1) = -1.0;
  return j;
}

DecompositionResult decompose(const SymmetricRealization& r, const Tolerances& tol) {
  tol.validate();
  const CertificateReport cert = certify_plush(r, tol, {.attach_witness = false});
  if (cert.verdict != Verdict::CertifiedTrue) {
    throw Error(ErrorKind::NotPlush, "realization is not plush at 0 (min eigenvalues " +
                                         std::to_string(cert.min_eig_ran_B) + ", " +
                                         std::to_string(cert.min_eig_ran_Bstar) + ")");
  }
  const NormalizedRealization nr = normalize_signature(r, tol);
  if (nr.b == 0 || all_zero(nr.r)) return trivial_result(nr.r, nr.a, nr.b);

  IndependentReduction ir = independent_reduce(nr.r, tol);
  const SymmetricRealization& w = ir.rhat;
  const Index a = nr.a;
  const Index b = nr.b;
  const Matrix& k = w.K();

  const AngularData left = angular_extension(k, range_B(w, tol), tol);
  const AngularData right = angular_extension(k, range_Bstar(w, tol), tol);

  std::vector<Matrix> kb;
  for (const Matrix& bj : w.B()) kb.push_back(k * bj);
  AlgebraBasis alg = algebra_basis(kb, tol);
  const Index h = static_cast<Index>(alg.basis.size());
  if (h > w.d() * w.d() || h < w.g()) {
    throw Error(ErrorKind::NotClosed, "algebra basis has unexpected size " + std::to_string(h));
  }
  StructureTensor st = structure_tensor(alg.basis, tol);

  PsiPair pp = build_psi(a, b, left.rho, right.rho, left.Ddag, right.Ddag, w.c());
  std::vector<Matrix> coeffs;
  for (const Matrix& cs : alg.basis) coeffs.push_back(pp.psi * cs * k * pp.psi_star);

  const double value = w.value_at_zero();
  const double s = (1.0 + value) / 2.0;
  const double t = (value - 1.0) / 2.0;
  Vector v = Vector::Zero(2 * a + 2);
  v(2 * a) = s;
  v(2 * a + 1) = t;
  SymmetricRealization f(decomposition_signature(a), std::move(coeffs), std::move(v), tol);

  ConvexotonicMap q{h, w.g(), std::move(st.xi), std::move(alg.words)};
  return DecompositionResult{w,
                             std::move(ir.M),
                             std::move(alg.basis),
                             std::move(q),
                             std::move(pp.psi),
                             std::move(pp.psi_star),
                             std::move(f),
                             a,
                             b,
                             s,
                             t,
                             false};
}

namespace {

std::vector<Matrix> active_inputs(const ConvexotonicMap& q, const Matrix& m, const MatrixTuple& x) {
  if (m.rows() != x.g() || m.cols() != q.g_active) {
    throw Error(ErrorKind::DimensionMismatch, "M must be g x g_active");
  }
  const Index n = x.n();
  std::vector<Matrix> y(static_cast<std::size_t>(q.g_active), Matrix::Zero(n, n));
  for (Index l = 0; l < q.g_active; ++l) {
    for (Index j = 0; j < x.g(); ++j) y[static_cast<std::size_t>(l)] += m(j, l) * x[j];
  }
  return y;
}

}  // namespace

MatrixTuple eval_q(const ConvexotonicMap& q, const Matrix& m, const MatrixTuple& x,
                   const Tolerances& tol) {
  const std::vector<Matrix> y = active_inputs(q, m, x);
  const Index n = x.n();
  const Index h = q.h;
  Matrix row = Matrix::Zero(n, h * n);
  Matrix pencil = Matrix::Identity(h * n, h * n);
  for (Index l = 0; l < q.g_active; ++l) {
    row.middleCols(l * n, n) = y[static_cast<std::size_t>(l)];
    pencil -= kron(q.xi[static_cast<std::size_t>(l)], y[static_cast<std::size_t>(l)]);
  }
  const RealVector sv = singular_values(pencil);
  if (sv(sv.size() - 1) <= tol.rank * sv(0)) {
    throw Error(ErrorKind::SingularPencil, "I - Lambda_Xi(y) is not invertible at this point");
  }
  const Matrix out = row * pencil.partialPivLu().inverse();
  std::vector<Matrix> comps;
  for (Index s = 0; s < h; ++s) comps.push_back(out.middleCols(s * n, n));
  return MatrixTuple(std::move(comps));
}

namespace {

double rel(const Matrix& got, const Matrix& want, double scale) {
  return spectral_norm(got - want) / (1.0 + scale);
}

void algebraic_checks(const DecompositionResult& res, VerifyReport& rep, const Tolerances& tol) {
  const SymmetricRealization& w = res.working;
  const Matrix& k = w.K();
  const Matrix j = decomposition_signature(res.a);
  rep.psi_residual = spectral_norm(res.psi_star * j * res.psi);
  const Matrix inner = res.psi.adjoint() * j * res.psi;
  const Matrix outer = res.psi_star * j * res.psi_star.adjoint();
  for (const Matrix& bl : w.B()) {
    for (const Matrix& bj : w.B()) {
      const double scale = spectral_norm(bl) * spectral_norm(bj);
      rep.pb_residual_a = std::max(
          rep.pb_residual_a, rel(bl.adjoint() * k * inner * k * bj, bl.adjoint() * k * bj, scale));
      rep.pb_residual_b = std::max(
          rep.pb_residual_b, rel(bl * k * outer * k * bj.adjoint(), bl * k * bj.adjoint(), scale));
    }
  }
  try {
    rep.closure_residual = structure_tensor(res.basis, tol).residual;
  } catch (const Error&) {
    rep.closure_residual = std::numeric_limits<double>::infinity();
  }
  rep.extension_residual = extension_residual(w, tol);

  std::vector<Matrix> cols;
  for (const Matrix& as : res.f.B()) {
    cols.push_back(as);
    cols.push_back(as.adjoint());
  }
  Index total = 0;
  for (const Matrix& m : cols) total += m.cols();
  Matrix all(res.f.d(), total);
  Index at = 0;
  for (const Matrix& m : cols) {
    all.middleCols(at, m.cols()) = m;
    at += m.cols();
  }
  const KForm form = k_nonneg_check(res.f.K(), orth(all, tol), tol);
  rep.f_convex = form.nonnegative;
  rep.f_min_eig = form.min_eig;
}

}  // namespace

VerifyReport verify_decomposition(const SymmetricRealization& r, const DecompositionResult& res,
                                  const VerifyOptions& opts, const Tolerances& tol) {
  tol.validate();
  if (opts.n_samples < 0 || opts.n_max < 1) {
    throw Error(ErrorKind::InvalidArgument, "need n_samples >= 0 and n_max >= 1");
  }
  if (res.M.rows() != r.g()) {
    throw Error(ErrorKind::DimensionMismatch, "decomposition was built for a different g");
  }
  VerifyReport rep;
  rep.radius = opts.radius > 0.0 ? opts.radius : std::min(plush_radius(r, tol), 0.05);
  rep.h_bound = res.q.h <= res.working.d() * res.working.d();

  if (res.trivial) {
    rep.f_convex = true;
    rep.extension_residual = 0.0;
  } else {
    algebraic_checks(res, rep, tol);
  }

  std::vector<Matrix> kb;
  for (const Matrix& bj : res.working.B()) kb.push_back(res.working.K() * bj);
  for (int i = 0; i < opts.n_samples; ++i) {
    Rng rng(opts.seed, static_cast<std::uint64_t>(i));
    const Index n = rng.uniform_int(1, static_cast<int>(opts.n_max));
    const MatrixTuple x = random_ball_tuple(rng, r.g(), n, rep.radius);
    const Matrix lhs = eval(r, x, tol);
    const MatrixTuple y = eval_q(res.q, res.M, x, tol);
    const Matrix rhs = eval(res.f, y, tol);
    const double residual = spectral_norm(lhs - rhs) / (1.0 + spectral_norm(lhs));
    if (rep.worst_sample < 0 || residual > rep.max_residual) {
      rep.max_residual = residual;
      rep.worst_sample = i;
      rep.worst_x = x;
    }
    if (!res.trivial) {
      // Lambda_A(q(X)) = (psi (x) I) L (I - L)^{-1} (K psi_* (x) I), L = Lambda_{KB}(M^T X).
      const MatrixTuple active(active_inputs(res.q, res.M, x));
      const Matrix l = linear_pencil(kb, active);
      const Index dn = l.rows();
      const Matrix omega = l * (Matrix::Identity(dn, dn) - l).partialPivLu().inverse();
      const Matrix id = Matrix::Identity(n, n);
      const Matrix want = kron(res.psi, id) * omega * kron(res.working.K() * res.psi_star, id);
      const Matrix got = linear_pencil(res.f.B(), y);
      rep.pencil_residual =
          std::max(rep.pencil_residual, rel(got, want, spectral_norm(want)));
    }
    ++rep.samples;
  }

  const double v = tol.verify;
  rep.passed = rep.max_residual <= v && rep.h_bound && rep.f_convex && rep.psi_residual <= v &&
               rep.pb_residual_a <= v && rep.pb_residual_b <= v && rep.closure_residual <= v &&
               rep.pencil_residual <= v && rep.extension_residual <= v;
  return rep;
}

namespace {

Json matrices_to_json(const std::vector<Matrix>& mats) {
  Json out = Json::array();
  for (const Matrix& m : mats) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<Matrix> matrices_from_json(const Json& j, std::string_view what) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, std::string(what) + " must be an array");
  std::vector<Matrix> out;
  for (const Json& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json words_to_json(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(word_to_json(w));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("decomposition is missing \"") + key + "\"");
  }
  return j[key];
}

}  // namespace

Json decomposition_to_json(const DecompositionResult& res) {
  Json q{{"h", res.q.h},
         {"g_active", res.q.g_active},
         {"xi", matrices_to_json(res.q.xi)},
         {"words", words_to_json(res.q.words)}};
  return Json{{"working", realization_to_json(res.working)},
              {"M", matrix_to_json(res.M)},
              {"basis", matrices_to_json(res.basis)},
              {"q", std::move(q)},
              {"psi", matrix_to_json(res.psi)},
              {"psi_star", matrix_to_json(res.psi_star)},
              {"f", realization_to_json(res.f)},
              {"a", res.a},
              {"b", res.b},
              {"h", res.q.h},
              {"s", res.s},
              {"t", res.t},
              {"trivial", res.trivial}};
}

DecompositionResult decomposition_from_json(const Json& j, const Tolerances& tol) {
  reject_unknown_keys(j, {"working", "M", "basis", "q", "psi", "psi_star", "f", "a", "b", "h", "s",
                          "t", "trivial"},
                      "decomposition");
  const Json& qj = field(j, "q");
  reject_unknown_keys(qj, {"h", "g_active", "xi", "words"}, "convexotonic map");
  ConvexotonicMap q;
  try {
    q.h = field(qj, "h").get<Index>();
    q.g_active = field(qj, "g_active").get<Index>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  q.xi = matrices_from_json(field(qj, "xi"), "xi");
  const Json& words = field(qj, "words");
  if (!words.is_array()) throw Error(ErrorKind::ParseError, "words must be an array");
  for (const Json& w : words) q.words.push_back(word_from_json(w));
  if (static_cast<Index>(q.xi.size()) != q.h || static_cast<Index>(q.words.size()) != q.h) {
    throw Error(ErrorKind::DimensionMismatch, "q needs h structure matrices and h words");
  }
  for (const Matrix& x : q.xi) {
    if (x.rows() != q.h || x.cols() != q.h) {
      throw Error(ErrorKind::DimensionMismatch, "each Xi_k must be h x h");
    }
  }
  DecompositionResult res{realization_from_json(field(j, "working"), tol),
                          matrix_from_json(field(j, "M")),
                          matrices_from_json(field(j, "basis"), "basis"),
                          std::move(q),
                          matrix_from_json(field(j, "psi")),
                          matrix_from_json(field(j, "psi_star")),
                          realization_from_json(field(j, "f"), tol),
                          0,
                          0,
                          0.0,
                          0.0,
                          false};
  try {
    res.a = field(j, "a").get<Index>();
    res.b = field(j, "b").get<Index>();
    res.s = field(j, "s").get<double>();
    res.t = field(j, "t").get<double>();
    res.trivial = field(j, "trivial").get<bool>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (res.M.cols() != res.q.g_active || res.f.g() != res.q.h) {
    throw Error(ErrorKind::DimensionMismatch, "M, q and f sizes are inconsistent");
  }
  return res;
}

}  // namespace ncplush
