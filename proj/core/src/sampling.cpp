#include "ncplush/sampling.hpp"

#include <cmath>

#include "ncplush/errors.hpp"

namespace ncplush {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1))) {}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

int Rng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Matrix Rng::gaussian(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Vector Rng::gaussian_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

MatrixTuple random_unit_tuple(Rng& rng, Index g, Index n) {
  std::vector<Matrix> mats;
  for (Index j = 0; j < g; ++j) mats.push_back(rng.gaussian(n, n));
  MatrixTuple t(std::move(mats));
  const double norm = t.column_norm();
  return norm > 0.0 ? t.scaled(1.0 / norm) : t;
}

MatrixTuple random_ball_tuple(Rng& rng, Index g, Index n, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "ball radius must be finite and positive");
  }
  MatrixTuple unit = random_unit_tuple(rng, g, n);
  const double u = rng.uniform(0.0, 1.0);
  return unit.scaled(u * radius);
}

double coefficient_norm_sum(const SymmetricRealization& r) {
  double total = 0.0;
  for (const Matrix& bj : r.B()) total += spectral_norm(bj);
  return total;
}

}  // namespace ncplush
