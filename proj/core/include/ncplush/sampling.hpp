#pragma once

// Deterministic random draws. Every stream is derived from a master seed and
// a stream index, so results never depend on evaluation order.

#include <cstdint>
#include <random>

#include "ncplush/realization.hpp"

namespace ncplush {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  Complex complex_normal();
  int uniform_int(int lo, int hi);  // inclusive bounds

  Matrix gaussian(Index rows, Index cols);
  Vector gaussian_vector(Index n);

 private:
  std::mt19937_64 engine_;
};

/// Gaussian g-tuple of n x n matrices rescaled so its column norm equals
/// u * radius with u ~ U(0, 1), i.e. it lies strictly inside the column ball.
MatrixTuple random_ball_tuple(Rng& rng, Index g, Index n, double radius);

/// Gaussian tuple normalized to unit column norm.
MatrixTuple random_unit_tuple(Rng& rng, Index g, Index n);

/// Sum of spectral norms of the B_j.
double coefficient_norm_sum(const SymmetricRealization& r);

}  // namespace ncplush
