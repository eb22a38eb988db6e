#pragma once

// Minimality of symmetric realizations: the span of w(B_1K, .., B_gK,
// B_1^*K, .., B_g^*K) c over all words must be all of C^d.

#include "ncplush/realization.hpp"

namespace ncplush {

/// Seeded closure: start at {c}, apply every B_jK and B_j^*K, re-orthonormalize,
/// stop once the dimension is stable. Never more than d rounds.
Subspace krylov_span(const SymmetricRealization& r, const Tolerances& tol = {});

bool is_minimal(const SymmetricRealization& r, const Tolerances& tol = {});

struct ReductionResult {
  SymmetricRealization realization;
  Index original_d = 0;
  int iterations = 0;
  bool changed = false;
  /// Largest ||r(X) - r'(X)|| / (1 + ||r(X)||) over the check samples.
  double max_residual = 0.0;
  int samples = 0;
};

/// Minimal realization of the same function. Inputs that are already
/// minimal come back unchanged. Throws ReductionFailed when the quotient
/// iteration does not settle within d rounds or the sampled agreement check
/// fails.
ReductionResult minimal_reduce_with_report(const SymmetricRealization& r,
                                           const Tolerances& tol = {});
SymmetricRealization minimal_reduce(const SymmetricRealization& r, const Tolerances& tol = {});

}  // namespace ncplush
