#pragma once

// Randomized validation: Hessian sampling on free balls, explicit witnesses
// against plushness, and fixture generators.

#include <cstdint>
#include <optional>

#include "ncplush/realization.hpp"

namespace ncplush {

/// (X, H) with complex_hessian_eval(r, X, H) having eigenvalue hess_eig < 0,
/// and v the corresponding eigenvector.
struct Witness {
  MatrixTuple X;
  MatrixTuple H;
  Vector v;
  double hess_eig = 0.0;
  double scale = 1.0;  // 1 + ||Hessian||
  bool star_side = false;  // failure found on ran B^* rather than ran B
  bool probe = false;      // X = 0 construction, no random search
  int attempts = 0;
  Index n = 0;             // size of the random block
};

struct SampleDomain {
  Index n_max = 3;
  double radius = 0.1;
  int n_samples = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SampleReport {
  int samples = 0;
  int probes = 0;
  double min_eig = 0.0;
  /// min over samples of eig / (1 + ||Hessian||).
  double min_relative = 0.0;
  int argmin = -1;  // sample index; probes are numbered after the random draws
  MatrixTuple argmin_x;
  MatrixTuple argmin_h;
};

/// Random (X, H) with X in the column ball and H of unit column norm, plus
/// the deterministic probes X = 0 in M_2, H_j = [[0,0],[1,0]] when n_max >= 2.
SampleReport sample_hessian(const SymmetricRealization& r, const SampleDomain& dom,
                            const Tolerances& tol = {});

/// Witness against plushness, or nothing when both PKP and P_*KP_* are PSD.
/// Throws WitnessSearchFailed when the search budget runs out.
std::optional<Witness> find_witness(const SymmetricRealization& r, const SampleDomain& dom,
                                    const Tolerances& tol = {});

/// B_j = [I; rho] E_j [I rho_*^*], K = diag(I_a, -I_b).
SymmetricRealization plush_from_angular(const Matrix& rho, const Matrix& rho_star,
                                        const std::vector<Matrix>& e, const Vector& c);

/// Random plush realization: rho, rho_* Gaussian contractions of norm <= 0.9.
SymmetricRealization gen_plush(Index a, Index b, Index g, std::uint64_t seed);

/// Random signature split, Gaussian B, unit c. No structure.
SymmetricRealization gen_random(Index d, Index g, std::uint64_t seed);

}  // namespace ncplush
