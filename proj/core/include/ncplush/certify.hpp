#pragma once

// K-geometry and the projection certificates for plushness and convexity.

#include <optional>

#include "ncplush/oracle.hpp"

namespace ncplush {

/// Graph data of a maximal K-nonnegative subspace: ran [I_a; rho].
struct AngularData {
  Index a = 0;
  Index b = 0;
  Matrix rho;  // b x a
  Subspace subspace;
  Matrix D;     // sqrt(I - rho^* rho)
  Matrix Ddag;  // pseudoinverse of D
};

enum class Verdict { CertifiedTrue, CertifiedFalse };

const char* to_string(Verdict v);

enum class CertificateKind { Plush, Convex };

struct CertificateReport {
  CertificateKind kind = CertificateKind::Plush;
  Verdict verdict = Verdict::CertifiedFalse;
  double min_eig_ran_B = 0.0;      // plush: lambda_min(PKP)
  double min_eig_ran_Bstar = 0.0;  // plush: lambda_min(P_*KP_*)
  double min_eig_sum = 0.0;        // convex: lambda_min(QKQ)
  bool minimal = false;
  Tolerances tolerances;
  std::optional<Witness> witness;
};

struct NormalizedRealization {
  SymmetricRealization r;
  Matrix u;  // unitary with r = original.conjugated(u)
  Index a = 0;
  Index b = 0;
};

/// Unitary change of coordinates bringing K to diag(I_a, -I_b).
NormalizedRealization normalize_signature(const SymmetricRealization& r,
                                          const Tolerances& tol = {});

struct KForm {
  bool nonnegative = false;
  double min_eig = 0.0;
};

/// psd_check of V^* K V on an orthonormal basis V of s.
KForm k_nonneg_check(const Matrix& k, const Subspace& s, const Tolerances& tol = {});

/// K must already be diag(I_a, -I_b). Throws NotKNonnegative.
AngularData angular_extension(const Matrix& k, const Subspace& s, const Tolerances& tol = {});

/// Spans of the columns of all B_j, resp. all B_j^*.
Subspace range_B(const SymmetricRealization& r, const Tolerances& tol = {});
Subspace range_Bstar(const SymmetricRealization& r, const Tolerances& tol = {});

struct CertifyOptions {
  bool attach_witness = true;
  SampleDomain witness_domain{};
};

CertificateReport certify_plush(const SymmetricRealization& r, const Tolerances& tol = {},
                                const CertifyOptions& opts = {});
CertificateReport certify_convex(const SymmetricRealization& r, const Tolerances& tol = {});

/// Column-ball radius on which PDelta(X)P and P_*Delta(X)P_* stay PSD.
/// +infinity when every B_j vanishes. Throws NotCertified.
double plush_radius(const SymmetricRealization& r, const Tolerances& tol = {});

/// max_j ||P B_j P_* - B_j|| / (1 + ||B_j||) for the maximal extensions
/// of ran B and ran B^*. Requires a plush certificate.
double extension_residual(const SymmetricRealization& r, const Tolerances& tol = {});

}  // namespace ncplush
