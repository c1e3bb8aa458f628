#pragma once

#include <string>
#include <string_view>

#include "stiefel/manifold.hpp"

namespace stiefel {

enum class RetractionTag { kPolarFactor, kPolarLight, kPolarLightCayley, kExp };

/// Selects a retraction; kExp carries the metric of the exponential.
struct RetractionKind {
  RetractionTag tag = RetractionTag::kPolarLight;
  MetricParam metric = MetricParam::euclidean();

  static constexpr RetractionKind pf() { return {RetractionTag::kPolarFactor, {}}; }
  static constexpr RetractionKind pl() { return {RetractionTag::kPolarLight, {}}; }
  static constexpr RetractionKind pl_cayley() { return {RetractionTag::kPolarLightCayley, {}}; }
  static constexpr RetractionKind exp(MetricParam m) { return {RetractionTag::kExp, m}; }

  /// "PF", "PL", "PL_CAYLEY", "EXP(<beta>)".
  std::string name() const;
  /// Accepts pf, pl, pl_cayley (or pl_cay), exp, exp:<beta>; case-insensitive.
  static RetractionKind parse(std::string_view text);

  bool has_inverse() const noexcept { return tag != RetractionTag::kExp; }

  friend bool operator==(const RetractionKind&, const RetractionKind&) = default;
};

// Polar factor retraction: (U + xi)(I + xi^T xi)^{-1/2}.
StiefelPoint pf_ret(const TangentVector& xi);
// xi = U1 X - U with C X + X C^T = 2I, C = U^T U1. Throws DomainError when the
// Sylvester equation is degenerate or X is not positive definite.
TangentVector pf_inv(const StiefelPoint& base, const StiefelPoint& u1);

/// Polar-light retraction
///   (U (expm(A) - A) + xi)(I + B^T B)^{-1/2},  A = U^T xi,  B^T B = xi^T (I - U U^T) xi.
/// Only p x p matrix functions are evaluated.
///
/// Its closed-form inverse, with the SVD  U^T U1 = M S R^T,
///   xi = U (logm(M R^T) - M R^T) + U1 R S^{-1} R^T.
/// M R^T is the orthogonal polar factor of U^T U1 (the Procrustes rotation
/// from U1 to U). Throws DomainError if the smallest singular value of U^T U1
/// is <= 1e-8, if det(M R^T) < 0, or if M R^T has a rotation angle near pi.
StiefelPoint pl_ret(const TangentVector& xi);
TangentVector pl_inv(const StiefelPoint& base, const StiefelPoint& u1);

/// Chart around E = [I_p; 0]: U = [U1; U2] -> (logm(polar(U1)), U2 (U1^T U1)^{-1/2}).
ChartCoordinates chart_at_E(const StiefelPoint& u);
/// Inverse of chart_at_E: (A, B) -> [expm(A); B] (I + B^T B)^{-1/2}.
StiefelPoint param_at_E(const ChartCoordinates& coords);

/// pl_ret / pl_inv with expm and logm replaced by the Cayley transform and
/// its inverse.
StiefelPoint pl_cay_ret(const TangentVector& xi);
TangentVector pl_cay_inv(const StiefelPoint& base, const StiefelPoint& u1);

StiefelPoint retract(const RetractionKind& kind, const TangentVector& xi);
/// Throws PreconditionError for kinds without a closed-form inverse.
TangentVector inverse_retract(const RetractionKind& kind, const StiefelPoint& base,
                              const StiefelPoint& u1);

}  // namespace stiefel
