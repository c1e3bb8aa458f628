#pragma once

#include <cstdint>

#include "stiefel/matfun.hpp"

namespace stiefel {

/// A point on St(n, p): an n x p matrix with orthonormal columns.
class StiefelPoint {
 public:
  /// Validates ||U^T U - I||_F <= tol::orth(p); throws ValidationError
  /// carrying the defect otherwise.
  static StiefelPoint check(Matrix u);

  /// Wraps a matrix the caller knows to be orthonormal (outputs of the maps
  /// in this library). No validation.
  static StiefelPoint unchecked(Matrix u) { return StiefelPoint(std::move(u)); }

  /// The canonical point E = [I_p; 0].
  static StiefelPoint canonical(Eigen::Index n, Eigen::Index p);

  const Matrix& matrix() const noexcept { return u_; }
  Eigen::Index n() const noexcept { return u_.rows(); }
  Eigen::Index p() const noexcept { return u_.cols(); }

  /// ||U^T U - I_p||_F
  double orthonormality_defect() const;

 private:
  explicit StiefelPoint(Matrix u) : u_(std::move(u)) {}

  Matrix u_;
};

/// A tangent vector Xi at a base point, U^T Xi skew-symmetric.
class TangentVector {
 public:
  /// Validates shapes and ||U^T Xi + Xi^T U||_F <= tol::skew(p).
  static TangentVector check(StiefelPoint base, Matrix xi);
  static TangentVector unchecked(StiefelPoint base, Matrix xi) {
    return TangentVector(std::move(base), std::move(xi));
  }
  static TangentVector zero(StiefelPoint base);

  const StiefelPoint& base() const noexcept { return base_; }
  const Matrix& matrix() const noexcept { return xi_; }

  /// The p x p block U^T Xi (skew-symmetrized).
  Matrix vertical() const;
  /// (I - U U^T) Xi, the component orthogonal to span(U).
  Matrix horizontal() const;

  TangentVector scaled(double t) const { return TangentVector(base_, t * xi_); }
  double frobenius_norm() const { return xi_.norm(); }

 private:
  TangentVector(StiefelPoint base, Matrix xi) : base_(std::move(base)), xi_(std::move(xi)) {}

  StiefelPoint base_;
  Matrix xi_;
};

/// Parameter of the metric family; beta = 1/2 canonical, beta = 1 Euclidean.
struct MetricParam {
  double beta = 1.0;

  static constexpr MetricParam canonical() { return {0.5}; }
  static constexpr MetricParam euclidean() { return {1.0}; }

  friend bool operator==(const MetricParam&, const MetricParam&) = default;
};

/// Coordinates (A, B) in Skew(p) x R^{(n-p) x p}.
struct ChartCoordinates {
  Matrix a;
  Matrix b;
};

StiefelPoint check_point(const Matrix& u);

/// Xi = Z - U sym(U^T Z).
TangentVector project_tangent(const StiefelPoint& base, const Matrix& z);

/// Orthonormalized Gaussian n x p matrix (Householder QR, R with positive
/// diagonal). Deterministic in seed.
StiefelPoint rand_point(Eigen::Index n, Eigen::Index p, std::uint64_t seed);

/// Projected Gaussian tangent vector scaled to Frobenius norm norm_target.
TangentVector rand_tangent(const StiefelPoint& base, double norm_target, std::uint64_t seed);

/// Metric inner product; only beta in {1/2, 1} is supported.
double inner(const TangentVector& xi, const TangentVector& eta, MetricParam metric);
double norm(const TangentVector& xi, MetricParam metric);

/// Riemannian exponential of the beta-metric,
///   Exp_U(xi) = [U Q] expm([2bA, -R^T; R, 0]) [I; 0] expm((1 - 2b) A),
/// with A = U^T xi and Q R the thin QR of (I - U U^T) xi. Costs O(n p^2).
StiefelPoint exp_beta(const TangentVector& xi, MetricParam metric);

}  // namespace stiefel
