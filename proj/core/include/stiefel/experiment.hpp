#pragma once

// Accuracy, convergence-order and timing experiments comparing retractions
// against the Euclidean-metric geodesic.

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "stiefel/retraction.hpp"

namespace stiefel::experiments {

struct ExperimentConfig {
  Eigen::Index n = 1000;
  Eigen::Index p = 400;
  double distance = std::numbers::pi / 2;
  int steps = 51;
  std::uint64_t seed = 0;
  std::vector<RetractionKind> kinds = {RetractionKind::pf(), RetractionKind::pl()};
  int repeats = 100;
  int warmup = 3;

  /// Throws PreconditionError unless steps >= 2, 1 <= p <= n, distance > 0
  /// and repeats >= 1.
  void validate() const;
};

/// U1 = Exp_{U0}(xi) under the Euclidean metric, ||xi||_F = distance.
struct Triple {
  StiefelPoint u0;
  TangentVector xi;
  StiefelPoint u1;
};

/// Deterministic in (n, p, distance, seed).
Triple gen_triple(const ExperimentConfig& cfg);

struct ErrorCurveRecord {
  double t = 0.0;
  std::vector<double> errors;  // one per kind, same order as ErrorCurve::kinds
};

struct ErrorCurve {
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::uint64_t seed = 0;
  std::vector<RetractionKind> kinds;
  std::vector<ErrorCurveRecord> records;

  /// max_k error for kinds[index].
  double max_error(std::size_t index) const;
};

/// For t_k = k / (steps - 1): ||Exp_{U0}(t_k xi) - R_{U0}(t_k xi_R)||_F with
/// xi_R = R^{-1}_{U0}(U1). Every kind must have an inverse.
ErrorCurve error_curve(const Triple& triple, std::span<const RetractionKind> kinds, int steps,
                       std::uint64_t seed = 0);

/// count log-spaced values from lo to hi (inclusive).
std::vector<double> log_grid(double lo, double hi, int count);

/// Least-squares slope of log ||R(t xi) - Exp_beta(t xi)||_F against log t.
double convergence_slope(const TangentVector& xi, const RetractionKind& kind, MetricParam metric,
                         std::span<const double> t_grid);

struct OrderRecord {
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::uint64_t seed = 0;
  RetractionKind kind;
  double beta = 1.0;
  int trial = 0;
  double slope = 0.0;
};

/// Slopes over `trials` random unit tangents; trial i uses derived seeds.
std::vector<OrderRecord> order_study(const ExperimentConfig& cfg, const RetractionKind& kind,
                                     MetricParam metric, int trials,
                                     std::span<const double> t_grid);

struct TimingRecord {
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::uint64_t seed = 0;
  RetractionKind kind;
  int samples = 0;
  double mean_seconds = 0.0;
  double roundtrip_norm_mean = 0.0;
};

/// Mean wall-clock time of R^{-1}_{U0}(U1) over cfg.repeats fresh triples
/// (after cfg.warmup untimed evaluations), plus the mean of
/// ||R^{-1}(R(xi)) - xi||_F over the same triples.
TimingRecord timing_run(const ExperimentConfig& cfg, const RetractionKind& kind);

/// timing_run for several kinds sharing the same triples; kinds are timed
/// alternately on each triple.
std::vector<TimingRecord> timing_runs(const ExperimentConfig& cfg,
                                      std::span<const RetractionKind> kinds);

}  // namespace stiefel::experiments
