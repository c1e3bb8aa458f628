#include "stiefel/experiment.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "stiefel/errors.hpp"
#include "stiefel/random.hpp"

namespace stiefel::experiments {
namespace {

// Stream indices for derive_seed.
constexpr std::uint64_t kPointStream = 0;
constexpr std::uint64_t kTangentStream = 1;
constexpr std::uint64_t kTrialStream = 100;
constexpr std::uint64_t kRepeatStream = 1000;
constexpr std::uint64_t kWarmupStream = 100000;

Triple make_triple(Eigen::Index n, Eigen::Index p, double distance, std::uint64_t seed) {
  StiefelPoint u0 = rand_point(n, p, derive_seed(seed, kPointStream));
  TangentVector xi = rand_tangent(u0, distance, derive_seed(seed, kTangentStream));
  StiefelPoint u1 = exp_beta(xi, MetricParam::euclidean());
  return {std::move(u0), std::move(xi), std::move(u1)};
}

}  // namespace

void ExperimentConfig::validate() const {
  std::ostringstream os;
  if (steps < 2) os << "steps must be >= 2; ";
  if (p < 1 || n < p) os << "need 1 <= p <= n; ";
  if (!(distance > 0.0)) os << "distance must be positive; ";
  if (repeats < 1) os << "repeats must be >= 1; ";
  if (warmup < 0) os << "warmup must be >= 0; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw PreconditionError("invalid experiment config: " + msg);
}

Triple gen_triple(const ExperimentConfig& cfg) {
  if (cfg.p < 1 || cfg.n < cfg.p || !(cfg.distance >= 0.0)) {
    throw PreconditionError("gen_triple: invalid dimensions or distance");
  }
  return make_triple(cfg.n, cfg.p, cfg.distance, cfg.seed);
}

double ErrorCurve::max_error(std::size_t index) const {
  double out = 0.0;
  for (const auto& rec : records) out = std::max(out, rec.errors.at(index));
  return out;
}

ErrorCurve error_curve(const Triple& triple, std::span<const RetractionKind> kinds, int steps,
                       std::uint64_t seed) {
  if (steps < 2) throw PreconditionError("error_curve: steps must be >= 2");
  std::vector<TangentVector> xi_r;
  xi_r.reserve(kinds.size());
  for (const auto& kind : kinds) {
    if (!kind.has_inverse()) {
      throw PreconditionError("error_curve: " + kind.name() + " has no inverse");
    }
    xi_r.push_back(inverse_retract(kind, triple.u0, triple.u1));
  }

  ErrorCurve curve;
  curve.n = triple.u0.n();
  curve.p = triple.u0.p();
  curve.seed = seed;
  curve.kinds.assign(kinds.begin(), kinds.end());
  curve.records.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) / (steps - 1);
    const StiefelPoint geo = exp_beta(triple.xi.scaled(t), MetricParam::euclidean());
    ErrorCurveRecord rec{t, {}};
    rec.errors.reserve(kinds.size());
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const StiefelPoint ret = retract(kinds[i], xi_r[i].scaled(t));
      rec.errors.push_back((geo.matrix() - ret.matrix()).norm());
    }
    curve.records.push_back(std::move(rec));
  }
  return curve;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw PreconditionError("log_grid: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> grid(count);
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = std::exp(std::log(lo) + i * step);
  return grid;
}

double convergence_slope(const TangentVector& xi, const RetractionKind& kind, MetricParam metric,
                         std::span<const double> t_grid) {
  if (t_grid.size() < 2) throw PreconditionError("convergence_slope: need >= 2 grid points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const double t : t_grid) {
    const TangentVector step = xi.scaled(t);
    const double err = (retract(kind, step).matrix() - exp_beta(step, metric).matrix()).norm();
    const double x = std::log(t);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(t_grid.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<OrderRecord> order_study(const ExperimentConfig& cfg, const RetractionKind& kind,
                                     MetricParam metric, int trials,
                                     std::span<const double> t_grid) {
  std::vector<OrderRecord> out;
  out.reserve(trials);
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, kTrialStream + trial);
    const StiefelPoint u0 = rand_point(cfg.n, cfg.p, derive_seed(trial_seed, kPointStream));
    const TangentVector xi = rand_tangent(u0, 1.0, derive_seed(trial_seed, kTangentStream));
    out.push_back({cfg.n, cfg.p, cfg.seed, kind, metric.beta, trial,
                   convergence_slope(xi, kind, metric, t_grid)});
  }
  return out;
}

std::vector<TimingRecord> timing_runs(const ExperimentConfig& cfg,
                                      std::span<const RetractionKind> kinds) {
  cfg.validate();
  for (const auto& kind : kinds) {
    if (!kind.has_inverse()) {
      throw PreconditionError("timing_run: " + kind.name() + " has no inverse");
    }
  }
  using Clock = std::chrono::steady_clock;

  const auto triple_at = [&](std::uint64_t stream) {
    return make_triple(cfg.n, cfg.p, cfg.distance, derive_seed(cfg.seed, stream));
  };

  // Keeps the timed results observable.
  double sink = 0.0;
  for (int w = 0; w < cfg.warmup; ++w) {
    const Triple tr = triple_at(kWarmupStream + w);
    for (const auto& kind : kinds) {
      sink += inverse_retract(kind, tr.u0, tr.u1).matrix()(0, 0);
    }
  }

  std::vector<double> seconds(kinds.size(), 0.0);
  std::vector<double> roundtrip(kinds.size(), 0.0);
  for (int r = 0; r < cfg.repeats; ++r) {
    const Triple tr = triple_at(kRepeatStream + r);
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const auto start = Clock::now();
      const TangentVector xi_r = inverse_retract(kinds[i], tr.u0, tr.u1);
      const auto stop = Clock::now();
      seconds[i] += std::chrono::duration<double>(stop - start).count();
      sink += xi_r.matrix()(0, 0);

      const StiefelPoint forward = retract(kinds[i], tr.xi);
      const TangentVector back = inverse_retract(kinds[i], tr.u0, forward);
      roundtrip[i] += (back.matrix() - tr.xi.matrix()).norm();
    }
  }
  if (!std::isfinite(sink)) {
    throw DomainError("timing_run: non-finite inverse retraction output");
  }

  std::vector<TimingRecord> out;
  out.reserve(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    TimingRecord rec;
    rec.n = cfg.n;
    rec.p = cfg.p;
    rec.seed = cfg.seed;
    rec.kind = kinds[i];
    rec.samples = cfg.repeats;
    rec.mean_seconds = seconds[i] / cfg.repeats;
    rec.roundtrip_norm_mean = roundtrip[i] / cfg.repeats;
    out.push_back(rec);
  }
  return out;
}

TimingRecord timing_run(const ExperimentConfig& cfg, const RetractionKind& kind) {
  return timing_runs(cfg, std::span<const RetractionKind>(&kind, 1)).front();
}

}  // namespace stiefel::experiments
