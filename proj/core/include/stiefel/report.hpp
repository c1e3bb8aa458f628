#pragma once

// CSV and plain-text output for experiment results.
//
//   curve.csv       n,p,seed,kind,t,error            one row per (kind, t_k)
//   curve_wide.csv  n,p,seed,t,error_<kind>...       one row per t_k
//   maxerr.csv      n,p,seed,kind,max_error
//   order.csv       n,p,seed,kind,beta,trial,slope
//   timing.csv      n,p,seed,kind,mean_seconds,roundtrip_norm

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stiefel/experiment.hpp"

namespace stiefel::report {

/// Shortest round-trip decimal representation (locale independent).
std::string format_number(double value);

void write_curve_csv(std::ostream& out, std::span<const experiments::ErrorCurve> curves);
void write_curve_wide_csv(std::ostream& out, std::span<const experiments::ErrorCurve> curves);
void write_maxerr_csv(std::ostream& out, std::span<const experiments::ErrorCurve> curves);
void write_order_csv(std::ostream& out, std::span<const experiments::OrderRecord> records);
void write_timing_csv(std::ostream& out, std::span<const experiments::TimingRecord> records);

/// Sections left empty are not written; an engaged but empty section yields
/// header-only files.
struct Report {
  std::optional<std::vector<experiments::ErrorCurve>> curves;
  std::optional<std::vector<experiments::OrderRecord>> orders;
  std::optional<std::vector<experiments::TimingRecord>> timings;
};

/// Error-maxima table, convergence-order table and timing table.
std::string summary_text(const Report& report);

/// Writes the CSV files for every engaged section into `dir` (created if
/// missing) and returns their paths. Throws std::runtime_error naming the
/// path on I/O failure.
std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& dir);

}  // namespace stiefel::report
