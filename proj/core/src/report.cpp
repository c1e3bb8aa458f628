#include "stiefel/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stiefel::report {
namespace {

using experiments::ErrorCurve;
using experiments::OrderRecord;
using experiments::TimingRecord;

std::string column_name(const RetractionKind& kind) {
  std::string name = kind.name();
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return "error_" + name;
}

void write_file(const std::filesystem::path& path, const auto& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string sci(double value, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, value);
  return buf;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_curve_csv(std::ostream& out, std::span<const ErrorCurve> curves) {
  out << "n,p,seed,kind,t,error\n";
  for (const auto& curve : curves) {
    for (std::size_t i = 0; i < curve.kinds.size(); ++i) {
      const std::string kind = curve.kinds[i].name();
      for (const auto& rec : curve.records) {
        out << curve.n << ',' << curve.p << ',' << curve.seed << ',' << kind << ','
            << format_number(rec.t) << ',' << format_number(rec.errors[i]) << '\n';
      }
    }
  }
}

void write_curve_wide_csv(std::ostream& out, std::span<const ErrorCurve> curves) {
  out << "n,p,seed,t";
  if (!curves.empty()) {
    for (const auto& kind : curves.front().kinds) out << ',' << column_name(kind);
  }
  out << '\n';
  for (const auto& curve : curves) {
    for (const auto& rec : curve.records) {
      out << curve.n << ',' << curve.p << ',' << curve.seed << ',' << format_number(rec.t);
      for (const double e : rec.errors) out << ',' << format_number(e);
      out << '\n';
    }
  }
}

void write_maxerr_csv(std::ostream& out, std::span<const ErrorCurve> curves) {
  out << "n,p,seed,kind,max_error\n";
  for (const auto& curve : curves) {
    for (std::size_t i = 0; i < curve.kinds.size(); ++i) {
      out << curve.n << ',' << curve.p << ',' << curve.seed << ',' << curve.kinds[i].name() << ','
          << format_number(curve.max_error(i)) << '\n';
    }
  }
}

void write_order_csv(std::ostream& out, std::span<const OrderRecord> records) {
  out << "n,p,seed,kind,beta,trial,slope\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.p << ',' << r.seed << ',' << r.kind.name() << ','
        << format_number(r.beta) << ',' << r.trial << ',' << format_number(r.slope) << '\n';
  }
}

void write_timing_csv(std::ostream& out, std::span<const TimingRecord> records) {
  out << "n,p,seed,kind,mean_seconds,roundtrip_norm\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.p << ',' << r.seed << ',' << r.kind.name() << ','
        << format_number(r.mean_seconds) << ',' << format_number(r.roundtrip_norm_mean) << '\n';
  }
}

std::string summary_text(const Report& report) {
  std::ostringstream os;
  if (report.curves && !report.curves->empty()) {
    os << "Error maxima of the retraction curves (||Exp(t xi) - R(t xi_R)||_F)\n";
    os << "     n      p";
    for (const auto& kind : report.curves->front().kinds) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %14s", ("max " + kind.name()).c_str());
      os << buf;
    }
    os << '\n';
    for (const auto& curve : *report.curves) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%6ld %6ld", static_cast<long>(curve.n),
                    static_cast<long>(curve.p));
      os << buf;
      for (std::size_t i = 0; i < curve.kinds.size(); ++i) {
        std::snprintf(buf, sizeof buf, "  %14s", sci(curve.max_error(i), 3).c_str());
        os << buf;
      }
      os << '\n';
    }
    os << '\n';
  }
  if (report.orders && !report.orders->empty()) {
    struct Stats {
      double sum = 0.0, lo = 1e300, hi = -1e300;
      int count = 0;
    };
    std::map<std::pair<std::string, double>, Stats> groups;
    for (const auto& r : *report.orders) {
      auto& s = groups[{r.kind.name(), r.beta}];
      s.sum += r.slope;
      s.lo = std::min(s.lo, r.slope);
      s.hi = std::max(s.hi, r.slope);
      ++s.count;
    }
    os << "Convergence order (log-log slope of ||R(t xi) - Exp_beta(t xi)||_F)\n";
    os << "kind        beta   trials   mean slope    min      max\n";
    for (const auto& [key, s] : groups) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%-10s %5.2f %8d %12.4f %8.4f %8.4f\n", key.first.c_str(),
                    key.second, s.count, s.sum / s.count, s.lo, s.hi);
      os << buf;
    }
    os << '\n';
  }
  if (report.timings && !report.timings->empty()) {
    os << "Average inverse retraction time (pairs generated as in the accuracy run)\n";
    os << "     n      p  retraction   samples   average time   avg ||R^-1(R(xi)) - xi||_F\n";
    for (const auto& r : *report.timings) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%6ld %6ld  inv. %-8s %7d %13.4fs   %s\n",
                    static_cast<long>(r.n), static_cast<long>(r.p), r.kind.name().c_str(),
                    r.samples, r.mean_seconds, sci(r.roundtrip_norm_mean).c_str());
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir.string() +
                             "': " + ec.message());
  }
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const char* name, const auto& writer) {
    const auto path = dir / name;
    write_file(path, writer);
    written.push_back(path);
  };
  if (report.curves) {
    const std::span<const ErrorCurve> curves(*report.curves);
    emit("curve.csv", [&](std::ostream& o) { write_curve_csv(o, curves); });
    emit("curve_wide.csv", [&](std::ostream& o) { write_curve_wide_csv(o, curves); });
    emit("maxerr.csv", [&](std::ostream& o) { write_maxerr_csv(o, curves); });
  }
  if (report.orders) {
    emit("order.csv", [&](std::ostream& o) { write_order_csv(o, *report.orders); });
  }
  if (report.timings) {
    emit("timing.csv", [&](std::ostream& o) { write_timing_csv(o, *report.timings); });
  }
  return written;
}

}  // namespace stiefel::report
