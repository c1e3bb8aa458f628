#include "stiefel/retraction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "stiefel/errors.hpp"

namespace stiefel {
namespace {

// Singular values of U^T U1 at or below this make the polar-light chart
// degenerate.
constexpr double kSingularFloor = 1e-8;

Matrix identity(Eigen::Index p) { return Matrix::Identity(p, p); }

template <class Twist>
StiefelPoint pl_forward(const TangentVector& xi, Twist twist) {
  const Matrix& u = xi.base().matrix();
  const Eigen::Index p = u.cols();
  const Matrix a = xi.vertical();
  const Matrix b_perp = xi.matrix() - u * a;
  const Matrix normalizer = matfun::invsqrtm_spd(identity(p) + b_perp.transpose() * b_perp);
  Matrix y = (u * (twist(a) - a) + xi.matrix()) * normalizer;
  return StiefelPoint::unchecked(std::move(y));
}

// Polar decomposition C = (M R^T)(R S R^T) of the p x p overlap matrix, with
// the pieces the polar-light inverse needs.
struct OverlapPolar {
  Matrix rotation;      // M R^T
  Matrix inv_stretch;   // R S^{-1} R^T
};

OverlapPolar overlap_polar(const Matrix& c, const char* who) {
  const SvdTriple svd = matfun::svd_square(c);
  const Eigen::Index p = c.rows();
  const double smin = svd.singvals(p - 1);
  if (!(smin > kSingularFloor)) {
    std::ostringstream os;
    os << who << ": smallest singular value of U^T U1 is " << smin
       << "; outside chart neighborhood B";
    throw DomainError(os.str());
  }
  OverlapPolar out;
  out.rotation = svd.left * svd.right.transpose();
  if (out.rotation.determinant() < 0.0) {
    throw DomainError(std::string(who) +
                      ": polar factor of U^T U1 has det -1; outside chart neighborhood B");
  }
  out.inv_stretch = svd.right * svd.singvals.cwiseInverse().asDiagonal() * svd.right.transpose();
  return out;
}

template <class Log>
TangentVector pl_backward(const StiefelPoint& base, const StiefelPoint& u1, Log log,
                          const char* who) {
  if (base.n() != u1.n() || base.p() != u1.p()) {
    throw PreconditionError(std::string(who) + ": shape mismatch");
  }
  const Matrix& u = base.matrix();
  const OverlapPolar polar = overlap_polar(u.transpose() * u1.matrix(), who);
  Matrix a;
  try {
    a = log(polar.rotation);
  } catch (const DomainError& e) {
    throw DomainError(std::string(who) + ": outside chart neighborhood B (" + e.what() + ")");
  }
  Matrix xi = u * (a - polar.rotation) + u1.matrix() * polar.inv_stretch;
  return TangentVector::unchecked(base, std::move(xi));
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

}  // namespace

std::string RetractionKind::name() const {
  switch (tag) {
    case RetractionTag::kPolarFactor:
      return "PF";
    case RetractionTag::kPolarLight:
      return "PL";
    case RetractionTag::kPolarLightCayley:
      return "PL_CAYLEY";
    case RetractionTag::kExp: {
      std::ostringstream os;
      os << "EXP(" << metric.beta << ")";
      return os.str();
    }
  }
  return "?";
}

RetractionKind RetractionKind::parse(std::string_view text) {
  const std::string key = lower(text);
  if (key == "pf") return pf();
  if (key == "pl") return pl();
  if (key == "pl_cayley" || key == "pl_cay" || key == "plc") return pl_cayley();
  if (key == "exp") return exp(MetricParam::euclidean());
  if (key.rfind("exp:", 0) == 0) {
    double beta = 0.0;
    const char* first = key.data() + 4;
    const char* last = key.data() + key.size();
    const auto [ptr, ec] = std::from_chars(first, last, beta);
    if (ec == std::errc() && ptr == last && beta > 0.0) return exp({beta});
  }
  throw PreconditionError("unknown retraction kind '" + std::string(text) + "'");
}

StiefelPoint pf_ret(const TangentVector& xi) {
  const Matrix& u = xi.base().matrix();
  const Eigen::Index p = u.cols();
  const Matrix normalizer =
      matfun::invsqrtm_spd(identity(p) + xi.matrix().transpose() * xi.matrix());
  return StiefelPoint::unchecked((u + xi.matrix()) * normalizer);
}

TangentVector pf_inv(const StiefelPoint& base, const StiefelPoint& u1) {
  if (base.n() != u1.n() || base.p() != u1.p()) {
    throw PreconditionError("pf_inv: shape mismatch");
  }
  const Matrix& u = base.matrix();
  Matrix x;
  try {
    x = matfun::solve_pf_sylvester(u.transpose() * u1.matrix());
  } catch (const DomainError& e) {
    throw DomainError(std::string("pf_inv: outside PF injectivity domain (") + e.what() + ")");
  }
  // U1 X = U + xi must be the polar decomposition, so X has to be SPD.
  if (Eigen::LLT<Matrix>(x).info() != Eigen::Success) {
    throw DomainError("pf_inv: Sylvester solution is not positive definite; "
                      "outside PF injectivity domain");
  }
  return TangentVector::unchecked(base, u1.matrix() * x - u);
}

StiefelPoint pl_ret(const TangentVector& xi) {
  return pl_forward(xi, [](const Matrix& a) { return matfun::expm_skew(a); });
}

TangentVector pl_inv(const StiefelPoint& base, const StiefelPoint& u1) {
  return pl_backward(
      base, u1, [](const Matrix& q) { return matfun::logm_so(q); }, "pl_inv");
}

ChartCoordinates chart_at_E(const StiefelPoint& u) {
  const Eigen::Index p = u.p();
  const Eigen::Index rest = u.n() - p;
  const OverlapPolar polar = overlap_polar(u.matrix().topRows(p), "chart_at_E");
  ChartCoordinates coords;
  try {
    coords.a = matfun::logm_so(polar.rotation);
  } catch (const DomainError& e) {
    throw DomainError(std::string("chart_at_E: outside chart neighborhood B (") + e.what() +
                      ")");
  }
  coords.b = u.matrix().bottomRows(rest) * polar.inv_stretch;
  return coords;
}

StiefelPoint param_at_E(const ChartCoordinates& coords) {
  const Eigen::Index p = coords.a.rows();
  if (coords.a.cols() != p || coords.b.cols() != p) {
    throw PreconditionError("param_at_E: coordinate shapes do not match");
  }
  const Eigen::Index rest = coords.b.rows();
  const Matrix normalizer = matfun::invsqrtm_spd(identity(p) + coords.b.transpose() * coords.b);
  Matrix y(p + rest, p);
  y.topRows(p) = matfun::expm_skew(coords.a) * normalizer;
  y.bottomRows(rest) = coords.b * normalizer;
  return StiefelPoint::unchecked(std::move(y));
}

StiefelPoint pl_cay_ret(const TangentVector& xi) {
  return pl_forward(xi, [](const Matrix& a) { return matfun::cay(a); });
}

TangentVector pl_cay_inv(const StiefelPoint& base, const StiefelPoint& u1) {
  return pl_backward(
      base, u1, [](const Matrix& q) { return matfun::cay_inv(q); }, "pl_cay_inv");
}

StiefelPoint retract(const RetractionKind& kind, const TangentVector& xi) {
  switch (kind.tag) {
    case RetractionTag::kPolarFactor:
      return pf_ret(xi);
    case RetractionTag::kPolarLight:
      return pl_ret(xi);
    case RetractionTag::kPolarLightCayley:
      return pl_cay_ret(xi);
    case RetractionTag::kExp:
      return exp_beta(xi, kind.metric);
  }
  throw PreconditionError("retract: unknown kind");
}

TangentVector inverse_retract(const RetractionKind& kind, const StiefelPoint& base,
                              const StiefelPoint& u1) {
  switch (kind.tag) {
    case RetractionTag::kPolarFactor:
      return pf_inv(base, u1);
    case RetractionTag::kPolarLight:
      return pl_inv(base, u1);
    case RetractionTag::kPolarLightCayley:
      return pl_cay_inv(base, u1);
    case RetractionTag::kExp:
      break;
  }
  throw PreconditionError("inverse_retract: " + kind.name() + " has no closed-form inverse");
}

}  // namespace stiefel
