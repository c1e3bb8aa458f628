#include "stiefel/manifold.hpp"

#include <sstream>

#include <Eigen/QR>

#include "stiefel/errors.hpp"
#include "stiefel/random.hpp"

namespace stiefel {
namespace {

// Thin QR with the triangular factor's diagonal made nonnegative.
std::pair<Matrix, Matrix> thin_qr(const Matrix& m) {
  const Eigen::Index n = m.rows();
  const Eigen::Index p = m.cols();
  const Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(n, p);
  Matrix r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) *= -1.0;
      r.row(j) *= -1.0;
    }
  }
  return {std::move(q), std::move(r)};
}

void require_supported(MetricParam metric) {
  if (metric != MetricParam::canonical() && metric != MetricParam::euclidean()) {
    std::ostringstream os;
    os << "unsupported metric norm for beta = " << metric.beta
       << " (only 1/2 and 1 are implemented)";
    throw PreconditionError(os.str());
  }
}

}  // namespace

StiefelPoint StiefelPoint::check(Matrix u) {
  if (u.cols() == 0 || u.rows() < u.cols()) {
    std::ostringstream os;
    os << "check_point: need 1 <= p <= n, got " << u.rows() << "x" << u.cols();
    throw PreconditionError(os.str());
  }
  if (!u.allFinite()) {
    throw PreconditionError("check_point: non-finite entries");
  }
  StiefelPoint point(std::move(u));
  const double defect = point.orthonormality_defect();
  if (!(defect <= tol::orth(point.p()))) {
    std::ostringstream os;
    os << "check_point: ||U^T U - I||_F = " << defect << " exceeds " << tol::orth(point.p());
    throw ValidationError(os.str(), defect);
  }
  return point;
}

StiefelPoint StiefelPoint::canonical(Eigen::Index n, Eigen::Index p) {
  if (p < 1 || n < p) {
    throw PreconditionError("canonical: need 1 <= p <= n");
  }
  return StiefelPoint(Matrix::Identity(n, p));
}

double StiefelPoint::orthonormality_defect() const {
  return (u_.transpose() * u_ - Matrix::Identity(p(), p())).norm();
}

TangentVector TangentVector::check(StiefelPoint base, Matrix xi) {
  if (xi.rows() != base.n() || xi.cols() != base.p()) {
    throw PreconditionError("tangent vector shape does not match base point");
  }
  if (!xi.allFinite()) {
    throw PreconditionError("tangent vector has non-finite entries");
  }
  const Matrix ua = base.matrix().transpose() * xi;
  const double defect = (ua + ua.transpose()).norm();
  if (!(defect <= tol::skew(base.p()))) {
    std::ostringstream os;
    os << "not a tangent vector: ||U^T Xi + Xi^T U||_F = " << defect;
    throw ValidationError(os.str(), defect);
  }
  return TangentVector(std::move(base), std::move(xi));
}

TangentVector TangentVector::zero(StiefelPoint base) {
  Matrix z = Matrix::Zero(base.n(), base.p());
  return TangentVector(std::move(base), std::move(z));
}

Matrix TangentVector::vertical() const {
  return matfun::skew_part(base_.matrix().transpose() * xi_);
}

Matrix TangentVector::horizontal() const { return xi_ - base_.matrix() * vertical(); }

StiefelPoint check_point(const Matrix& u) { return StiefelPoint::check(u); }

TangentVector project_tangent(const StiefelPoint& base, const Matrix& z) {
  if (z.rows() != base.n() || z.cols() != base.p()) {
    throw PreconditionError("project_tangent: shape mismatch");
  }
  const Matrix& u = base.matrix();
  Matrix xi = z - u * matfun::sym_part(u.transpose() * z);
  return TangentVector::unchecked(base, std::move(xi));
}

StiefelPoint rand_point(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  if (p < 1 || n < p) {
    throw PreconditionError("rand_point: need 1 <= p <= n");
  }
  NormalRng rng(seed);
  return StiefelPoint::unchecked(thin_qr(rng.matrix(n, p)).first);
}

TangentVector rand_tangent(const StiefelPoint& base, double norm_target, std::uint64_t seed) {
  if (!(norm_target >= 0.0)) {
    throw PreconditionError("rand_tangent: norm_target must be nonnegative");
  }
  NormalRng rng(seed);
  TangentVector xi = project_tangent(base, rng.matrix(base.n(), base.p()));
  const double nrm = xi.frobenius_norm();
  if (nrm == 0.0) return TangentVector::zero(base);
  return xi.scaled(norm_target / nrm);
}

double inner(const TangentVector& xi, const TangentVector& eta, MetricParam metric) {
  require_supported(metric);
  if (xi.base().matrix() != eta.base().matrix()) {
    throw PreconditionError("inner: tangent vectors live at different base points");
  }
  const double euclidean = (xi.matrix().array() * eta.matrix().array()).sum();
  if (metric == MetricParam::euclidean()) return euclidean;
  // tr(xi^T (I - U U^T / 2) eta)
  const Matrix& u = xi.base().matrix();
  const Matrix a_xi = u.transpose() * xi.matrix();
  const Matrix a_eta = u.transpose() * eta.matrix();
  return euclidean - 0.5 * (a_xi.array() * a_eta.array()).sum();
}

double norm(const TangentVector& xi, MetricParam metric) {
  return std::sqrt(inner(xi, xi, metric));
}

StiefelPoint exp_beta(const TangentVector& xi, MetricParam metric) {
  if (!(metric.beta > 0.0)) {
    throw PreconditionError("exp_beta: beta must be positive");
  }
  const Matrix& u = xi.base().matrix();
  const Eigen::Index p = u.cols();
  const Matrix a = xi.vertical();
  const auto [q, r] = thin_qr(xi.matrix() - u * a);

  Matrix block(2 * p, 2 * p);
  block << 2.0 * metric.beta * a, -r.transpose(), r, Matrix::Zero(p, p);
  const Matrix e = matfun::expm_skew(block);

  Matrix y = u * e.topLeftCorner(p, p) + q * e.bottomLeftCorner(p, p);
  if (metric.beta != 0.5) {
    y = (y * matfun::expm_skew((1.0 - 2.0 * metric.beta) * a)).eval();
  }
  return StiefelPoint::unchecked(std::move(y));
}

}  // namespace stiefel
