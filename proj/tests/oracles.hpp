#pragma once

// Reference computations for the tests. They use different code paths from
// the library (Eigen's MatrixFunctions module, explicit n x n completions,
// Kronecker-product linear systems) so they can serve as independent checks.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "stiefel/random.hpp"

namespace stiefel::testing {

inline Matrix expm_reference(const Matrix& m) { return m.exp(); }

inline Matrix invsqrt_reference(const Matrix& s) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(s).operatorInverseSqrt();
}

inline Matrix random_skew(Eigen::Index p, std::uint64_t seed) {
  NormalRng rng(seed);
  const Matrix g = rng.matrix(p, p);
  return 0.5 * (g - g.transpose());
}

/// Random skew matrix with spectral norm exactly `radius`.
inline Matrix random_skew_with_norm(Eigen::Index p, double radius, std::uint64_t seed) {
  const Matrix a = random_skew(p, seed);
  const double spectral = Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
  return (radius / spectral) * a;
}

inline Matrix random_orthogonal(Eigen::Index n, std::uint64_t seed) {
  NormalRng rng(seed);
  const Eigen::HouseholderQR<Matrix> qr(rng.matrix(n, n));
  return qr.householderQ();
}

/// An n x n orthogonal matrix whose first p columns equal U. The trailing
/// block is rotated by a random orthogonal matrix so the completion is not
/// the one any library routine would produce.
inline Matrix full_completion(const Matrix& u, std::uint64_t seed) {
  const Eigen::Index n = u.rows();
  const Eigen::Index p = u.cols();
  const Eigen::HouseholderQR<Matrix> qr(u);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  q.leftCols(p) = u;
  if (n > p) q.rightCols(n - p) = q.rightCols(n - p) * random_orthogonal(n - p, seed);
  return q;
}

/// Exp_U(xi) via the literal n x n block exponential and a full completion.
inline Matrix exp_beta_full(const Matrix& u, const Matrix& xi, double beta, std::uint64_t seed) {
  const Eigen::Index n = u.rows();
  const Eigen::Index p = u.cols();
  const Matrix q = full_completion(u, seed);
  const Matrix coords = q.transpose() * xi;
  const Matrix a = 0.5 * (coords.topRows(p) - coords.topRows(p).transpose());
  const Matrix b = coords.bottomRows(n - p);
  Matrix block = Matrix::Zero(n, n);
  block.topLeftCorner(p, p) = 2.0 * beta * a;
  block.topRightCorner(p, n - p) = -b.transpose();
  block.bottomLeftCorner(n - p, p) = b;
  const Matrix e = expm_reference(block);
  return q * e.leftCols(p) * expm_reference((1.0 - 2.0 * beta) * a);
}

/// phi_E(A, B) = [expm(A); B] (I + B^T B)^{-1/2}.
inline Matrix phi_at_E(const Matrix& a, const Matrix& b) {
  const Eigen::Index p = a.rows();
  const Matrix normalizer = invsqrt_reference(Matrix::Identity(p, p) + b.transpose() * b);
  Matrix y(p + b.rows(), p);
  y.topRows(p) = expm_reference(a) * normalizer;
  y.bottomRows(b.rows()) = b * normalizer;
  return y;
}

/// Polar-light retraction defined through an explicit completion Q:
/// Q phi_E(Q^T xi).
inline Matrix pl_via_completion(const Matrix& q, const Matrix& xi) {
  const Eigen::Index p = xi.cols();
  const Matrix coords = q.transpose() * xi;
  const Matrix a = 0.5 * (coords.topRows(p) - coords.topRows(p).transpose());
  return q * phi_at_E(a, coords.bottomRows(q.rows() - p));
}

/// Dense Kronecker solve of C X + X C^T = 2 I.
inline Matrix sylvester_kron(const Matrix& c) {
  const Eigen::Index p = c.rows();
  const Matrix id = Matrix::Identity(p, p);
  Matrix op = Matrix::Zero(p * p, p * p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < p; ++i) {
      op.block(i * p, j * p, p, p) += c(i, j) * id;  // C kron I  (X C^T term)
    }
    op.block(j * p, j * p, p, p) += c;  // I kron C  (C X term)
  }
  const Vector rhs = (2.0 * id).reshaped();
  return op.fullPivLu().solve(rhs).reshaped(p, p);
}

/// Least-squares slope of log(err) against log(t).
inline double loglog_slope(std::span<const double> t, std::span<const double> err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double x = std::log(t[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = double(t.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline std::vector<double> geometric_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    g[i] = lo * std::pow(hi / lo, double(i) / (count - 1));
  }
  return g;
}

}  // namespace stiefel::testing
