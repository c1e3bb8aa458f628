#pragma once

// Dense matrix functions on small (p x p, 2p x 2p) matrices with known
// structure: skew-symmetric, special orthogonal, symmetric positive definite.

#include <cmath>

#include <Eigen/Dense>

namespace stiefel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Validation tolerances. All are absolute bounds on Frobenius norms and
/// scale with sqrt(p) for a p x p (or n x p) operand.
namespace tol {
inline double orth(Eigen::Index p) { return 1e-8 * std::sqrt(double(p)); }
inline double sym(Eigen::Index p) { return 1e-8 * std::sqrt(double(p)); }
inline double skew(Eigen::Index p) { return 1e-8 * std::sqrt(double(p)); }
inline double roundtrip(Eigen::Index p) { return 1e-10 * std::sqrt(double(p)); }
inline constexpr double spd_floor = 1e-12;
inline constexpr double sylvester_rel = 1e-10;
inline constexpr double resolvent_rcond = 1e-12;
/// Largest admissible rotation angle for the principal logarithm.
inline constexpr double log_angle_guard = 1e-6;
}  // namespace tol

struct SvdTriple {
  Matrix left;
  Vector singvals;
  Matrix right;
};

namespace matfun {

inline Matrix skew_part(const Matrix& m) { return 0.5 * (m - m.transpose()); }
inline Matrix sym_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// Matrix exponential of a skew-symmetric matrix (Pade scaling-and-squaring).
/// Throws PreconditionError if ||A + A^T||_F exceeds tol::skew.
Matrix expm_skew(const Matrix& a);

/// Principal logarithm of a rotation. The result is exactly skew-symmetric.
/// Throws DomainError if a rotation angle is within tol::log_angle_guard of pi
/// (an eigenvalue at or near -1).
Matrix logm_so(const Matrix& q);

/// S^{-1/2} for symmetric positive definite S via symmetric eigensolver.
Matrix invsqrtm_spd(const Matrix& s);

/// Full SVD C = left * diag(singvals) * right^T, singvals nonincreasing.
SvdTriple svd_square(const Matrix& c);

/// Solves C X + X C^T = 2 I for symmetric X (Bartels-Stewart on the real
/// Schur form of C). Throws DomainError when some eigenvalue pair has
/// |d_i + d_j| <= 1e-10 ||C||_2.
Matrix solve_pf_sylvester(const Matrix& c);

/// Cayley transform (I - A/2)^{-1} (I + A/2).
Matrix cay(const Matrix& a);

/// Inverse Cayley transform 2 (Q - I)(Q + I)^{-1}, returned skew-symmetrized.
Matrix cay_inv(const Matrix& q);

}  // namespace matfun
}  // namespace stiefel
