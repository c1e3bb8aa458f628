#include "stiefel/matfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "stiefel/errors.hpp"

namespace stiefel::matfun {
namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << who << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw PreconditionError(os.str());
  }
  if (!m.allFinite()) {
    throw PreconditionError(std::string(who) + ": non-finite entries");
  }
}

double norm1(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade approximants and thresholds from Higham, "The scaling and squaring
// method for the matrix exponential revisited" (2005).
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

constexpr std::array<double, 4> kB3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kB5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kB7 = {17297280., 8648640., 1995840., 277200.,
                                       25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kB9 = {17643225600., 8821612800., 2075673600., 302702400.,
                                        30270240.,    2162160.,    110880.,     3960.,
                                        90.,          1.};
constexpr std::array<double, 14> kB13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

template <std::size_t N>
Matrix pade_low(const Matrix& a, const std::array<double, N>& b) {
  const Eigen::Index p = a.rows();
  const Matrix id = Matrix::Identity(p, p);
  const Matrix a2 = a * a;
  Matrix power = id;
  Matrix u_inner = b[1] * id;
  Matrix v = b[0] * id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    v += b[k] * power;
    u_inner += b[k + 1] * power;
  }
  const Matrix u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

Matrix pade13_scaled(const Matrix& a_in) {
  const Eigen::Index p = a_in.rows();
  const double nrm = norm1(a_in);
  int squarings = 0;
  if (nrm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
  }
  const Matrix a = std::ldexp(1.0, -squarings) * a_in;
  const Matrix id = Matrix::Identity(p, p);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kB13;
  const Matrix u_tmp = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  const Matrix u = a * (u_tmp + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Matrix v_tmp = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  const Matrix v = v_tmp + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) {
    r = (r * r).eval();
  }
  return r;
}

Matrix expm_general(const Matrix& a) {
  const double nrm = norm1(a);
  if (nrm <= kTheta3) return pade_low(a, kB3);
  if (nrm <= kTheta5) return pade_low(a, kB5);
  if (nrm <= kTheta7) return pade_low(a, kB7);
  if (nrm <= kTheta9) return pade_low(a, kB9);
  return pade13_scaled(a);
}

}  // namespace

Matrix expm_skew(const Matrix& a) {
  require_square(a, "expm_skew");
  const double defect = (a + a.transpose()).norm();
  if (defect > tol::skew(a.rows())) {
    std::ostringstream os;
    os << "expm_skew: input is not skew-symmetric (||A + A^T||_F = " << defect << ")";
    throw PreconditionError(os.str());
  }
  return expm_general(a);
}

Matrix logm_so(const Matrix& q) {
  require_square(q, "logm_so");
  const Eigen::Index p = q.rows();
  const double defect = (q.transpose() * q - Matrix::Identity(p, p)).norm();
  if (defect > tol::orth(p)) {
    std::ostringstream os;
    os << "logm_so: input is not orthogonal (||Q^T Q - I||_F = " << defect << ")";
    throw PreconditionError(os.str());
  }

  // An orthogonal matrix is normal, so its real Schur form is block diagonal
  // with 1x1 blocks (+-1) and 2x2 planar rotations.
  const Eigen::RealSchur<Matrix> schur(q);
  const Matrix& t = schur.matrixT();
  const Matrix& z = schur.matrixU();
  const double max_angle = std::numbers::pi - tol::log_angle_guard;

  Matrix log_t = Matrix::Zero(p, p);
  for (Eigen::Index i = 0; i < p;) {
    if (i + 1 < p && t(i + 1, i) != 0.0) {
      const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double s = 0.5 * (t(i + 1, i) - t(i, i + 1));
      const double theta = std::atan2(s, c);
      if (std::abs(theta) > max_angle) {
        std::ostringstream os;
        os << "logm_so: rotation angle " << theta << " outside principal-log domain";
        throw DomainError(os.str());
      }
      log_t(i, i + 1) = -theta;
      log_t(i + 1, i) = theta;
      i += 2;
    } else {
      if (t(i, i) < 0.0) {
        throw DomainError("logm_so: eigenvalue -1, outside principal-log domain");
      }
      i += 1;
    }
  }
  return skew_part(z * log_t * z.transpose());
}

Matrix invsqrtm_spd(const Matrix& s) {
  require_square(s, "invsqrtm_spd");
  const Eigen::Index p = s.rows();
  const double defect = (s - s.transpose()).norm();
  if (defect > tol::sym(p)) {
    std::ostringstream os;
    os << "invsqrtm_spd: input is not symmetric (||S - S^T||_F = " << defect << ")";
    throw PreconditionError(os.str());
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym_part(s));
  if (eig.info() != Eigen::Success) {
    throw PreconditionError("invsqrtm_spd: eigensolver failed");
  }
  const Vector& lambda = eig.eigenvalues();
  if (lambda(0) <= tol::spd_floor) {
    std::ostringstream os;
    os << "invsqrtm_spd: input is not positive definite (smallest eigenvalue " << lambda(0)
       << ")";
    throw PreconditionError(os.str());
  }
  const Matrix& v = eig.eigenvectors();
  const Vector scale = lambda.cwiseSqrt().cwiseInverse();
  return sym_part(v * scale.asDiagonal() * v.transpose());
}

SvdTriple svd_square(const Matrix& c) {
  require_square(c, "svd_square");
  Eigen::BDCSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw PreconditionError("svd_square: SVD did not converge");
  }
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Matrix solve_pf_sylvester(const Matrix& c) {
  require_square(c, "solve_pf_sylvester");
  const Eigen::Index p = c.rows();

  // C = Z T Z^T with T quasi upper triangular. Since Z is orthogonal, the
  // equation becomes T Y + Y T^T = 2 I for Y = Z^T X Z, solved block by block
  // from the bottom-right corner (Bartels-Stewart).
  const Eigen::RealSchur<Matrix> schur(c);
  if (schur.info() != Eigen::Success) {
    throw DomainError("solve_pf_sylvester: Schur decomposition did not converge");
  }
  const Matrix& t = schur.matrixT();
  const Matrix& z = schur.matrixU();

  // Diagonal blocks: start index and size (1 or 2), plus the eigenvalues.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  std::vector<std::complex<double>> eigs;
  for (Eigen::Index i = 0; i < p;) {
    if (i + 1 < p && t(i + 1, i) != 0.0) {
      const double mean = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double half = 0.5 * (t(i, i) - t(i + 1, i + 1));
      const std::complex<double> root =
          std::sqrt(std::complex<double>(half * half + t(i, i + 1) * t(i + 1, i), 0.0));
      eigs.push_back(mean + root);
      eigs.push_back(mean - root);
      blocks.emplace_back(i, 2);
      i += 2;
    } else {
      eigs.emplace_back(t(i, i), 0.0);
      blocks.emplace_back(i, 1);
      i += 1;
    }
  }

  const double norm2 = Eigen::BDCSVD<Matrix>(c).singularValues()(0);
  const double floor = tol::sylvester_rel * norm2;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    for (std::size_t j = i; j < eigs.size(); ++j) {
      if (std::abs(eigs[i] + eigs[j]) <= floor) {
        std::ostringstream os;
        os << "solve_pf_sylvester: eigenvalues " << eigs[i] << " and " << eigs[j]
           << " nearly cancel; inverse PF retraction undefined or ill-conditioned";
        throw DomainError(os.str());
      }
    }
  }

  Matrix y = Matrix::Zero(p, p);
  for (auto bi = blocks.rbegin(); bi != blocks.rend(); ++bi) {
    const auto [i0, si] = *bi;
    const Eigen::Index ri = p - i0 - si;  // rows below block I
    for (auto bj = blocks.rbegin(); bj != blocks.rend(); ++bj) {
      const auto [j0, sj] = *bj;
      const Eigen::Index rj = p - j0 - sj;
      Matrix rhs = Matrix::Zero(si, sj);
      if (i0 == j0) rhs.diagonal().setConstant(2.0);
      if (ri > 0) {
        rhs.noalias() -= t.block(i0, i0 + si, si, ri) * y.block(i0 + si, j0, ri, sj);
      }
      if (rj > 0) {
        rhs.noalias() -= y.block(i0, j0 + sj, si, rj) * t.block(j0, j0 + sj, sj, rj).transpose();
      }
      // (I kron T_II + T_JJ kron I) vec(Y_IJ) = vec(rhs), at most 4 x 4.
      const Matrix tii = t.block(i0, i0, si, si);
      const Matrix tjj = t.block(j0, j0, sj, sj);
      Matrix kron = Matrix::Zero(si * sj, si * sj);
      for (Eigen::Index b = 0; b < sj; ++b) {
        kron.block(b * si, b * si, si, si) += tii;
        for (Eigen::Index a = 0; a < sj; ++a) {
          kron.block(b * si, a * si, si, si) += tjj(b, a) * Matrix::Identity(si, si);
        }
      }
      const Vector sol = kron.fullPivLu().solve(rhs.reshaped());
      y.block(i0, j0, si, sj) = sol.reshaped(si, sj);
    }
  }
  return sym_part(z * y * z.transpose());
}

Matrix cay(const Matrix& a) {
  require_square(a, "cay");
  const Eigen::Index p = a.rows();
  const Matrix id = Matrix::Identity(p, p);
  const Eigen::PartialPivLU<Matrix> lu(id - 0.5 * a);
  if (!(lu.rcond() > tol::resolvent_rcond)) {
    throw DomainError("cay: I - A/2 is singular");
  }
  return lu.solve(id + 0.5 * a);
}

Matrix cay_inv(const Matrix& q) {
  require_square(q, "cay_inv");
  const Eigen::Index p = q.rows();
  const Matrix id = Matrix::Identity(p, p);
  // X (Q + I) = Q - I  <=>  (Q + I)^T X^T = (Q - I)^T
  const Eigen::PartialPivLU<Matrix> lu((q + id).transpose());
  if (!(lu.rcond() > tol::resolvent_rcond)) {
    throw DomainError("cay_inv: Q + I is singular (eigenvalue -1)");
  }
  const Matrix xt = lu.solve((q - id).transpose());
  return skew_part(2.0 * xt.transpose());
}

}  // namespace stiefel::matfun
