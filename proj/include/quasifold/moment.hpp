#pragma once

// Moment maps of the construction, in floating point:
//   J(z)   = (|z_1|^2 + lambda_1, ..., |z_d|^2 + lambda_d)
//   Psi(z) = B J(z)                      (N-moment map, B rows span ker pi)
//   Phi(z) = mu with pi^T mu = J(z)      (least squares off the level set)

#include "quasifold/construction.hpp"
#include "quasifold/error.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace quasifold {

using ComplexVector = std::vector<std::complex<double>>;

inline Eigen::VectorXd squared_moduli(const ComplexVector& z) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(z.size()));
  for (std::size_t j = 0; j < z.size(); ++j) m(static_cast<Eigen::Index>(j)) = std::norm(z[j]);
  return m;
}

inline Eigen::VectorXd moment_J(const ComplexVector& z, const DelzantData& dd) {
  if (z.size() != dd.d()) throw Error(ErrorKind::DimensionMismatch, "z must have d entries");
  return squared_moduli(z) + dd.numeric.lambda;
}

inline Eigen::VectorXd moment_Psi(const ComplexVector& z, const DelzantData& dd) {
  return dd.numeric.kernel * moment_J(z, dd);
}

/// Least-squares Phi without the level-set precondition.
inline Eigen::VectorXd phi_least_squares(const ComplexVector& z, const DelzantData& dd) {
  return dd.numeric.phi_solver * moment_J(z, dd);
}

struct PhiResult {
  Eigen::VectorXd mu;
  double residual = 0;        // |pi^T mu - J(z)|
  double residual_bound = 0;  // |Psi(z)| / sigma_min(B)
};

/// Phi at a point of (approximately) Psi^{-1}(0). The least-squares
/// residual lies in the row space of B, so it is bounded by
/// |Psi| / sigma_min(B).
inline PhiResult moment_Phi(const ComplexVector& z, const DelzantData& dd, double tol) {
  if (dd.numeric.pi_condition < 1e-12)
    throw Error(ErrorKind::IllConditioned, "stacked normal matrix is numerically rank deficient");
  const Eigen::VectorXd j = moment_J(z, dd);
  const double psi = (dd.numeric.kernel * j).norm();
  if (psi > tol) throw Error(ErrorKind::OffLevelSet, "|Psi(z)| = " + std::to_string(psi));
  PhiResult r;
  r.mu = dd.numeric.phi_solver * j;
  r.residual = (dd.numeric.pi.transpose() * r.mu - j).norm();
  r.residual_bound = psi / dd.numeric.kernel_sigma_min;
  return r;
}

}  // namespace quasifold
