#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/LU>

#include "ncps/params.hpp"

namespace ncps {

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

/// Commutator matrix [z_a, z_b] = i Omega_ab over (x1, x2, p1, p2).
template <typename Scalar = double>
Matrix4<Scalar> deformed_commutator(Scalar hbar, Scalar mu, Scalar nu) {
  Matrix4<Scalar> omega = Matrix4<Scalar>::Zero();
  omega(0, 2) = omega(1, 3) = hbar;
  omega(0, 1) = mu;
  omega(2, 3) = nu;
  return omega - omega.transpose();
}

template <typename Scalar = double>
Matrix4<Scalar> canonical_commutator(Scalar hbar) {
  return deformed_commutator<Scalar>(hbar, Scalar(0), Scalar(0));
}

/// (x1, x2, p1, p2)^T = M (y1, y2, q1, q2)^T with canonical (y, q).
template <typename Scalar = double>
struct DarbouxMap {
  Matrix4<Scalar> matrix;

  Scalar determinant() const { return matrix.determinant(); }

  /// M Omega_0 M^T, to be compared with deformed_commutator.
  Matrix4<Scalar> pushed_commutator(Scalar hbar) const {
    return matrix * canonical_commutator<Scalar>(hbar) * matrix.transpose();
  }
};

/// Scaled Bopp shift
///   x_i = xi y_i - (mu / 2 hbar xi) eps_ij q_j,
///   p_i = xi q_i + (nu / 2 hbar xi) eps_ij y_j,
/// with xi^2 = (1 + sqrt(1 - mu nu / hbar^2)) / 2. The xi scaling keeps
/// [x_i, p_i] = i hbar exact; det M = 1 - mu nu / hbar^2.
template <typename Scalar = double>
DarbouxMap<Scalar> build_map(const ModelParams& params) {
  validate(params);
  using std::sqrt;
  const Scalar hbar(params.hbar), mu(params.mu), nu(params.nu);
  const Scalar xi = sqrt((Scalar(1) + sqrt(Scalar(1) - mu * nu / (hbar * hbar))) / Scalar(2));
  const Scalar a = mu / (Scalar(2) * hbar * xi);
  const Scalar b = nu / (Scalar(2) * hbar * xi);
  Matrix4<Scalar> m;
  // clang-format off
  m <<  xi,  Scalar(0), Scalar(0), -a,
        Scalar(0),  xi,  a, Scalar(0),
        Scalar(0),  b,  xi, Scalar(0),
       -b, Scalar(0), Scalar(0),  xi;
  // clang-format on
  return {m};
}

/// 4 pi^2 (hbar^2 - mu nu).
inline double cell_size(const ModelParams& params) {
  validate(params);
  return 4.0 * std::numbers::pi * std::numbers::pi *
         (params.hbar * params.hbar - params.mu * params.nu);
}

}  // namespace ncps
