#pragma once

#include <complex>
#include <cstdint>
#include <unordered_map>

#include <Eigen/Core>

#include "ncps/gauss_poly.hpp"

namespace ncps {

/// Even moments E[z^alpha] of a centred Gaussian with the given covariance,
/// for every multi-index of total degree <= max_degree. Built once by the
/// Isserlis recursion E[z_a z^beta] = sum_b Sigma_ab beta_b E[z^(beta - e_b)]
/// and read-only afterwards.
class MomentTable {
 public:
  static constexpr int kMaxDegree = 48;

  MomentTable(Eigen::MatrixXd covariance, int max_degree);

  const Eigen::MatrixXd& covariance() const { return covariance_; }
  int max_degree() const { return max_degree_; }

  /// Zero for odd total degree; throws std::out_of_range above max_degree.
  double operator()(const Monomial& alpha) const;

 private:
  Eigen::MatrixXd covariance_;
  int max_degree_;
  std::unordered_map<std::uint32_t, double> moments_;
};

/// pi^(d/2) / sqrt(det(-Q)); throws std::domain_error unless Q < 0.
double gaussian_mass(const Eigen::MatrixXd& exponent);

/// Exact integral of F over all of its variables.
double integrate(const GaussPolyd& f);
std::complex<double> integrate(const GaussPolycd& f);

/// Integrates the other particle out of a four-variable function, keeping
/// (x_keep, p_keep) as the two variables of the result (keep is 1 or 2).
/// Exact: Schur complement on the exponent, moment contraction on the
/// shifted polynomial.
GaussPolyd marginalize(const GaussPolyd& f, int keep);

}  // namespace ncps
