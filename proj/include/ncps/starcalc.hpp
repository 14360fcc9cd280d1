#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "ncps/gauss_poly.hpp"

namespace ncps {

/// H = (a.x + b.p)^2 + (c.x + d.p)^2, stored as the two linear forms
/// l1 = (a, b) and l2 = (c, d) over the variables of a PhaseSpace.
///
/// The star-exponential of H is controlled by the single scalar
/// k = {l1, l2} = l1^T J l2 = (a.d - b.c) hbar + (a ^ c) mu + (b ^ d) nu.
class QuadraticForm {
 public:
  /// Four-variable form from the coefficient vectors a, b, c, d.
  static QuadraticForm from_vectors(const PhaseSpace& space, const Eigen::Vector2d& a,
                                    const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                                    const Eigen::Vector2d& d);

  /// Form from its two linear forms directly.
  static QuadraticForm from_lines(const PhaseSpace& space, Eigen::VectorXd l1, Eigen::VectorXd l2);

  /// Recovers a two-square decomposition of z^T M z for a positive
  /// semidefinite M of rank at most two. Throws std::domain_error otherwise.
  static QuadraticForm from_matrix(const PhaseSpace& space, const Eigen::MatrixXd& m);

  const PhaseSpace& space() const { return space_; }
  const Eigen::VectorXd& first_line() const { return l1_; }
  const Eigen::VectorXd& second_line() const { return l2_; }

  /// Symmetric M with H = z^T M z.
  Eigen::MatrixXd matrix() const { return l1_ * l1_.transpose() + l2_ * l2_.transpose(); }
  Polynomiald polynomial() const { return Polynomiald::quadratic(matrix()); }
  double operator()(const Eigen::VectorXd& z) const;

  double k() const { return k_; }

 private:
  QuadraticForm(PhaseSpace space, Eigen::VectorXd l1, Eigen::VectorXd l2);

  PhaseSpace space_;
  Eigen::VectorXd l1_;
  Eigen::VectorXd l2_;
  double k_;
};

double k_constant(const QuadraticForm& form, const PhaseSpace& deformation);

/// exp_*(H t) = exp(H tanh(kt)/k) / cosh(kt); exp(H t) when k = 0.
/// Throws std::out_of_range when cosh(kt) overflows.
GaussPolyd star_exp(const QuadraticForm& form, double t);

/// Exact f * g for a pure-polynomial left factor (zero Gaussian part). The
/// bidifferential series terminates at the left factor's total degree.
/// Complex coefficients are kept: x * p - p * x = i hbar, for instance.
GaussPolycd star_product_poly_left_complex(const GaussPolyd& left, const GaussPolyd& right);

/// Same with the polynomial factor on the right.
GaussPolycd star_product_poly_right_complex(const GaussPolyd& left, const GaussPolyd& right);

/// Real-valued versions: throw std::domain_error when the imaginary part
/// exceeds 1e-10 relative to the largest coefficient.
GaussPolyd star_product_poly_left(const GaussPolyd& left, const GaussPolyd& right);
GaussPolyd star_product_poly_right(const GaussPolyd& left, const GaussPolyd& right);

/// Star-exponential coordinates of a pure Gaussian A exp(sum_k s_k H_k):
/// tau_k = k_k s_k = tanh(k_k t_k). |tau| = 1 marks a pure mode (t -> inf).
struct StarGaussianCoords {
  double prefactor = 0.0;
  std::vector<double> scales;  // s_k
  std::vector<double> taus;    // k_k s_k
};

/// Decomposes a pure Gaussian over mutually star-commuting forms (their
/// linear forms pairwise J-orthogonal). Throws std::domain_error when the
/// exponent is not a combination of the forms or |k s| > 1.
StarGaussianCoords star_coordinates(const GaussPolyd& g, std::span<const QuadraticForm> modes);

/// Star product of pure Gaussians built on one shared form, detected from
/// the operands' exponents. Implements the group law of exp_* through
/// tanh(k(t1 + t2)) = (tau1 + tau2) / (1 + tau1 tau2), which also covers the
/// pure-state boundary |tau| = 1 where t itself diverges.
GaussPolyd gaussian_star(const GaussPolyd& left, const GaussPolyd& right);

/// Same over an explicit list of mutually star-commuting forms (e.g. H+ and
/// H- for the four-variable ground state).
GaussPolyd gaussian_star(const GaussPolyd& left, const GaussPolyd& right,
                         std::span<const QuadraticForm> modes);

/// n-fold star power by repeated gaussian_star.
GaussPolyd star_power(const GaussPolyd& g, int n);
GaussPolyd star_power(const GaussPolyd& g, int n, std::span<const QuadraticForm> modes);

/// ln_*(G) = constant + t H for G = A exp(s H) = A cosh(kt) exp_*(H t).
struct StarLog {
  double constant = 0.0;
  GaussPolyd form_part;  // zero Gaussian exponent, quadratic polynomial t H
};

/// Throws std::domain_error unless G is a pure Gaussian with positive
/// prefactor and |k s| < 1.
StarLog star_log_gaussian(const GaussPolyd& g);

/// Shared form of a pure Gaussian: H = -Q (so s = -1), or nullopt-like
/// failure via std::domain_error when Q is not a two-square form.
QuadraticForm gaussian_form(const GaussPolyd& g);

}  // namespace ncps
