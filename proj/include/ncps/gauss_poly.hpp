#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/LU>

#include "ncps/params.hpp"
#include "ncps/polynomial.hpp"

namespace ncps {

/// Variable layout and deformation of a phase space.
///
/// Four variables are ordered (x1, x2, p1, p2); a reduced two-variable space
/// is (x, p) and carries only the hbar term of the star product, since the
/// mu and nu terms couple distinct particle indices.
struct PhaseSpace {
  int dimension = 4;
  double hbar = 1.0;
  double mu = 0.0;
  double nu = 0.0;

  static PhaseSpace full(double hbar, double mu, double nu) { return {4, hbar, mu, nu}; }
  static PhaseSpace full(const ModelParams& p) { return full(p.hbar, p.mu, p.nu); }
  static PhaseSpace reduced(double hbar) { return {2, hbar, 0.0, 0.0}; }

  int particles() const { return dimension / 2; }
  int position(int particle) const { return particle; }
  int momentum(int particle) const { return particles() + particle; }

  /// J with {z_a, z_b} = J_ab; the star product is exp((i/2) <-d_a J_ab d_b->).
  Eigen::MatrixXd poisson_matrix() const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dimension, dimension);
    for (int i = 0; i < particles(); ++i) {
      j(position(i), momentum(i)) = hbar;
      j(momentum(i), position(i)) = -hbar;
    }
    if (dimension == 4) {
      j(0, 1) = mu;
      j(1, 0) = -mu;
      j(2, 3) = nu;
      j(3, 2) = -nu;
    }
    return j;
  }

  bool operator==(const PhaseSpace&) const = default;
};

/// prefactor * poly(z) * exp(z^T Q z) over a PhaseSpace. Q is real
/// symmetric; normalizable states have Q negative definite, and the matching
/// Gaussian covariance is -Q^{-1}/2.
template <typename Scalar>
class GaussPoly {
 public:
  using Poly = Polynomial<Scalar>;

  GaussPoly() : GaussPoly(PhaseSpace{}, 0.0) {}

  GaussPoly(PhaseSpace space, double prefactor)
      : space_(space),
        prefactor_(prefactor),
        exponent_(Eigen::MatrixXd::Zero(space.dimension, space.dimension)),
        poly_(Poly::constant(space.dimension, Scalar(1))) {}

  GaussPoly(PhaseSpace space, double prefactor, Eigen::MatrixXd exponent, Poly poly)
      : space_(space), prefactor_(prefactor), exponent_(std::move(exponent)), poly_(std::move(poly)) {
    if (exponent_.rows() != space.dimension || exponent_.cols() != space.dimension ||
        poly_.num_variables() != space.dimension) {
      throw std::invalid_argument("GaussPoly parts disagree on the number of variables");
    }
    exponent_ = 0.5 * (exponent_ + exponent_.transpose()).eval();
  }

  static GaussPoly constant(PhaseSpace space, double value) { return GaussPoly(space, value); }

  static GaussPoly polynomial(PhaseSpace space, Poly poly) {
    return GaussPoly(space, 1.0, Eigen::MatrixXd::Zero(space.dimension, space.dimension),
                     std::move(poly));
  }

  static GaussPoly gaussian(PhaseSpace space, double prefactor, Eigen::MatrixXd exponent) {
    return GaussPoly(space, prefactor, std::move(exponent),
                     Poly::constant(space.dimension, Scalar(1)));
  }

  const PhaseSpace& space() const { return space_; }
  int dimension() const { return space_.dimension; }
  double prefactor() const { return prefactor_; }
  const Eigen::MatrixXd& exponent() const { return exponent_; }
  const Poly& poly() const { return poly_; }
  Poly& poly() { return poly_; }

  bool is_pure_gaussian() const { return poly_.is_constant(); }

  bool has_zero_exponent(double tol = 0.0) const {
    return exponent_.cwiseAbs().maxCoeff() <= tol;
  }

  Scalar operator()(const Eigen::VectorXd& z) const {
    const double q = z.dot(exponent_ * z);
    return Scalar(prefactor_ * std::exp(q)) * poly_(z);
  }

  /// d/dz_var stays in the class: (dP + 2 (Qz)_var P) exp(z^T Q z).
  GaussPoly derivative(int var) const {
    Poly d = poly_.derivative(var);
    for (int b = 0; b < dimension(); ++b) {
      const double q = exponent_(var, b);
      if (q != 0.0) d += poly_.times_variable(b) * Scalar(2.0 * q);
    }
    return GaussPoly(space_, prefactor_, exponent_, std::move(d));
  }

  /// -Q^{-1}/2; throws std::domain_error unless Q is negative definite.
  Eigen::MatrixXd covariance() const {
    Eigen::LLT<Eigen::MatrixXd> llt(-exponent_);
    if (llt.info() != Eigen::Success) {
      throw std::domain_error("Gaussian exponent is not negative definite");
    }
    return 0.5 * llt.solve(Eigen::MatrixXd::Identity(dimension(), dimension()));
  }

  /// Folds the prefactor into the polynomial coefficients.
  Poly folded_poly() const { return poly_ * Scalar(prefactor_); }

  GaussPoly& operator*=(double s) {
    prefactor_ *= s;
    return *this;
  }
  friend GaussPoly operator*(GaussPoly g, double s) { return g *= s; }
  friend GaussPoly operator*(double s, GaussPoly g) { return g *= s; }

  /// Pointwise product.
  friend GaussPoly operator*(const GaussPoly& a, const GaussPoly& b) {
    if (!(a.space_ == b.space_)) throw std::invalid_argument("GaussPoly over different phase spaces");
    return GaussPoly(a.space_, a.prefactor_ * b.prefactor_, a.exponent_ + b.exponent_,
                     a.poly_ * b.poly_);
  }

  /// Sum of two functions sharing one exponent matrix.
  friend GaussPoly operator+(const GaussPoly& a, const GaussPoly& b) {
    if (!(a.space_ == b.space_)) throw std::invalid_argument("GaussPoly over different phase spaces");
    if ((a.exponent_ - b.exponent_).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, a.exponent_.cwiseAbs().maxCoeff())) {
      throw std::invalid_argument("GaussPoly sum needs matching exponent matrices");
    }
    return GaussPoly(a.space_, 1.0, a.exponent_, a.folded_poly() + b.folded_poly());
  }

  template <typename Other>
  GaussPoly<Other> cast() const {
    return GaussPoly<Other>(space_, prefactor_, exponent_, poly_.template cast<Other>());
  }

 private:
  PhaseSpace space_;
  double prefactor_;
  Eigen::MatrixXd exponent_;
  Poly poly_;
};

using GaussPolyd = GaussPoly<double>;
using GaussPolycd = GaussPoly<std::complex<double>>;

inline GaussPolyd real_part(const GaussPolycd& g) {
  return GaussPolyd(g.space(), g.prefactor(), g.exponent(), real_part(g.poly()));
}

inline GaussPolyd imag_part(const GaussPolycd& g) {
  return GaussPolyd(g.space(), g.prefactor(), g.exponent(), imag_part(g.poly()));
}

/// Largest coefficient-wise difference of prefactor-folded polynomials.
/// Only meaningful when the exponent matrices agree; throws otherwise.
template <typename Scalar>
double coefficient_distance(const GaussPoly<Scalar>& a, const GaussPoly<Scalar>& b,
                            double exponent_tol = 1e-10) {
  if (a.dimension() != b.dimension() ||
      (a.exponent() - b.exponent()).cwiseAbs().maxCoeff() > exponent_tol) {
    throw std::invalid_argument("exponent matrices differ; coefficient distance undefined");
  }
  return (a.folded_poly() - b.folded_poly()).max_abs_coefficient();
}

}  // namespace ncps
