#include "ncps/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace ncps {

namespace {

constexpr int kGridPoints = 11;
constexpr double kGridHalfWidth = 3.0;

void check_index(int n) {
  if (n < 0 || n > kMaxWignerIndex) {
    throw std::out_of_range("Wigner index " + std::to_string(n) + " outside [0, " +
                            std::to_string(kMaxWignerIndex) + "]");
  }
}

}  // namespace

std::pair<QuadraticForm, QuadraticForm> hamiltonians_pm(const ModelParams& params) {
  const DerivedQuantities d = derive(params);
  const PhaseSpace space = PhaseSpace::full(params);
  const double s = std::sin(d.c);
  const double c = std::cos(d.c);
  const double xw = params.omega * std::sqrt(params.mass) / std::numbers::sqrt2;
  const double pw = 1.0 / (std::sqrt(params.mass) * std::numbers::sqrt2);

  QuadraticForm plus = QuadraticForm::from_vectors(space, {0.0, xw * s}, {c * pw, 0.0},
                                                   {xw * s, 0.0}, {0.0, -c * pw});
  QuadraticForm minus = QuadraticForm::from_vectors(space, {xw * c, 0.0}, {0.0, s * pw},
                                                    {0.0, xw * c}, {-s * pw, 0.0});
  return {std::move(plus), std::move(minus)};
}

Polynomiald hamiltonian_polynomial(const ModelParams& params) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  const double kx = 0.5 * params.mass * params.omega * params.omega;
  const double kp = 0.5 / params.mass;
  m.diagonal() << kx, kx, kp, kp;
  return Polynomiald::quadratic(m);
}

double energy(int i, int j, const ModelParams& params) {
  const DerivedQuantities d = derive(params);
  return params.hbar * params.omega *
         ((i + j + 1) * std::sqrt(1.0 + d.delta * d.delta) + (i - j) * d.eta);
}

std::vector<double> laguerre_coefficients(int n) {
  if (n < 0) throw std::out_of_range("Laguerre degree must be nonnegative");
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{1.0, -1.0};
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t e = 0; e < cur.size(); ++e) {
      next[e] += (2 * k + 1) * cur[e];
      next[e + 1] -= cur[e];
    }
    for (std::size_t e = 0; e < prev.size(); ++e) next[e] -= k * prev[e];
    for (double& v : next) v /= (k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

WignerState wigner_state(int i, int j, const ModelParams& params) {
  check_index(i);
  check_index(j);
  const DerivedQuantities d = derive(params);
  const PhaseSpace space = PhaseSpace::full(params);
  const auto [hp, hm] = hamiltonians_pm(params);
  const double wp = params.omega * d.h_plus;
  const double wm = params.omega * d.h_minus;

  const Eigen::MatrixXd q = -2.0 * hp.matrix() / wp - 2.0 * hm.matrix() / wm;
  Polynomiald poly = compose(laguerre_coefficients(i), hp.polynomial() * (4.0 / wp)) *
                     compose(laguerre_coefficients(j), hm.polynomial() * (4.0 / wm));
  poly.prune();
  const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  const double prefactor =
      sign / (std::numbers::pi * std::numbers::pi * d.h_plus * d.h_minus);

  WignerState state;
  state.i = i;
  state.j = j;
  state.params = params;
  state.function = GaussPolyd(space, prefactor, q, std::move(poly));
  state.energy = energy(i, j, params);
  return state;
}

GaussPolyd reduced_ground_state(const ModelParams& params) {
  const DerivedQuantities d = derive(params);
  const double d2 = 1.0 + d.delta * d.delta;
  const double mw = params.mass * params.omega;
  const double scale = std::sqrt(d2) / (params.hbar * mw);
  Eigen::Matrix2d q = Eigen::Matrix2d::Zero();
  q(0, 0) = -scale * mw * mw / (d2 + d.delta * d.eta);
  q(1, 1) = -scale / (d2 - d.delta * d.eta);
  const double prefactor =
      std::sqrt(d2) / (std::numbers::pi * params.hbar * std::sqrt(d2 * d2 - d.delta * d.delta * d.eta * d.eta));
  return GaussPolyd::gaussian(PhaseSpace::reduced(params.hbar), prefactor, q);
}

ReducedState reduce(const WignerState& state, int subsystem) {
  if (subsystem != 1 && subsystem != 2) throw std::invalid_argument("subsystem must be 1 or 2");
  if (state.i != 0 || state.j != 0) {
    throw UnsupportedError("closed-form marginals exist for the ground state only");
  }
  return {subsystem, state.params, reduced_ground_state(state.params)};
}

GenvalueResidual genvalue_residual(const WignerState& state) {
  return genvalue_residual(state, state.energy);
}

GenvalueResidual genvalue_residual(const WignerState& state, double energy) {
  const GaussPolyd& w = state.function;
  const PhaseSpace& space = w.space();
  const GaussPolyd h = GaussPolyd::polynomial(space, hamiltonian_polynomial(state.params));

  using cd = std::complex<double>;
  const Polynomialcd ew = w.poly().cast<cd>() * cd(energy);
  const Polynomialcd left = star_product_poly_left_complex(h, w).poly() - ew;
  const Polynomialcd right = star_product_poly_right_complex(w, h).poly() - ew;

  const Eigen::MatrixXd cov = w.covariance();
  const Eigen::Vector4d sigma = cov.diagonal().cwiseSqrt();
  GenvalueResidual out;
  Eigen::VectorXd z(4);
  const double step = 2.0 * kGridHalfWidth / (kGridPoints - 1);
  for (int a = 0; a < kGridPoints; ++a) {
    for (int b = 0; b < kGridPoints; ++b) {
      for (int c = 0; c < kGridPoints; ++c) {
        for (int e = 0; e < kGridPoints; ++e) {
          const int idx[] = {a, b, c, e};
          for (int v = 0; v < 4; ++v) z[v] = (-kGridHalfWidth + step * idx[v]) * sigma[v];
          const double gauss = w.prefactor() * std::exp(z.dot(w.exponent() * z));
          out.max_abs_w = std::max(out.max_abs_w, std::abs(gauss * w.poly()(z)));
          out.residual = std::max(
              {out.residual, std::abs(gauss * left(z)), std::abs(gauss * right(z))});
        }
      }
    }
  }
  return out;
}

}  // namespace ncps
