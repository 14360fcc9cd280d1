#include "ncps/starcalc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace ncps {

namespace {

using cd = std::complex<double>;

constexpr double kRankTolerance = 1e-10;
constexpr double kImagTolerance = 1e-10;
constexpr double kTauSlack = 1e-12;
// cosh overflows a double just above 710.
constexpr double kMaxCoshArgument = 700.0;

void require_same_space(const PhaseSpace& a, const PhaseSpace& b) {
  if (!(a == b)) throw std::invalid_argument("operands live on different phase spaces");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// R_a(P) for the Gaussian-weighted operand: sum_b J_ab D_b P with
// D_b P = dP/dz_b + 2 (Qz)_b P.
Polynomialcd apply_r(const Polynomialcd& p, int a, const Eigen::MatrixXd& j,
                     const Eigen::MatrixXd& jq) {
  const int n = p.num_variables();
  Polynomialcd out(n);
  for (int b = 0; b < n; ++b) {
    if (j(a, b) != 0.0) out += p.derivative(b) * cd(j(a, b));
    if (jq(a, b) != 0.0) out += p.times_variable(b) * cd(2.0 * jq(a, b));
  }
  out.prune();
  return out;
}

// sum_alpha (i sign / 2)^|alpha| / alpha! (d^alpha poly) (R^alpha other),
// which is poly * other for sign = +1 and other * poly for sign = -1.
GaussPolycd star_with_polynomial(const Polynomiald& poly, const GaussPolyd& other, double sign) {
  const PhaseSpace& space = other.space();
  const int n = space.dimension;
  const Eigen::MatrixXd j = space.poisson_matrix();
  const Eigen::MatrixXd jq = j * other.exponent();

  std::set<Monomial> alphas;
  for (const auto& [m, c] : poly.terms()) {
    // Every sub-multi-index of m.
    Monomial a{};
    while (true) {
      alphas.insert(a);
      int v = 0;
      for (; v < n; ++v) {
        if (a[v] < m[v]) {
          ++a[v];
          break;
        }
        a[v] = 0;
      }
      if (v == n) break;
    }
  }

  std::map<Monomial, Polynomialcd> r_powers;
  r_powers.emplace(Monomial{}, other.poly().template cast<cd>());
  // std::set iterates in lexicographic order, so alpha - e_a is always ready.
  for (const Monomial& alpha : alphas) {
    if (alpha == Monomial{}) continue;
    int a = 0;
    while (alpha[a] == 0) ++a;
    Monomial prev = alpha;
    --prev[a];
    r_powers.emplace(alpha, apply_r(r_powers.at(prev), a, j, jq));
  }

  Polynomialcd result(n);
  for (const Monomial& alpha : alphas) {
    Polynomiald d = poly;
    double alpha_factorial = 1.0;
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < alpha[v]; ++k) d = d.derivative(v);
      alpha_factorial *= factorial(alpha[v]);
    }
    if (d.is_zero()) continue;
    const int order = total_degree(alpha);
    const cd factor = std::pow(cd(0.0, 0.5 * sign), order) / alpha_factorial;
    result += (d.cast<cd>() * factor) * r_powers.at(alpha);
  }
  result.prune();
  return GaussPolycd(space, other.prefactor(), other.exponent(), std::move(result));
}

GaussPolyd require_real(const GaussPolycd& g) {
  const double scale = g.poly().max_abs_coefficient();
  const double imag = imag_part(g.poly()).max_abs_coefficient();
  if (imag > kImagTolerance * scale) {
    throw std::domain_error("star product has a non-negligible imaginary part");
  }
  return real_part(g);
}

void require_polynomial(const GaussPolyd& g) {
  if (!g.has_zero_exponent()) {
    throw std::invalid_argument("polynomial star factor must have a zero Gaussian part");
  }
}

void require_star_commuting(std::span<const QuadraticForm> modes) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const Eigen::MatrixXd j = modes[i].space().poisson_matrix();
    for (std::size_t k = i + 1; k < modes.size(); ++k) {
      const Eigen::VectorXd* li[] = {&modes[i].first_line(), &modes[i].second_line()};
      const Eigen::VectorXd* lk[] = {&modes[k].first_line(), &modes[k].second_line()};
      for (const auto* a : li) {
        for (const auto* b : lk) {
          const double scale = std::max(1.0, a->norm() * b->norm() * j.norm());
          if (std::abs(a->dot(j * *b)) > 1e-10 * scale) {
            throw std::domain_error("modes do not star-commute");
          }
        }
      }
    }
  }
}

GaussPolyd from_coords(const PhaseSpace& space, double prefactor, std::span<const QuadraticForm> modes,
                       const std::vector<double>& scales) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(space.dimension, space.dimension);
  for (std::size_t k = 0; k < modes.size(); ++k) q += scales[k] * modes[k].matrix();
  return GaussPolyd::gaussian(space, prefactor, q);
}

}  // namespace

QuadraticForm::QuadraticForm(PhaseSpace space, Eigen::VectorXd l1, Eigen::VectorXd l2)
    : space_(space), l1_(std::move(l1)), l2_(std::move(l2)) {
  if (l1_.size() != space_.dimension || l2_.size() != space_.dimension) {
    throw std::invalid_argument("linear forms do not match the phase-space dimension");
  }
  k_ = l1_.dot(space_.poisson_matrix() * l2_);
}

QuadraticForm QuadraticForm::from_vectors(const PhaseSpace& space, const Eigen::Vector2d& a,
                                          const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                                          const Eigen::Vector2d& d) {
  if (space.dimension != 4) {
    throw std::invalid_argument("from_vectors builds four-variable forms; use from_lines for 2D");
  }
  Eigen::VectorXd l1(4), l2(4);
  l1 << a, b;
  l2 << c, d;
  return QuadraticForm(space, std::move(l1), std::move(l2));
}

QuadraticForm QuadraticForm::from_lines(const PhaseSpace& space, Eigen::VectorXd l1,
                                        Eigen::VectorXd l2) {
  return QuadraticForm(space, std::move(l1), std::move(l2));
}

QuadraticForm QuadraticForm::from_matrix(const PhaseSpace& space, const Eigen::MatrixXd& m) {
  const int n = space.dimension;
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("matrix size mismatch");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  const double top = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  Eigen::VectorXd l1 = Eigen::VectorXd::Zero(n), l2 = Eigen::VectorXd::Zero(n);
  if (top == 0.0) return QuadraticForm(space, l1, l2);
  const double cut = kRankTolerance * top;
  if (ev(0) < -cut) throw std::domain_error("quadratic form is not positive semidefinite");
  int rank = 0;
  for (int i = 0; i < n; ++i) rank += ev(i) > cut ? 1 : 0;
  if (rank > 2) throw std::domain_error("quadratic form is not a sum of two squares");
  l1 = std::sqrt(std::max(ev(n - 1), 0.0)) * eig.eigenvectors().col(n - 1);
  l2 = std::sqrt(std::max(ev(n - 2), 0.0)) * eig.eigenvectors().col(n - 2);
  return QuadraticForm(space, std::move(l1), std::move(l2));
}

double QuadraticForm::operator()(const Eigen::VectorXd& z) const {
  const double a = l1_.dot(z);
  const double b = l2_.dot(z);
  return a * a + b * b;
}

double k_constant(const QuadraticForm& form, const PhaseSpace& deformation) {
  return form.first_line().dot(deformation.poisson_matrix() * form.second_line());
}

GaussPolyd star_exp(const QuadraticForm& form, double t) {
  const double k = form.k();
  const double kt = k * t;
  if (std::abs(kt) > kMaxCoshArgument) throw std::out_of_range("cosh(kt) overflows");
  if (kt == 0.0) return GaussPolyd::gaussian(form.space(), 1.0, t * form.matrix());
  return GaussPolyd::gaussian(form.space(), 1.0 / std::cosh(kt), (std::tanh(kt) / k) * form.matrix());
}

GaussPolycd star_product_poly_left_complex(const GaussPolyd& left, const GaussPolyd& right) {
  require_same_space(left.space(), right.space());
  require_polynomial(left);
  return star_with_polynomial(left.folded_poly(), right, +1.0);
}

GaussPolycd star_product_poly_right_complex(const GaussPolyd& left, const GaussPolyd& right) {
  require_same_space(left.space(), right.space());
  require_polynomial(right);
  return star_with_polynomial(right.folded_poly(), left, -1.0);
}

GaussPolyd star_product_poly_left(const GaussPolyd& left, const GaussPolyd& right) {
  return require_real(star_product_poly_left_complex(left, right));
}

GaussPolyd star_product_poly_right(const GaussPolyd& left, const GaussPolyd& right) {
  return require_real(star_product_poly_right_complex(left, right));
}

StarGaussianCoords star_coordinates(const GaussPolyd& g, std::span<const QuadraticForm> modes) {
  if (!g.is_pure_gaussian()) {
    throw std::domain_error("star-exponential coordinates need a pure Gaussian");
  }
  const int n = g.dimension();
  const auto count = static_cast<Eigen::Index>(modes.size());
  StarGaussianCoords out;
  out.prefactor = g.prefactor() * g.poly().constant_term();

  const Eigen::MatrixXd& q = g.exponent();
  const double q_scale = q.cwiseAbs().maxCoeff();
  if (q_scale == 0.0) {
    out.scales.assign(modes.size(), 0.0);
    out.taus.assign(modes.size(), 0.0);
    return out;
  }
  Eigen::MatrixXd basis(n * n, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    if (!(modes[k].space() == g.space())) throw std::invalid_argument("mode on a different space");
    basis.col(k) = modes[k].matrix().reshaped();
  }
  const Eigen::VectorXd target = q.reshaped();
  const Eigen::VectorXd s = basis.colPivHouseholderQr().solve(target);
  if ((basis * s - target).cwiseAbs().maxCoeff() > 1e-10 * q_scale) {
    throw std::domain_error("Gaussian exponent is not spanned by the given forms");
  }
  for (Eigen::Index k = 0; k < count; ++k) {
    const double tau = modes[k].k() * s(k);
    if (std::abs(tau) > 1.0 + kTauSlack) {
      throw std::domain_error("|k s| > 1: Gaussian is not a star-exponential");
    }
    out.scales.push_back(s(k));
    out.taus.push_back(std::clamp(tau, -1.0, 1.0));
  }
  return out;
}

QuadraticForm gaussian_form(const GaussPolyd& g) {
  const Eigen::MatrixXd& q = g.exponent();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
  // Orient the form so that it is positive semidefinite.
  const bool negative = eig.eigenvalues().sum() < 0.0;
  return QuadraticForm::from_matrix(g.space(), negative ? Eigen::MatrixXd(-q) : q);
}

GaussPolyd gaussian_star(const GaussPolyd& left, const GaussPolyd& right,
                         std::span<const QuadraticForm> modes) {
  require_same_space(left.space(), right.space());
  require_star_commuting(modes);
  const StarGaussianCoords a = star_coordinates(left, modes);
  const StarGaussianCoords b = star_coordinates(right, modes);
  double prefactor = a.prefactor * b.prefactor;
  std::vector<double> scales(modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    // cosh(a) cosh(b) / cosh(a + b) = 1 / (1 + tanh(a) tanh(b))
    const double denom = 1.0 + a.taus[k] * b.taus[k];
    if (!(denom > 0.0)) throw std::domain_error("star product of opposite pure modes diverges");
    prefactor /= denom;
    scales[k] = (a.scales[k] + b.scales[k]) / denom;
  }
  return from_coords(left.space(), prefactor, modes, scales);
}

GaussPolyd gaussian_star(const GaussPolyd& left, const GaussPolyd& right) {
  require_same_space(left.space(), right.space());
  const GaussPolyd& shaped = left.has_zero_exponent() ? right : left;
  const QuadraticForm form = gaussian_form(shaped);
  const QuadraticForm modes[] = {form};
  return gaussian_star(left, right, modes);
}

GaussPolyd star_power(const GaussPolyd& g, int n, std::span<const QuadraticForm> modes) {
  if (n < 1) throw std::invalid_argument("star power needs n >= 1");
  GaussPolyd acc = g;
  for (int i = 1; i < n; ++i) acc = gaussian_star(acc, g, modes);
  return acc;
}

GaussPolyd star_power(const GaussPolyd& g, int n) {
  if (g.has_zero_exponent()) {
    const QuadraticForm none[] = {QuadraticForm::from_matrix(
        g.space(), Eigen::MatrixXd::Zero(g.dimension(), g.dimension()))};
    return star_power(g, n, none);
  }
  const QuadraticForm modes[] = {gaussian_form(g)};
  return star_power(g, n, modes);
}

StarLog star_log_gaussian(const GaussPolyd& g) {
  if (!g.is_pure_gaussian()) throw std::domain_error("ln_* is implemented for pure Gaussians only");
  const double amplitude = g.prefactor() * g.poly().constant_term();
  if (!(amplitude > 0.0)) throw std::domain_error("ln_* needs a positive prefactor");
  const PhaseSpace& space = g.space();
  const int n = space.dimension;
  if (g.has_zero_exponent()) {
    return {std::log(amplitude), GaussPolyd::polynomial(space, Polynomiald(n))};
  }
  const QuadraticForm form = gaussian_form(g);
  const QuadraticForm modes[] = {form};
  const StarGaussianCoords coords = star_coordinates(g, modes);
  const double s = coords.scales[0];
  const double tau = coords.taus[0];
  if (std::abs(tau) >= 1.0) throw std::domain_error("ln_* needs |k s| < 1");
  const double k = form.k();
  const double t = (k == 0.0) ? s : std::atanh(tau) / k;
  // A exp(sH) = A cosh(kt) exp_*(tH), cosh(atanh(tau)) = 1 / sqrt(1 - tau^2).
  const double constant = std::log(amplitude) - 0.5 * std::log1p(-tau * tau);
  return {constant, GaussPolyd::polynomial(space, form.polynomial() * t)};
}

}  // namespace ncps
