#include "ncps/moments.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace ncps {

namespace {

// Calls fn(m) for every monomial in `vars` variables of total degree n.
void for_each_monomial(int vars, int n, const std::function<void(const Monomial&)>& fn) {
  Monomial m{};
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == vars - 1) {
      m[var] = static_cast<std::uint8_t>(left);
      fn(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[var] = static_cast<std::uint8_t>(e);
      rec(var + 1, left - e);
    }
    m[var] = 0;
  };
  if (vars == 0) {
    if (n == 0) fn(m);
    return;
  }
  rec(0, n);
}

template <typename Scalar>
Scalar integrate_impl(const GaussPoly<Scalar>& f) {
  if (f.poly().is_zero()) return Scalar(0);
  const Eigen::MatrixXd cov = f.covariance();
  const MomentTable table(cov, f.poly().degree());
  Scalar sum(0);
  for (const auto& [m, c] : f.poly().terms()) {
    if (total_degree(m) % 2 != 0) continue;
    sum += c * table(m);
  }
  return sum * Scalar(f.prefactor() * gaussian_mass(f.exponent()));
}

}  // namespace

MomentTable::MomentTable(Eigen::MatrixXd covariance, int max_degree)
    : covariance_(std::move(covariance)), max_degree_(max_degree) {
  if (max_degree < 0 || max_degree > kMaxDegree) {
    throw std::out_of_range("moment degree " + std::to_string(max_degree) + " outside [0, " +
                            std::to_string(kMaxDegree) + "]");
  }
  if (covariance_.rows() != covariance_.cols() || covariance_.rows() > kMaxVariables) {
    throw std::invalid_argument("covariance must be square with at most four variables");
  }
  const int d = static_cast<int>(covariance_.rows());
  moments_[pack(Monomial{})] = 1.0;
  for (int n = 2; n <= max_degree_; n += 2) {
    for_each_monomial(d, n, [&](const Monomial& alpha) {
      int a = 0;
      while (alpha[a] == 0) ++a;
      Monomial beta = alpha;
      beta[a] -= 1;
      double value = 0.0;
      for (int b = 0; b < d; ++b) {
        if (beta[b] == 0 || covariance_(a, b) == 0.0) continue;
        Monomial rest = beta;
        rest[b] -= 1;
        value += covariance_(a, b) * beta[b] * moments_.at(pack(rest));
      }
      moments_[pack(alpha)] = value;
    });
  }
}

double MomentTable::operator()(const Monomial& alpha) const {
  const int n = total_degree(alpha);
  if (n > max_degree_) {
    throw std::out_of_range("moment of degree " + std::to_string(n) + " beyond table degree " +
                            std::to_string(max_degree_));
  }
  if (n % 2 != 0) return 0.0;
  return moments_.at(pack(alpha));
}

double gaussian_mass(const Eigen::MatrixXd& exponent) {
  Eigen::LLT<Eigen::MatrixXd> llt(-exponent);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("Gaussian exponent is not negative definite");
  }
  const Eigen::MatrixXd l = llt.matrixL();
  const double sqrt_det = l.diagonal().prod();
  return std::pow(std::numbers::pi, 0.5 * static_cast<double>(exponent.rows())) / sqrt_det;
}

double integrate(const GaussPolyd& f) { return integrate_impl(f); }

std::complex<double> integrate(const GaussPolycd& f) { return integrate_impl(f); }

GaussPolyd marginalize(const GaussPolyd& f, int keep) {
  if (f.dimension() != 4) throw std::invalid_argument("marginalize needs a four-variable function");
  if (keep != 1 && keep != 2) throw std::invalid_argument("subsystem must be 1 or 2");
  const std::array<int, 2> kept{keep - 1, keep + 1};
  const std::array<int, 2> gone{2 - keep, 4 - keep};

  const Eigen::MatrixXd& q = f.exponent();
  Eigen::Matrix2d qkk, qkr, qrr;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      qkk(i, j) = q(kept[i], kept[j]);
      qkr(i, j) = q(kept[i], gone[j]);
      qrr(i, j) = q(gone[i], gone[j]);
    }
  }
  Eigen::LLT<Eigen::Matrix2d> llt(-qrr);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("exponent not negative definite in the integrated block");
  }
  // r = y + B k removes the k-r cross terms.
  const Eigen::Matrix2d b = llt.solve(qkr.transpose());
  const Eigen::Matrix2d schur = qkk + qkr * b;

  // Local variable order (k0, k1, y0, y1).
  std::array<Polynomiald, 2> shifted;
  for (int j = 0; j < 2; ++j) {
    Eigen::Vector4d lin(b(j, 0), b(j, 1), 0.0, 0.0);
    lin[2 + j] = 1.0;
    shifted[j] = Polynomiald::linear(lin);
  }
  const int deg = f.poly().degree();
  std::array<std::vector<Polynomiald>, 2> powers;
  for (int j = 0; j < 2; ++j) {
    powers[j].push_back(Polynomiald::constant(4, 1.0));
    for (int e = 1; e <= deg; ++e) powers[j].push_back(powers[j].back() * shifted[j]);
  }

  Polynomiald local(4);
  for (const auto& [m, c] : f.poly().terms()) {
    Monomial km{};
    km[0] = m[kept[0]];
    km[1] = m[kept[1]];
    Polynomiald term(4);
    term.add_term(km, c);
    local += term * powers[0][m[gone[0]]] * powers[1][m[gone[1]]];
  }

  const Eigen::MatrixXd cov_y = 0.5 * llt.solve(Eigen::Matrix2d::Identity());
  const MomentTable table(cov_y, deg);
  Polynomiald out(2);
  for (const auto& [m, c] : local.terms()) {
    const Monomial ym{m[2], m[3], 0, 0};
    if (total_degree(ym) % 2 != 0) continue;
    out.add_term(Monomial{m[0], m[1], 0, 0}, c * table(ym));
  }
  out.prune();
  const double mass = gaussian_mass(qrr);
  return GaussPolyd(PhaseSpace::reduced(f.space().hbar), f.prefactor() * mass, schur, out);
}

}  // namespace ncps
