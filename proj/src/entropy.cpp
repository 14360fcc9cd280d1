#include "ncps/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ncps/moments.hpp"
#include "ncps/starcalc.hpp"

namespace ncps {

namespace {

constexpr double kLambdaSlack = 1e-12;
constexpr int kMaxExactOrder = 62;

double horner(const std::vector<std::int64_t>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + double(*it);
  return acc;
}

double clamp_lambda(double lambda) {
  check_lambda(lambda);
  return std::min(lambda, 1.0);
}

int integer_order(double order, const char* what) {
  if (!std::isfinite(order) || order < 1.0 || std::floor(order) != order || order > kMaxExactOrder) {
    throw UnsupportedError(std::string("unsupported order ") + std::to_string(order) + " for " +
                           what + ": only integer orders 1.." + std::to_string(kMaxExactOrder));
  }
  return static_cast<int>(order);
}

// |k s| of a reduced Gaussian state: its purity parameter lambda.
double reduced_tau(const GaussPolyd& g) {
  const QuadraticForm modes[] = {gaussian_form(g)};
  return std::abs(star_coordinates(g, modes).taus[0]);
}

double cell_2d(const GaussPolyd& g) { return 2.0 * std::numbers::pi * g.space().hbar; }

}  // namespace

double BetaGamma::beta_at(double lambda) const { return horner(beta, lambda * lambda); }
double BetaGamma::gamma_at(double lambda) const { return horner(gamma, lambda * lambda); }

BetaGamma beta_gamma(int n) {
  if (n < 1 || n > kMaxExactOrder) {
    throw std::out_of_range("beta_gamma needs 1 <= n <= " + std::to_string(kMaxExactOrder));
  }
  BetaGamma bg;
  bg.n = 1;
  bg.beta = {1};
  bg.gamma = {1};
  for (int k = 2; k <= n; ++k) {
    const std::size_t size = std::max(bg.beta.size(), bg.gamma.size()) + 1;
    std::vector<std::int64_t> beta(size, 0), gamma(size, 0);
    for (std::size_t e = 0; e < bg.beta.size(); ++e) {
      beta[e] += bg.beta[e];
      gamma[e + 1] += bg.beta[e];
    }
    for (std::size_t e = 0; e < bg.gamma.size(); ++e) {
      beta[e] += bg.gamma[e];
      gamma[e] += bg.gamma[e];
    }
    while (beta.size() > 1 && beta.back() == 0) beta.pop_back();
    while (gamma.size() > 1 && gamma.back() == 0) gamma.pop_back();
    bg.beta = std::move(beta);
    bg.gamma = std::move(gamma);
    bg.n = k;
  }
  return bg;
}

std::string to_string(EntropyKind kind) {
  switch (kind) {
    case EntropyKind::Renyi:
      return "renyi";
    case EntropyKind::Tsallis:
      return "tsallis";
    case EntropyKind::VonNeumann:
      return "von-neumann";
  }
  return "unknown";
}

std::string to_string(EntropyMethod method) {
  return method == EntropyMethod::ClosedForm ? "closed" : "numeric";
}

void check_lambda(double lambda) {
  if (!(lambda > kLambdaMin && lambda <= 1.0 + kLambdaSlack)) {
    throw std::out_of_range("lambda = " + std::to_string(lambda) +
                            " outside (sqrt(3)/3, 1]");
  }
}

EntropyResult renyi_entanglement(int alpha, double lambda) {
  if (alpha < 2) throw std::invalid_argument("renyi_entanglement needs alpha >= 2");
  lambda = clamp_lambda(lambda);
  EntropyResult r{EntropyKind::Renyi, alpha, 0.0, lambda, EntropyMethod::ClosedForm};
  if (lambda == 1.0) return r;
  const double beta = beta_gamma(alpha).beta_at(lambda);
  r.value = std::log(beta) / (alpha - 1) - std::log(2.0 * lambda);
  return r;
}

EntropyResult renyi_entanglement(double alpha, double lambda) {
  const int order = integer_order(alpha, "renyi");
  return order == 1 ? von_neumann_entanglement(lambda) : renyi_entanglement(order, lambda);
}

EntropyResult von_neumann_entanglement(double lambda) {
  lambda = clamp_lambda(lambda);
  EntropyResult r{EntropyKind::VonNeumann, 1, 0.0, lambda, EntropyMethod::ClosedForm};
  if (lambda == 1.0) return r;
  const double up = (1.0 + lambda) * std::log1p(lambda);
  const double down = (1.0 - lambda) * std::log1p(-lambda);
  r.value = (up - down) / (2.0 * lambda) - std::log(2.0 * lambda);
  return r;
}

EntropyResult tsallis_entanglement(int q, double lambda) {
  if (q < 1) throw std::invalid_argument("tsallis_entanglement needs q >= 1");
  if (q == 1) {
    EntropyResult r = von_neumann_entanglement(lambda);
    r.kind = EntropyKind::Tsallis;
    return r;
  }
  lambda = clamp_lambda(lambda);
  EntropyResult r{EntropyKind::Tsallis, q, 0.0, lambda, EntropyMethod::ClosedForm};
  if (lambda == 1.0) return r;
  const double beta = beta_gamma(q).beta_at(lambda);
  r.value = (1.0 - std::pow(2.0 * lambda, q - 1) / beta) / (q - 1);
  return r;
}

EntropyResult tsallis_entanglement(double q, double lambda) {
  return tsallis_entanglement(integer_order(q, "tsallis"), lambda);
}

EntropyResult renyi_numeric(const ReducedState& reduced, int alpha) {
  return renyi_numeric(reduced.function, alpha);
}

EntropyResult renyi_numeric(const GaussPolyd& reduced, int alpha) {
  if (alpha < 2) throw std::invalid_argument("renyi_numeric needs alpha >= 2");
  const double trace = integrate(star_power(reduced, alpha));
  const double value = std::log(std::pow(cell_2d(reduced), alpha - 1) * trace) / (1 - alpha);
  return {EntropyKind::Renyi, alpha, value, reduced_tau(reduced), EntropyMethod::StarPowerNumeric};
}

EntropyResult tsallis_numeric(const GaussPolyd& reduced, int q) {
  if (q < 2) throw std::invalid_argument("tsallis_numeric needs q >= 2");
  const double trace = integrate(star_power(reduced, q));
  const double value = (1.0 - std::pow(cell_2d(reduced), q - 1) * trace) / (q - 1);
  return {EntropyKind::Tsallis, q, value, reduced_tau(reduced), EntropyMethod::StarPowerNumeric};
}

EntropyResult von_neumann_numeric(const GaussPolyd& reduced) {
  const double tau = reduced_tau(reduced);
  EntropyResult r{EntropyKind::VonNeumann, 1, 0.0, tau, EntropyMethod::StarPowerNumeric};
  // A pure reduced state: ln_* diverges but W ln_* W integrates to zero.
  if (tau >= 1.0 - kLambdaSlack) return r;
  const StarLog log = star_log_gaussian(reduced * cell_2d(reduced));
  const GaussPolyd weighted(reduced.space(), reduced.prefactor(), reduced.exponent(),
                            reduced.poly() * log.form_part.folded_poly());
  r.value = -(log.constant * integrate(reduced) + integrate(weighted));
  return r;
}

EntropyResult renyi_total(const GaussPolyd& state, int alpha, const ModelParams& params) {
  if (alpha < 2) throw UnsupportedError("renyi_total supports integer orders >= 2");
  if (state.dimension() != 4) throw std::invalid_argument("renyi_total needs a four-variable state");
  const double cell = 4.0 * std::numbers::pi * std::numbers::pi *
                      (params.hbar * params.hbar - params.mu * params.nu);
  double trace = 0.0;
  EntropyMethod method = EntropyMethod::StarPowerNumeric;
  if (state.is_pure_gaussian()) {
    const auto [hp, hm] = hamiltonians_pm(params);
    const QuadraticForm modes[] = {hp, hm};
    trace = integrate(star_power(state, alpha, modes));
  } else if (alpha == 2) {
    trace = integrate(state * state);
  } else {
    throw UnsupportedError("renyi_total: non-Gaussian states only support alpha = 2");
  }
  const double value = std::log(std::pow(cell, alpha - 1) * trace) / (1 - alpha);
  return {EntropyKind::Renyi, alpha, value, derive(params).lambda, method};
}

EntropyResult renyi_total(const WignerState& state, int alpha) {
  return renyi_total(state.function, alpha, state.params);
}

double e1_nu_zero(double u) {
  if (u == 0.0) return 0.0;
  const double u2 = u * u;
  const double a = std::sqrt(4.0 + u2);
  const double b = std::sqrt(4.0 + 2.0 * u2);
  const double r = b / a;
  return 0.5 * (1.0 - r) * std::log(u2) - std::log(2.0 * a) + r * std::log(a + b);
}

EntropyResult ground_state_entropy(EntropyKind kind, int order, const ModelParams& params) {
  const double lambda = derive(params).lambda;
  switch (kind) {
    case EntropyKind::VonNeumann:
      return von_neumann_entanglement(lambda);
    case EntropyKind::Renyi:
      return order == 1 ? von_neumann_entanglement(lambda) : renyi_entanglement(order, lambda);
    case EntropyKind::Tsallis:
      return tsallis_entanglement(order, lambda);
  }
  throw std::invalid_argument("unknown entropy kind");
}

}  // namespace ncps
