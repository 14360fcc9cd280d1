#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncps/gauss_poly.hpp"
#include "ncps/params.hpp"
#include "ncps/wigner.hpp"

namespace ncps {

/// beta_n, gamma_n as integer polynomials in lambda^2 (ascending powers):
/// beta_n = beta_{n-1} + gamma_{n-1}, gamma_n = lambda^2 beta_{n-1} + gamma_{n-1}.
struct BetaGamma {
  int n = 1;
  std::vector<std::int64_t> beta;
  std::vector<std::int64_t> gamma;

  double beta_at(double lambda) const;
  double gamma_at(double lambda) const;
};

/// Exact for n <= 62 (coefficients sum to 2^(n-1)).
BetaGamma beta_gamma(int n);

enum class EntropyKind { Renyi, Tsallis, VonNeumann };
enum class EntropyMethod { ClosedForm, StarPowerNumeric };

std::string to_string(EntropyKind kind);
std::string to_string(EntropyMethod method);

struct EntropyResult {
  EntropyKind kind = EntropyKind::Renyi;
  int order = 1;
  double value = 0.0;  // nats
  double lambda = 1.0;
  EntropyMethod method = EntropyMethod::ClosedForm;
};

inline const double kLambdaMin = 0.57735026918962576;  // sqrt(3)/3

/// Throws std::out_of_range unless sqrt(3)/3 < lambda <= 1 (a 1e-12 slack
/// above one absorbs rounding in derived lambdas).
void check_lambda(double lambda);

/// ln(beta_alpha(lambda)) / (alpha - 1) - ln(2 lambda), integer alpha >= 2.
EntropyResult renyi_entanglement(int alpha, double lambda);

/// Order given as a real number: non-integers throw UnsupportedError,
/// alpha = 1 dispatches to the von Neumann form.
EntropyResult renyi_entanglement(double alpha, double lambda);

/// (1/2 lambda)[(1 + l) ln(1 + l) - (1 - l) ln(1 - l)] - ln(2 lambda).
EntropyResult von_neumann_entanglement(double lambda);

/// [1 - (2 lambda)^(q-1) / beta_q(lambda)] / (q - 1), integer q >= 2;
/// q = 1 is the von Neumann value.
EntropyResult tsallis_entanglement(int q, double lambda);
EntropyResult tsallis_entanglement(double q, double lambda);

/// ln[(2 pi hbar)^(alpha-1) int (W^(1))^alpha_*] / (1 - alpha), through
/// star powers and exact integration.
EntropyResult renyi_numeric(const ReducedState& reduced, int alpha);
EntropyResult renyi_numeric(const GaussPolyd& reduced, int alpha);

/// Tsallis counterpart of renyi_numeric.
EntropyResult tsallis_numeric(const GaussPolyd& reduced, int q);

/// von Neumann entropy of the reduced Gaussian through ln_*:
/// -int W ln_*(2 pi hbar W).
EntropyResult von_neumann_numeric(const GaussPolyd& reduced);

/// Renyi entropy of a four-variable state with cell 4 pi^2 (hbar^2 - mu nu).
/// Pure Gaussians go through star powers over H+/H-; other states only for
/// alpha = 2, through int W * W = int W^2. Anything else is unsupported.
EntropyResult renyi_total(const GaussPolyd& state, int alpha, const ModelParams& params);
EntropyResult renyi_total(const WignerState& state, int alpha);

/// E_1 of the ground state at nu = 0 in terms of u = m w mu / hbar.
double e1_nu_zero(double u);

/// Ground-state E_alpha from physical parameters (alpha = 1 is von Neumann).
EntropyResult ground_state_entropy(EntropyKind kind, int order, const ModelParams& params);

}  // namespace ncps
