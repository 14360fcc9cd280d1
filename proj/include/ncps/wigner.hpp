#pragma once

#include <utility>
#include <vector>

#include "ncps/gauss_poly.hpp"
#include "ncps/params.hpp"
#include "ncps/starcalc.hpp"

namespace ncps {

inline constexpr int kMaxWignerIndex = 12;

/// The rotated pair H+, H- with H+ + H- = p^2/2m + m w^2 x^2/2 (both
/// particles). Their linear forms are mutually J-orthogonal, so the two
/// modes star-commute and the Wigner functions factor over them.
std::pair<QuadraticForm, QuadraticForm> hamiltonians_pm(const ModelParams& params);

/// sum_i p_i^2/(2m) + m w^2 x_i^2/2 over (x1, x2, p1, p2).
Polynomiald hamiltonian_polynomial(const ModelParams& params);

/// E_ij = hbar w [(i + j + 1) sqrt(1 + delta^2) + (i - j) eta].
double energy(int i, int j, const ModelParams& params);

/// Coefficients of L_n in ascending powers, from
/// (n + 1) L_{n+1} = (2n + 1 - x) L_n - n L_{n-1}.
std::vector<double> laguerre_coefficients(int n);

struct WignerState {
  int i = 0;
  int j = 0;
  ModelParams params;
  GaussPolyd function;
  double energy = 0.0;
};

/// W_ij = (-1)^(i+j) / (pi^2 h+ h-) exp(-2H+/(h+ w) - 2H-/(h- w))
///        L_i(4H+/(h+ w)) L_j(4H-/(h- w)).
/// Throws std::out_of_range for indices above kMaxWignerIndex.
WignerState wigner_state(int i, int j, const ModelParams& params);

struct ReducedState {
  int subsystem = 1;
  ModelParams params;
  GaussPolyd function;  // over (x, p) of the kept particle
};

/// Closed-form marginal of the ground state. Throws UnsupportedError for
/// excited states.
ReducedState reduce(const WignerState& state, int subsystem);

/// The reduced ground-state Gaussian directly from the parameters.
GaussPolyd reduced_ground_state(const ModelParams& params);

struct GenvalueResidual {
  double residual = 0.0;   // sup of |H * W - E W| and |W * H - E W|
  double max_abs_w = 0.0;  // sup of |W| on the same grid
};

/// Samples 11 points per axis over [-3 sigma, 3 sigma], sigma the marginal
/// width of each variable under the state's Gaussian factor.
GenvalueResidual genvalue_residual(const WignerState& state);
GenvalueResidual genvalue_residual(const WignerState& state, double energy);

}  // namespace ncps
