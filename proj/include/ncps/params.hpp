#pragma once

#include <filesystem>
#include <istream>
#include <optional>

#include "ncps/errors.hpp"

namespace ncps {

/// Physical inputs of the 2D isotropic oscillator on a noncommutative phase
/// space: [x_i, p_j] = i hbar delta_ij, [x_1, x_2] = i mu, [p_1, p_2] = i nu.
struct ModelParams {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  double mu = 0.0;
  double nu = 0.0;
};

/// Every scalar derived from ModelParams that downstream formulas consume.
struct DerivedQuantities {
  double eta = 0.0;
  double delta = 0.0;
  double c = 0.0;  // rotation angle of H+/H-, in (0, pi/2)
  double h_plus = 0.0;
  double h_minus = 0.0;
  double lambda = 1.0;
  double u = 0.0;
  double v = 0.0;
  double theta = 0.0;  // mu*nu/hbar^2
  // mu*nu within a relative 1e-9 of hbar^2: accepted but close to the
  // singular minimal cell.
  bool near_singular = false;
};

/// Throws ParameterError unless hbar, mass, omega > 0 and mu*nu < hbar^2.
void validate(const ModelParams& params);

DerivedQuantities derive(const ModelParams& params);

/// lambda = sqrt((1 + d^2) / ((1 + d^2)^2 - d^2 eta^2)).
double lambda_from_delta_eta(double delta, double eta);

/// lambda = sqrt((4 + (u - v)^2) / (4 + (2 - uv)(u - v)^2)); requires -1 < uv < 1.
double lambda_from_uv(double u, double v);

/// lambda = sqrt((1 + d^2) / (1 + (2 - theta) d^2)); requires -1 < theta < 1.
double lambda_from_theta(double delta_sq, double theta);

/// A parameter point with hbar = m = omega = 1 whose ground state has the
/// requested lambda. theta picks the mu*nu product; it needs
/// lambda^2 (2 - theta) > 1 and delta^2 + theta >= 0. Without it, theta =
/// (1 - 1/lambda^2)/2 is used, which works on the whole range (sqrt(3)/3, 1].
ModelParams params_with_lambda(double lambda, std::optional<double> theta = std::nullopt);

/// Reads `key = value` lines (keys hbar, mass, omega, mu, nu; `#` comments).
/// Missing keys keep their defaults.
ModelParams load_params(std::istream& in);
ModelParams load_params(const std::filesystem::path& path);

}  // namespace ncps
