#include "ncps/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

namespace ncps {

namespace {

constexpr double kCrossCheckTolerance = 1e-12;
constexpr double kNearSingular = 1e-9;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

void validate(const ModelParams& p) {
  if (!(p.hbar > 0.0) || !std::isfinite(p.hbar)) {
    throw ParameterError("hbar must be positive and finite");
  }
  if (!(p.mass > 0.0) || !std::isfinite(p.mass)) {
    throw ParameterError("mass must be positive and finite");
  }
  if (!(p.omega > 0.0) || !std::isfinite(p.omega)) {
    throw ParameterError("omega must be positive and finite");
  }
  if (!std::isfinite(p.mu) || !std::isfinite(p.nu)) {
    throw ParameterError("mu and nu must be finite");
  }
  if (p.mu * p.nu >= p.hbar * p.hbar) {
    throw ParameterError("mu*nu must be below hbar^2 (singular minimal cell, h_minus <= 0)");
  }
}

double lambda_from_delta_eta(double delta, double eta) {
  const double d2 = delta * delta;
  const double one_d2 = 1.0 + d2;
  return std::sqrt(one_d2 / (one_d2 * one_d2 - d2 * eta * eta));
}

double lambda_from_uv(double u, double v) {
  const double uv = u * v;
  if (!(uv > -1.0 && uv < 1.0)) {
    throw ParameterError("lambda_from_uv requires -1 < u*v < 1");
  }
  const double w2 = (u - v) * (u - v);
  return std::sqrt((4.0 + w2) / (4.0 + (2.0 - uv) * w2));
}

double lambda_from_theta(double delta_sq, double theta) {
  if (!(theta > -1.0 && theta < 1.0)) {
    throw ParameterError("lambda_from_theta requires -1 < theta < 1");
  }
  if (delta_sq < 0.0) throw ParameterError("delta^2 must be nonnegative");
  if (std::isinf(delta_sq)) return std::sqrt(1.0 / (2.0 - theta));
  return std::sqrt((1.0 + delta_sq) / (1.0 + (2.0 - theta) * delta_sq));
}

DerivedQuantities derive(const ModelParams& p) {
  validate(p);
  DerivedQuantities d;
  const double mw = p.mass * p.omega;
  const double scale = 2.0 * p.hbar * mw;
  d.eta = (mw * mw * p.mu + p.nu) / scale;
  d.delta = (mw * mw * p.mu - p.nu) / scale;
  d.u = mw * p.mu / p.hbar;
  d.v = p.nu / (p.hbar * mw);
  d.theta = p.mu * p.nu / (p.hbar * p.hbar);
  d.near_singular = d.theta >= 1.0 - kNearSingular;

  const double root = std::sqrt(1.0 + d.delta * d.delta);
  d.h_plus = p.hbar * (root + d.eta);
  d.h_minus = p.hbar * (root - d.eta);

  // arccot(-delta) on its principal branch (0, pi).
  d.c = 0.5 * std::atan2(1.0, -d.delta);

  // The theta form avoids the (1+d^2)^2 - d^2 eta^2 cancellation, so it is
  // the reference value; the other two are post-condition cross-checks.
  const double d2 = d.delta * d.delta;
  d.lambda = (d.theta > -1.0) ? std::sqrt((1.0 + d2) / (1.0 + (2.0 - d.theta) * d2))
                              : lambda_from_delta_eta(d.delta, d.eta);
  const double via_delta_eta = lambda_from_delta_eta(d.delta, d.eta);
  const double tol = kCrossCheckTolerance * std::max(1.0, d2);
  if (std::abs(via_delta_eta - d.lambda) > tol * d.lambda) {
    throw std::logic_error("lambda cross-check failed between (delta, eta) and theta forms");
  }
  if (d.u * d.v > -1.0 && d.u * d.v < 1.0) {
    const double via_uv = lambda_from_uv(d.u, d.v);
    if (std::abs(via_uv - d.lambda) > tol * d.lambda) {
      throw std::logic_error("lambda cross-check failed between (u, v) and theta forms");
    }
  }
  return d;
}

ModelParams params_with_lambda(double lambda, std::optional<double> theta_opt) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ParameterError("lambda must lie in (0, 1]");
  ModelParams p;
  if (lambda == 1.0) return p;
  const double l2 = lambda * lambda;
  const double theta = theta_opt.value_or(0.5 * (1.0 - 1.0 / l2));
  const double denom = l2 * (2.0 - theta) - 1.0;
  if (!(denom > 0.0)) {
    throw ParameterError("lambda is not reachable for this theta (needs lambda^2 (2 - theta) > 1)");
  }
  const double delta = std::sqrt((1.0 - l2) / denom);
  const double disc = delta * delta + theta;
  if (disc < 0.0) throw ParameterError("theta too negative for this lambda: no real (mu, nu)");
  // hbar = m = omega = 1: mu - nu = 2 delta, mu*nu = theta.
  p.mu = delta + std::sqrt(disc);
  p.nu = p.mu - 2.0 * delta;
  return p;
}

ModelParams load_params(std::istream& in) {
  ModelParams p;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find_first_of("=:");
    if (eq == std::string::npos) {
      throw ParameterError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string text = trim(std::string_view(body).substr(eq + 1));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ParameterError("line " + std::to_string(line_no) + ": '" + text +
                           "' is not a decimal number");
    }
    if (key == "hbar") {
      p.hbar = value;
    } else if (key == "mass") {
      p.mass = value;
    } else if (key == "omega") {
      p.omega = value;
    } else if (key == "mu") {
      p.mu = value;
    } else if (key == "nu") {
      p.nu = value;
    } else {
      throw ParameterError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return p;
}

ModelParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open parameter file " + path.string());
  return load_params(in);
}

}  // namespace ncps
