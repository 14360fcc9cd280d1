#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "ncps/params.hpp"

using namespace ncps;

TEST_CASE("commutative limit") {
  const DerivedQuantities d = derive(ModelParams{});
  CHECK(d.eta == 0.0);
  CHECK(d.delta == 0.0);
  CHECK(d.c == doctest::Approx(M_PI / 4).epsilon(1e-15));
  CHECK(d.h_plus == 1.0);
  CHECK(d.h_minus == 1.0);
  CHECK(d.lambda == 1.0);
  CHECK(d.theta == 0.0);
  CHECK_FALSE(d.near_singular);
}

TEST_CASE("mu only") {
  const DerivedQuantities d = derive({1, 1, 1, 1, 0});
  CHECK(d.u == 1.0);
  CHECK(d.v == 0.0);
  CHECK(d.delta == 0.5);
  CHECK(d.eta == 0.5);
  CHECK(d.lambda == doctest::Approx(std::sqrt(1.25 / 1.5)).epsilon(1e-15));
  CHECK(lambda_from_uv(1, 0) == doctest::Approx(0.912870929175277).epsilon(1e-14));
}

TEST_CASE("lambda helpers") {
  CHECK(lambda_from_uv(0, 0) == 1.0);
  CHECK_THROWS(lambda_from_uv(1, 1));
  CHECK(lambda_from_theta(0.0, 0.3) == 1.0);
  CHECK(lambda_from_theta(1.0, 0.0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  // delta^2 = 1, theta = 0: u - v = 2 delta = 2 with u v = 0.
  CHECK(lambda_from_theta(1.0, 0.0) == doctest::Approx(lambda_from_uv(2.0, 0.0)).epsilon(1e-14));
  CHECK(lambda_from_theta(INFINITY, -1.0 + 1e-15) == doctest::Approx(std::sqrt(3.0) / 3).epsilon(1e-12));
  CHECK_THROWS_AS(lambda_from_uv(2, 0.5), ParameterError);
  CHECK_THROWS_AS(lambda_from_uv(-2, 0.5), ParameterError);
  CHECK_THROWS_AS(lambda_from_theta(1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(lambda_from_theta(1.0, -1.0), ParameterError);
}

TEST_CASE("lambda tends to sqrt(3)/3 as mu nu -> -hbar^2 with large delta") {
  const double mu = 1e4, nu = -(1.0 - 1e-12) / mu;
  CHECK(derive({1, 1, 1, mu, nu}).lambda == doctest::Approx(std::sqrt(3.0) / 3).epsilon(1e-6));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(derive({0, 1, 1, 0, 0}), ParameterError);
  CHECK_THROWS_AS(derive({1, -1, 1, 0, 0}), ParameterError);
  CHECK_THROWS_AS(derive({1, 1, 0, 0, 0}), ParameterError);
  CHECK_THROWS_AS(derive({1, 1, 1, 1, 1}), ParameterError);
  CHECK_THROWS_AS(derive({1, 1, 1, 2, 1}), ParameterError);
  CHECK(derive({1, 1, 1, 1, 1 - 1e-10}).near_singular);
  CHECK_FALSE(derive({1, 1, 1, 1, 0.9}).near_singular);
}

TEST_CASE("random parameter points satisfy the derived identities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_scale(-1.0, 1.0), theta_dist(-0.999, 0.999);
  for (int n = 0; n < 10000; ++n) {
    ModelParams p;
    p.hbar = std::exp(log_scale(rng));
    p.mass = std::exp(log_scale(rng));
    p.omega = std::exp(log_scale(rng));
    const double theta = theta_dist(rng);
    p.mu = std::exp(2.0 * log_scale(rng)) * p.hbar;
    p.nu = theta * p.hbar * p.hbar / p.mu;
    if (n % 2) std::swap(p.mu, p.nu);
    const DerivedQuantities d = derive(p);
    const double cell = p.hbar * p.hbar - p.mu * p.nu;
    REQUIRE(d.h_plus * d.h_minus == doctest::Approx(cell).epsilon(1e-12));
    REQUIRE(d.h_plus > 0.0);
    REQUIRE(d.h_minus > 0.0);
    REQUIRE(d.eta * d.eta - d.delta * d.delta == doctest::Approx(d.theta).epsilon(1e-10).scale(1.0));
    REQUIRE(d.lambda > std::sqrt(3.0) / 3);
    REQUIRE(d.lambda <= 1.0 + 1e-15);
    REQUIRE(lambda_from_delta_eta(d.delta, d.eta) == doctest::Approx(d.lambda).epsilon(1e-12));
    REQUIRE(lambda_from_theta(d.delta * d.delta, d.theta) == doctest::Approx(d.lambda).epsilon(1e-12));
    if (std::abs(d.u * d.v) < 1.0) {
      REQUIRE(lambda_from_uv(d.u, d.v) == doctest::Approx(d.lambda).epsilon(1e-12));
    }
  }
}

TEST_CASE("no entanglement cases give lambda = 1") {
  CHECK(derive({1, 1, 1, 0, 0}).lambda == 1.0);
  for (double mw : {0.5, 1.0, 2.0}) {
    ModelParams p{1.0, 1.0, mw, 0.3, 0.3 * mw * mw};  // nu / mu = m^2 w^2
    CHECK(derive(p).lambda == doctest::Approx(1.0).epsilon(1e-15));
  }
  // mu nu -> hbar^2 from below.
  CHECK(derive({1, 1, 1, 2.0, 0.5 * (1 - 1e-12)}).lambda == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("params_with_lambda round trip") {
  for (double theta : {-0.1, 0.0, 0.4}) {
    for (double lambda : {0.8, 0.95, 1.0}) {
      const ModelParams p = params_with_lambda(lambda, theta);
      CHECK(derive(p).lambda == doctest::Approx(lambda).epsilon(1e-12));
      if (lambda < 1.0) CHECK(p.mu * p.nu == doctest::Approx(theta).epsilon(1e-12).scale(1.0));
    }
  }
  for (double lambda : {0.58, 0.6, 0.7, 0.9, 0.999999}) {
    CHECK(derive(params_with_lambda(lambda)).lambda == doctest::Approx(lambda).epsilon(1e-12));
  }
  CHECK_THROWS_AS(params_with_lambda(0.7, 0.0), ParameterError);
  CHECK_THROWS_AS(params_with_lambda(0.95, -0.5), ParameterError);
  CHECK_THROWS_AS(params_with_lambda(0.5), ParameterError);
}

TEST_CASE("parameter file") {
  std::istringstream in("# oscillator\nhbar = 2\nmass: 0.5\n  mu = 0.25 # comment\n\nnu=-0.1\n");
  const ModelParams p = load_params(in);
  CHECK(p.hbar == 2.0);
  CHECK(p.mass == 0.5);
  CHECK(p.omega == 1.0);
  CHECK(p.mu == 0.25);
  CHECK(p.nu == -0.1);

  std::istringstream unknown("planck = 1\n");
  CHECK_THROWS_AS(load_params(unknown), ParameterError);
  std::istringstream bad("mu = one\n");
  CHECK_THROWS_AS(load_params(bad), ParameterError);
  std::istringstream missing("mu 1\n");
  CHECK_THROWS_AS(load_params(missing), ParameterError);
  CHECK_THROWS_AS(load_params(std::filesystem::path("/nonexistent/params.txt")), ParameterError);
}
