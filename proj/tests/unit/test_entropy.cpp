#include <cmath>
#include <vector>

#include <doctest.h>

#include "../oracles.hpp"
#include "ncps/entropy.hpp"
#include "ncps/moments.hpp"
#include "ncps/wigner.hpp"

using namespace ncps;

namespace {

std::vector<double> lambda_grid(int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(kLambdaMin + (1.0 - kLambdaMin) * i / n);
  return out;
}

using Coeffs = std::vector<std::int64_t>;

}  // namespace

TEST_CASE("beta gamma table") {
  CHECK(beta_gamma(1).beta == Coeffs{1});
  CHECK(beta_gamma(1).gamma == Coeffs{1});
  CHECK(beta_gamma(2).beta == Coeffs{2});
  CHECK(beta_gamma(2).gamma == Coeffs{1, 1});
  CHECK(beta_gamma(3).beta == Coeffs{3, 1});
  CHECK(beta_gamma(3).gamma == Coeffs{1, 3});
  CHECK(beta_gamma(4).beta == Coeffs{4, 4});
  CHECK(beta_gamma(4).gamma == Coeffs{1, 6, 1});
  CHECK(beta_gamma(5).beta == Coeffs{5, 10, 1});
  CHECK(beta_gamma(5).gamma == Coeffs{1, 10, 5});
  CHECK(beta_gamma(6).beta == Coeffs{6, 20, 6});
  CHECK(beta_gamma(6).gamma == Coeffs{1, 15, 15, 1});
  CHECK_THROWS_AS(beta_gamma(0), std::out_of_range);
}

TEST_CASE("beta gamma against the binomial closed form") {
  for (int n = 1; n <= 30; ++n) {
    const BetaGamma bg = beta_gamma(n);
    std::int64_t bsum = 0, gsum = 0;
    for (auto c : bg.beta) bsum += c;
    for (auto c : bg.gamma) gsum += c;
    CHECK(bsum == (std::int64_t{1} << (n - 1)));
    CHECK(gsum == (std::int64_t{1} << (n - 1)));
    for (std::size_t k = 0; k < bg.beta.size(); ++k) {
      CHECK(double(bg.beta[k]) == oracle::binomial(n, 2 * int(k) + 1));
    }
    for (std::size_t k = 0; k < bg.gamma.size(); ++k) {
      CHECK(double(bg.gamma[k]) == oracle::binomial(n, 2 * int(k)));
    }
    for (double l : {0.6, 0.8, 1.0}) {
      CHECK(bg.beta_at(l) == doctest::Approx(oracle::beta(n, l)).epsilon(1e-13));
      CHECK(bg.gamma_at(l) == doctest::Approx(oracle::gamma(n, l)).epsilon(1e-13));
      CHECK(bg.beta_at(l) >= std::pow(2 * l, n - 1) * (1 - 1e-15));
      CHECK(bg.beta_at(l) <= std::pow(2.0, n - 1) * (1 + 1e-15));
    }
  }
}

TEST_CASE("closed forms at the endpoints") {
  CHECK(renyi_entanglement(2, 1.0).value == 0.0);
  CHECK(von_neumann_entanglement(1.0).value == 0.0);
  CHECK(tsallis_entanglement(2, 1.0).value == 0.0);
  const double edge = kLambdaMin + 1e-9;
  CHECK(von_neumann_entanglement(edge).value == doctest::Approx(oracle::kE1Sup).epsilon(1e-8));
  CHECK(renyi_entanglement(2, edge).value == doctest::Approx(oracle::kE2Sup).epsilon(1e-8));
  CHECK(renyi_entanglement(3, edge).value == doctest::Approx(oracle::kE3Sup).epsilon(1e-8));
  CHECK(renyi_entanglement(4, edge).value == doctest::Approx(oracle::kE4Sup).epsilon(1e-8));
  CHECK(tsallis_entanglement(3, edge).value == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(tsallis_entanglement(2, 0.9).value == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(von_neumann_entanglement(oracle::kLambdaU1).value ==
        doctest::Approx(oracle::kE1AtU1).epsilon(1e-12));
}

TEST_CASE("order and range rejection") {
  CHECK_THROWS_AS(renyi_entanglement(2.5, 0.9), UnsupportedError);
  CHECK_THROWS_AS(tsallis_entanglement(0.5, 0.9), UnsupportedError);
  CHECK_THROWS_AS(renyi_entanglement(1, 0.9), std::invalid_argument);
  CHECK(renyi_entanglement(1.0, 0.9).kind == EntropyKind::VonNeumann);
  CHECK_THROWS_AS(renyi_entanglement(2, 0.5), std::out_of_range);
  CHECK_THROWS_AS(von_neumann_entanglement(1.1), std::out_of_range);
  CHECK_THROWS_AS(von_neumann_entanglement(kLambdaMin), std::out_of_range);
  CHECK_NOTHROW(von_neumann_entanglement(1.0 + 1e-13));
}

TEST_CASE("second order Renyi entropy is -ln lambda") {
  for (double l : lambda_grid(9)) {
    CHECK(renyi_entanglement(2, l).value == doctest::Approx(-std::log(l)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("ordering, bounds and monotonicity") {
  const auto grid = lambda_grid(50);
  std::vector<double> prev(7, INFINITY);
  for (double l : grid) {
    const double e1 = von_neumann_entanglement(l).value;
    std::vector<double> e{0.0, e1};
    for (int a = 2; a <= 6; ++a) e.push_back(renyi_entanglement(a, l).value);
    for (int a = 1; a <= 6; ++a) {
      CHECK(e[a] >= 0.0);
      CHECK(e[a] < 1.0);
      if (a > 1) CHECK(e[a - 1] >= e[a]);
      if (l < 1.0) CHECK(e[a] < prev[a]);
      prev[a] = e[a];
    }
    for (int i = 2; i <= 4; ++i) CHECK(e[i] >= tsallis_entanglement(i, l).value);
    if (l < 1.0) {
      CHECK(e[1] > e[2]);
      CHECK(e[4] > 0.0);
      CHECK(e[2] > tsallis_entanglement(2, l).value);
    }
  }
}

TEST_CASE("closed form against star powers") {
  for (double l : lambda_grid(9)) {
    const GaussPolyd w = reduced_ground_state(params_with_lambda(l));
    for (int a = 2; a <= 6; ++a) {
      const EntropyResult n = renyi_numeric(w, a);
      CHECK(n.method == EntropyMethod::StarPowerNumeric);
      CHECK(n.lambda == doctest::Approx(l).epsilon(1e-12));
      CHECK(n.value == doctest::Approx(renyi_entanglement(a, l).value).epsilon(1e-9).scale(1.0));
      CHECK(tsallis_numeric(w, a).value ==
            doctest::Approx(tsallis_entanglement(a, l).value).epsilon(1e-9).scale(1.0));
    }
    CHECK(von_neumann_numeric(w).value ==
          doctest::Approx(von_neumann_entanglement(l).value).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("nu = 0 special case") {
  CHECK(e1_nu_zero(0.0) == 0.0);
  CHECK(e1_nu_zero(1e6) == doctest::Approx(oracle::kNuZeroSup).epsilon(1e-3));
  for (double u : {-3.0, -0.5, 0.2, 1.0, 4.0}) {
    const double lambda = std::sqrt((4 + u * u) / (4 + 2 * u * u));
    CHECK(e1_nu_zero(u) == doctest::Approx(von_neumann_entanglement(lambda).value).epsilon(1e-12));
    CHECK(e1_nu_zero(u) == doctest::Approx(e1_nu_zero(-u)).epsilon(1e-15));
    const ModelParams p{1.0, 1.0, 1.0, u, 0.0};
    CHECK(ground_state_entropy(EntropyKind::VonNeumann, 1, p).value ==
          doctest::Approx(e1_nu_zero(u)).epsilon(1e-12));
  }
  CHECK(e1_nu_zero(1.0) == doctest::Approx(oracle::kE1AtU1).epsilon(1e-12));
}

TEST_CASE("vanishing on the nu = m^2 w^2 mu line") {
  for (int n = 0; n < 20; ++n) {
    const double mu = -0.95 + 0.1 * n;
    const double mw = 0.5 + 0.05 * n;
    const ModelParams p{1.0, 1.0, mw, mu, mu * mw * mw};
    if (mu * p.nu >= 1.0) continue;
    for (int a = 1; a <= 4; ++a) {
      CHECK(ground_state_entropy(EntropyKind::Renyi, a, p).value ==
            doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("subsystem symmetry") {
  const ModelParams p{1, 1, 1, 0.7, -0.4};
  const WignerState w = wigner_state(0, 0, p);
  const GaussPolyd m1 = marginalize(w.function, 1), m2 = marginalize(w.function, 2);
  for (int a = 2; a <= 4; ++a) {
    CHECK(renyi_numeric(m1, a).value == doctest::Approx(renyi_numeric(m2, a).value).epsilon(1e-12));
  }
}

TEST_CASE("total entropy of pure states vanishes") {
  for (const ModelParams& p : {ModelParams{}, ModelParams{1, 1, 1, 0.2, 0.1},
                               ModelParams{1, 1, 1, 1.0, -0.5}}) {
    for (int a = 2; a <= 4; ++a) {
      CHECK(std::abs(renyi_total(wigner_state(0, 0, p), a).value) < 1e-9);
    }
    CHECK(std::abs(renyi_total(wigner_state(1, 1, p), 2).value) < 1e-9);
    CHECK(std::abs(renyi_total(wigner_state(2, 0, p), 2).value) < 1e-9);
    CHECK_THROWS_AS(renyi_total(wigner_state(1, 1, p), 3), UnsupportedError);
    const GaussPolyd mixed = wigner_state(0, 0, p).function * 0.5 + wigner_state(1, 0, p).function * 0.5;
    CHECK(renyi_total(mixed, 2, p).value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  }
}
