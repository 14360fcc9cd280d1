#include <cmath>

#include <doctest.h>

#include "ncps/darboux.hpp"
#include "ncps/moments.hpp"
#include "ncps/starcalc.hpp"
#include "ncps/wigner.hpp"

using namespace ncps;

TEST_CASE("laguerre coefficients") {
  CHECK(laguerre_coefficients(0) == std::vector<double>{1.0});
  CHECK(laguerre_coefficients(1) == std::vector<double>{1.0, -1.0});
  const auto l2 = laguerre_coefficients(2);
  CHECK(l2[0] == 1.0);
  CHECK(l2[1] == -2.0);
  CHECK(l2[2] == 0.5);
  // L_n(0) = 1; L_n(x) leading coefficient (-1)^n / n!.
  const auto l6 = laguerre_coefficients(6);
  double sum = 0.0;
  for (double c : l6) sum += c;  // L_6(1)
  CHECK(l6[0] == doctest::Approx(1.0));
  CHECK(l6[6] == doctest::Approx(1.0 / 720.0));
  CHECK(sum == doctest::Approx(-0.25694444444444444).epsilon(1e-12));
}

TEST_CASE("H+ + H- is the oscillator Hamiltonian") {
  for (const ModelParams& p : {ModelParams{}, ModelParams{1, 1, 1, 0.3, 0.1},
                               ModelParams{1.3, 0.7, 1.9, -0.4, 0.25}}) {
    const auto [hp, hm] = hamiltonians_pm(p);
    const auto h = hamiltonian_polynomial(p);
    CHECK((hp.polynomial() + hm.polynomial() - h).max_abs_coefficient() < 1e-14);
  }
}

TEST_CASE("H+ and H- star-commute and carry the mode frequencies") {
  const ModelParams p{1, 1, 1, 0.3, 0.1};
  const DerivedQuantities d = derive(p);
  const auto [hp, hm] = hamiltonians_pm(p);
  const PhaseSpace s = PhaseSpace::full(p);
  const auto a = GaussPolyd::polynomial(s, hp.polynomial());
  const auto b = GaussPolyd::polynomial(s, hm.polynomial());
  const auto ab = star_product_poly_left_complex(a, b).poly();
  const auto ba = star_product_poly_left_complex(b, a).poly();
  CHECK((ab - ba).max_abs_coefficient() < 1e-10);
  CHECK(std::abs(hp.k()) == doctest::Approx(d.h_plus * p.omega / 2).epsilon(1e-14));
  CHECK(std::abs(hm.k()) == doctest::Approx(d.h_minus * p.omega / 2).epsilon(1e-14));
}

TEST_CASE("commutative ground state") {
  const WignerState w = wigner_state(0, 0, ModelParams{});
  CHECK(w.energy == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.function.prefactor() == doctest::Approx(1.0 / (M_PI * M_PI)));
  CHECK((w.function.exponent() + Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("energies") {
  const ModelParams p{1, 1, 1, 0.2, 0.1};
  CHECK(wigner_state(1, 0, p).energy == doctest::Approx(2 * std::sqrt(1.0025) + 0.15).epsilon(1e-15));
  CHECK(energy(1, 0, p) - energy(0, 1, p) == doctest::Approx(0.3).epsilon(1e-14));
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) CHECK(energy(i, j, ModelParams{}) == doctest::Approx(i + j + 1));
  }
  CHECK_THROWS_AS(wigner_state(13, 0, p), std::out_of_range);
  CHECK_THROWS_AS(wigner_state(0, -1, p), std::out_of_range);
}

TEST_CASE("star-genvalue equation") {
  for (const ModelParams& p : {ModelParams{1, 1, 1, 0.2, 0.1}, ModelParams{1, 1, 1, 0.2, 0.05},
                               ModelParams{1.3, 0.7, 1.9, -0.4, 0.25}}) {
    for (auto [i, j] : {std::pair{0, 0}, {1, 0}, {2, 1}, {1, 2}}) {
      const WignerState w = wigner_state(i, j, p);
      const GenvalueResidual r = genvalue_residual(w);
      CHECK(r.residual <= 1e-8 * r.max_abs_w);
      const GenvalueResidual wrong = genvalue_residual(w, w.energy + 1.0);
      CHECK(wrong.residual >= 0.9 * wrong.max_abs_w);
    }
  }
}

TEST_CASE("normalization and orthogonality") {
  const ModelParams p{1, 1, 1, 0.2, 0.1};
  const double cell = cell_size(p);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      CHECK(integrate(wigner_state(i, j, p).function) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  const auto w10 = wigner_state(1, 0, p).function;
  const auto w01 = wigner_state(0, 1, p).function;
  CHECK(std::abs(integrate(w10 * w01)) * cell < 1e-10);
  CHECK(integrate(w10 * w10) * cell == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sign structure") {
  const ModelParams p{1, 1, 1, 0.2, 0.1};
  const auto w00 = wigner_state(0, 0, p).function;
  const auto w10 = wigner_state(1, 0, p).function;
  const Eigen::Vector4d origin = Eigen::Vector4d::Zero();
  CHECK(w00(origin) > 0.0);
  CHECK(w10(origin) < 0.0);
  CHECK(w00.is_pure_gaussian());
  // Negative definite exponent means W00 > 0 everywhere.
  CHECK_NOTHROW(w00.covariance());
}

TEST_CASE("reduced states") {
  const ModelParams p{1, 1, 1, 1, 0};
  const WignerState w = wigner_state(0, 0, p);
  const ReducedState r1 = reduce(w, 1), r2 = reduce(w, 2);
  CHECK(r1.function.prefactor() == doctest::Approx(derive(p).lambda / M_PI).epsilon(1e-14));
  CHECK(r1.function.prefactor() == r2.function.prefactor());
  CHECK(r1.function.exponent() == r2.function.exponent());
  CHECK(integrate(r1.function) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(reduce(wigner_state(1, 0, p), 1), UnsupportedError);

  const GaussPolyd commutative = reduced_ground_state(ModelParams{1.0, 2.0, 0.5, 0, 0});
  // (1/pi hbar) exp(-(p^2 + m^2 w^2 x^2)/(hbar m w)) with m w = 1.
  CHECK(commutative.prefactor() == doctest::Approx(1.0 / M_PI));
  CHECK(commutative.exponent()(0, 0) == doctest::Approx(-1.0));
  CHECK(commutative.exponent()(1, 1) == doctest::Approx(-1.0));
}
