#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncps/cli.hpp"
#include "ncps/darboux.hpp"
#include "ncps/entropy.hpp"
#include "ncps/moments.hpp"
#include "ncps/starcalc.hpp"
#include "ncps/wigner.hpp"

namespace ncps::cli {

namespace {

Check make_check(std::string name, double error, double tolerance) {
  return {std::move(name), error <= tolerance, error, tolerance};
}

Check genvalue_check(const ModelParams& p, double perturb) {
  double worst = 0.0;
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      const WignerState w = wigner_state(i, j, p);
      const GenvalueResidual r = genvalue_residual(w, w.energy * (1.0 + perturb));
      worst = std::max(worst, r.residual / r.max_abs_w);
    }
  }
  return make_check("genvalue_residual", worst, 1e-8);
}

Check normalization_check(const ModelParams& p) {
  double worst = 0.0;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      worst = std::max(worst, std::abs(integrate(wigner_state(i, j, p).function) - 1.0));
    }
  }
  return make_check("normalization", worst, 1e-10);
}

Check orthogonality_check(const ModelParams& p) {
  std::vector<WignerState> states;
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) states.push_back(wigner_state(i, j, p));
  }
  const double cell = cell_size(p);
  double worst = 0.0;
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = a; b < states.size(); ++b) {
      const double overlap = integrate(states[a].function * states[b].function) * cell;
      worst = std::max(worst, std::abs(overlap - (a == b ? 1.0 : 0.0)));
    }
  }
  return make_check("orthogonality", worst, 1e-9);
}

Check marginal_check(const ModelParams& p) {
  const GaussPolyd w = wigner_state(0, 0, p).function;
  const GaussPolyd closed = reduced_ground_state(p);
  const Eigen::Vector2d sigma = closed.covariance().diagonal().cwiseSqrt();
  double worst = 0.0;
  for (int keep = 1; keep <= 2; ++keep) {
    const GaussPolyd m = marginalize(w, keep);
    for (int a = -10; a <= 10; ++a) {
      for (int b = -10; b <= 10; ++b) {
        const Eigen::Vector2d z(0.4 * a * sigma[0], 0.4 * b * sigma[1]);
        worst = std::max(worst, std::abs(m(z) - closed(z)) / closed.prefactor());
      }
    }
  }
  return make_check("reduced_marginal", worst, 1e-10);
}

Check group_law_check(const ModelParams& p) {
  const QuadraticForm h = hamiltonians_pm(p).first;
  const QuadraticForm modes[] = {h};
  const double t1 = 0.3, t2 = 0.5;
  const GaussPolyd lhs = gaussian_star(star_exp(h, t1), star_exp(h, t2), modes);
  const GaussPolyd rhs = star_exp(h, t1 + t2);
  const double error = std::max(std::abs(lhs.prefactor() - rhs.prefactor()),
                                (lhs.exponent() - rhs.exponent()).cwiseAbs().maxCoeff());
  return make_check("star_exp_group_law", error, 1e-10);
}

Check entropy_check(const ModelParams& p) {
  const double lambda = derive(p).lambda;
  const GaussPolyd reduced = reduced_ground_state(p);
  double worst = std::abs(von_neumann_numeric(reduced).value - von_neumann_entanglement(lambda).value);
  for (int alpha = 2; alpha <= 6; ++alpha) {
    worst = std::max(worst, std::abs(renyi_numeric(reduced, alpha).value -
                                     renyi_entanglement(alpha, lambda).value));
  }
  return make_check("entropy_closed_vs_numeric", worst, 1e-9);
}

Check pure_state_check(const ModelParams& p) {
  double worst = 0.0;
  for (int alpha = 2; alpha <= 4; ++alpha) {
    worst = std::max(worst, std::abs(renyi_total(wigner_state(0, 0, p), alpha).value));
  }
  worst = std::max(worst, std::abs(renyi_total(wigner_state(1, 1, p), 2).value));
  return make_check("pure_state_zero_entropy", worst, 1e-9);
}

Check darboux_check(const ModelParams& p) {
  const DarbouxMap<double> m = build_map<double>(p);
  const double commutator =
      (m.pushed_commutator(p.hbar) - deformed_commutator(p.hbar, p.mu, p.nu)).cwiseAbs().maxCoeff();
  const double det = std::abs(m.determinant() - (1.0 - p.mu * p.nu / (p.hbar * p.hbar)));
  return make_check("darboux_map", std::max(commutator, det), 1e-12);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["params"] = {{"hbar", params.hbar}, {"mass", params.mass}, {"omega", params.omega},
                 {"mu", params.mu},     {"nu", params.nu}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"passed", c.passed}, {"error", c.error}, {"tolerance", c.tolerance}});
  }
  j["passed"] = passed();
  return j.dump(2);
}

VerifyReport run_verify(const ModelParams& params, double perturb_energy) {
  validate(params);
  VerifyReport report;
  report.params = params;
  report.checks.push_back(genvalue_check(params, perturb_energy));
  report.checks.push_back(normalization_check(params));
  report.checks.push_back(orthogonality_check(params));
  report.checks.push_back(marginal_check(params));
  report.checks.push_back(group_law_check(params));
  report.checks.push_back(entropy_check(params));
  report.checks.push_back(pure_state_check(params));
  report.checks.push_back(darboux_check(params));
  return report;
}

}  // namespace ncps::cli
