#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "ncps/params.hpp"

namespace ncps::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kBadParameters = 2, kUnsupported = 3 };

/// Nine significant digits, no negative zero.
std::string format_number(double x);

/// Runs body(i) for i in [0, n) on a few worker threads. Results must go to
/// index-addressed storage so output order never depends on scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

struct FigureSpec {
  int id = 3;
  int points = 0;  // per axis; 0 picks the figure's default
  double a_min = 0.0, a_max = 0.0;
  double b_min = 0.0, b_max = 0.0;
};

/// Defaults: fig1 (u, v) in [-5, 5]^2 at 101^2; fig2 (delta^2, theta) in
/// [0, 10] x [-1, 1] at 101^2; fig3/fig5 lambda in [0.578, 1] at 401;
/// fig4 u in [-10, 10] at 401. Throws UnsupportedError for other ids.
FigureSpec default_figure(int id);

/// Whole CSV text, header included, '\n' line endings.
std::string figure_csv(const FigureSpec& spec);

/// `i,j,energy` rows for i <= i_max, j <= j_max. Natural units divide by
/// hbar omega; otherwise energies are in the units of the inputs.
std::string spectrum_csv(const ModelParams& params, int i_max, int j_max, bool natural_units,
                         bool sort);

struct Check {
  std::string name;
  bool passed = false;
  double error = 0.0;
  double tolerance = 0.0;
};

struct VerifyReport {
  ModelParams params;
  std::vector<Check> checks;
  bool passed() const;
  std::string to_json() const;
};

/// The invariant suite at one parameter point. perturb_energy scales the
/// eigenvalue fed to the genvalue check by (1 + perturb_energy).
VerifyReport run_verify(const ModelParams& params, double perturb_energy = 0.0);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncps::cli
