#include <algorithm>
#include <string>
#include <vector>

#include "ncps/cli.hpp"
#include "ncps/errors.hpp"
#include "ncps/wigner.hpp"

namespace ncps::cli {

std::string spectrum_csv(const ModelParams& params, int i_max, int j_max, bool natural_units,
                         bool sort) {
  validate(params);
  if (i_max < 0 || j_max < 0 || i_max > kMaxWignerIndex || j_max > kMaxWignerIndex) {
    throw std::out_of_range("spectrum indices must lie in [0, " + std::to_string(kMaxWignerIndex) +
                            "]");
  }
  struct Level {
    int i, j;
    double e;
  };
  std::vector<Level> levels;
  const double unit = natural_units ? params.hbar * params.omega : 1.0;
  for (int i = 0; i <= i_max; ++i) {
    for (int j = 0; j <= j_max; ++j) levels.push_back({i, j, energy(i, j, params) / unit});
  }
  if (sort) {
    std::stable_sort(levels.begin(), levels.end(),
                     [](const Level& a, const Level& b) { return a.e < b.e; });
  }
  std::string out = "i,j,energy\n";
  for (const auto& l : levels) {
    out += std::to_string(l.i) + ',' + std::to_string(l.j) + ',' + format_number(l.e) + '\n';
  }
  return out;
}

}  // namespace ncps::cli
