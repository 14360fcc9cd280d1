#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "ncps/cli.hpp"
#include "ncps/entropy.hpp"
#include "ncps/errors.hpp"

namespace ncps::cli {

namespace {

double node(double lo, double hi, int k, int n) {
  if (n == 1) return lo;
  if (k == n - 1) return hi;
  return lo + (hi - lo) * k / (n - 1);
}

std::string cell(double value) { return std::isnan(value) ? std::string() : format_number(value); }

double e1_or_nan(double lambda) {
  if (!(lambda > kLambdaMin)) return std::nan("");
  return von_neumann_entanglement(lambda).value;
}

// fig1, fig2: rows a, b, E1 with a outer and b inner.
std::string surface(const FigureSpec& spec, double (*lambda_at)(double, double)) {
  const int n = spec.points;
  std::vector<std::string> rows(static_cast<std::size_t>(n));
  parallel_for(n, [&](int i) {
    const double a = node(spec.a_min, spec.a_max, i, n);
    std::string& text = rows[i];
    for (int j = 0; j < n; ++j) {
      const double b = node(spec.b_min, spec.b_max, j, n);
      const double lambda = lambda_at(a, b);
      text += format_number(a) + ',' + format_number(b) + ',' +
              cell(std::isnan(lambda) ? lambda : e1_or_nan(lambda)) + '\n';
    }
  });
  std::string out = "a,b,E1\n";
  for (const auto& r : rows) out += r;
  return out;
}

double lambda_uv(double u, double v) {
  const double uv = u * v;
  return (uv > -1.0 && uv < 1.0) ? lambda_from_uv(u, v) : std::nan("");
}

double lambda_delta_theta(double delta_sq, double theta) {
  return (theta > -1.0 && theta < 1.0) ? lambda_from_theta(delta_sq, theta) : std::nan("");
}

// fig3, fig5: one row per lambda.
std::string curves(const FigureSpec& spec, bool tsallis) {
  const int n = spec.points;
  std::vector<std::string> rows(static_cast<std::size_t>(n));
  parallel_for(n, [&](int i) {
    const double lambda = node(spec.a_min, spec.a_max, i, n);
    std::string text = format_number(lambda);
    for (int order = 1; order <= 4; ++order) {
      const double value = tsallis ? tsallis_entanglement(order, lambda).value
                           : order == 1 ? von_neumann_entanglement(lambda).value
                                        : renyi_entanglement(order, lambda).value;
      text += ',' + format_number(value);
    }
    rows[i] = text + '\n';
  });
  std::string out = tsallis ? "lambda,Ep1,Ep2,Ep3,Ep4\n" : "lambda,E1,E2,E3,E4\n";
  for (const auto& r : rows) out += r;
  return out;
}

std::string nu_zero(const FigureSpec& spec) {
  const int n = spec.points;
  std::vector<std::string> rows(static_cast<std::size_t>(n));
  parallel_for(n, [&](int i) {
    const double u = node(spec.a_min, spec.a_max, i, n);
    rows[i] = format_number(u) + ',' + format_number(e1_nu_zero(u)) + '\n';
  });
  std::string out = "u,E1\n";
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers =
      std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(n, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

FigureSpec default_figure(int id) {
  switch (id) {
    case 1:
      return {1, 101, -5.0, 5.0, -5.0, 5.0};
    case 2:
      return {2, 101, 0.0, 10.0, -1.0, 1.0};
    case 3:
    case 5:
      return {id, 401, 0.578, 1.0, 0.0, 0.0};
    case 4:
      return {4, 401, -10.0, 10.0, 0.0, 0.0};
    default:
      throw UnsupportedError("unknown figure id " + std::to_string(id) + " (expected 1-5)");
  }
}

std::string figure_csv(const FigureSpec& spec) {
  FigureSpec s = spec;
  if (s.points == 0) s.points = default_figure(s.id).points;
  if (s.points < 1) throw std::invalid_argument("figure grid needs at least one point");
  switch (s.id) {
    case 1:
      return surface(s, lambda_uv);
    case 2:
      return surface(s, lambda_delta_theta);
    case 3:
      return curves(s, false);
    case 4:
      return nu_zero(s);
    case 5:
      return curves(s, true);
    default:
      throw UnsupportedError("unknown figure id " + std::to_string(s.id) + " (expected 1-5)");
  }
}

}  // namespace ncps::cli
