#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncps/cli.hpp"
#include "ncps/entropy.hpp"
#include "ncps/errors.hpp"
#include "ncps/wigner.hpp"

namespace ncps::cli {

namespace {

struct ParamFlags {
  std::string config;
  ModelParams values;
  CLI::Option* hbar = nullptr;
  CLI::Option* mass = nullptr;
  CLI::Option* omega = nullptr;
  CLI::Option* mu = nullptr;
  CLI::Option* nu = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--config", config, "Parameter file with key = value lines");
    hbar = app.add_option("--hbar", values.hbar, "Planck constant (default 1)");
    mass = app.add_option("--mass", values.mass, "Oscillator mass (default 1)");
    omega = app.add_option("--omega", values.omega, "Angular frequency (default 1)");
    mu = app.add_option("--mu", values.mu, "Position noncommutativity (default 0)");
    nu = app.add_option("--nu", values.nu, "Momentum noncommutativity (default 0)");
  }

  // File values first, explicit flags on top.
  ModelParams resolve() const {
    ModelParams p = config.empty() ? ModelParams{} : load_params(config);
    if (hbar->count()) p.hbar = values.hbar;
    if (mass->count()) p.mass = values.mass;
    if (omega->count()) p.omega = values.omega;
    if (mu->count()) p.mu = values.mu;
    if (nu->count()) p.nu = values.nu;
    validate(p);
    return p;
  }
};

void warn_if_near_singular(const ModelParams& p, std::ostream& err) {
  if (derive(p).near_singular) {
    err << "warning: mu*nu is within 1e-9 of hbar^2; results are close to the singular cell\n";
  }
}

EntropyKind parse_kind(const std::string& s) {
  if (s == "renyi") return EntropyKind::Renyi;
  if (s == "tsallis") return EntropyKind::Tsallis;
  if (s == "von-neumann") return EntropyKind::VonNeumann;
  throw UnsupportedError("unknown entropy kind '" + s + "'");
}

EntropyResult compute_entropy(EntropyKind kind, double order, bool numeric, const ModelParams& p) {
  if (!std::isfinite(order) || order < 1.0 || std::floor(order) != order) {
    throw UnsupportedError("unsupported order " + format_number(order) +
                           ": only integer orders >= 1 are implemented");
  }
  const int n = kind == EntropyKind::VonNeumann ? 1 : static_cast<int>(order);
  const double lambda = derive(p).lambda;
  try {
    check_lambda(lambda);
  } catch (const std::out_of_range& e) {
    throw ParameterError(std::string(e.what()) + " (the entropy bound needs lambda > sqrt(3)/3)");
  }
  if (!numeric) return ground_state_entropy(kind, n, p);
  const GaussPolyd reduced = reduced_ground_state(p);
  if (n == 1) {
    EntropyResult r = von_neumann_numeric(reduced);
    if (kind == EntropyKind::Tsallis) r.kind = kind;
    return r;
  }
  return kind == EntropyKind::Tsallis ? tsallis_numeric(reduced, n) : renyi_numeric(reduced, n);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement entropy of the 2D oscillator on noncommutative phase space"};
  app.require_subcommand(1);

  ParamFlags entropy_params, spectrum_params, verify_params;

  auto* entropy = app.add_subcommand("entropy", "Ground-state entanglement entropy as JSON");
  entropy_params.attach(*entropy);
  std::string kind = "renyi";
  double order = 2.0;
  std::string method = "closed";
  entropy->add_option("--kind", kind, "renyi | tsallis | von-neumann")
      ->check(CLI::IsMember({"renyi", "tsallis", "von-neumann"}));
  entropy->add_option("--order", order, "Entropy order (integer >= 1)");
  entropy->add_option("--method", method, "closed | numeric")
      ->check(CLI::IsMember({"closed", "numeric"}));

  auto* spectrum = app.add_subcommand("spectrum", "Energy levels E_ij as CSV");
  spectrum_params.attach(*spectrum);
  int i_max = 1, j_max = 1;
  std::string units = "natural";
  bool sort = false;
  std::string spectrum_out;
  spectrum->add_option("--i-max", i_max, "Largest i (<= 12)");
  spectrum->add_option("--j-max", j_max, "Largest j (<= 12)");
  spectrum->add_option("--units", units, "natural (hbar omega = 1) | si")
      ->check(CLI::IsMember({"natural", "si"}));
  spectrum->add_flag("--sort", sort, "Sort rows by energy");
  spectrum->add_option("--out", spectrum_out, "Output file (default stdout)");

  auto* figure = app.add_subcommand("figure", "Figure data as CSV");
  int figure_id = 3;
  int grid = 0;
  std::string figure_out;
  figure->add_option("--figure", figure_id, "Figure id 1-5")->required();
  figure->add_option("--grid", grid, "Points per axis (0 keeps the default)");
  figure->add_option("--out", figure_out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite, JSON report");
  verify_params.attach(*verify);
  double perturb = 0.0;
  verify->add_option("--perturb-energy", perturb, "Relative eigenvalue shift (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUnsupported;
  }

  try {
    if (*entropy) {
      const ModelParams p = entropy_params.resolve();
      warn_if_near_singular(p, err);
      const EntropyResult r = compute_entropy(parse_kind(kind), order, method == "numeric", p);
      nlohmann::ordered_json j;
      j["kind"] = to_string(r.kind);
      j["order"] = r.order;
      j["lambda"] = r.lambda;
      j["value"] = r.value;
      j["method"] = to_string(r.method);
      out << j.dump() << '\n';
    } else if (*spectrum) {
      const ModelParams p = spectrum_params.resolve();
      warn_if_near_singular(p, err);
      if (i_max < 0 || j_max < 0 || i_max > kMaxWignerIndex || j_max > kMaxWignerIndex) {
        throw UnsupportedError("spectrum indices must lie in [0, 12]");
      }
      write_text(spectrum_out, spectrum_csv(p, i_max, j_max, units == "natural", sort), out);
    } else if (*figure) {
      FigureSpec spec = default_figure(figure_id);
      if (grid != 0) spec.points = grid;
      write_text(figure_out, figure_csv(spec), out);
    } else if (*verify) {
      const ModelParams p = verify_params.resolve();
      warn_if_near_singular(p, err);
      const VerifyReport report = run_verify(p, perturb);
      out << report.to_json() << '\n';
      return report.passed() ? kOk : kVerifyFailed;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kBadParameters;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUnsupported;
  }
  return kOk;
}

}  // namespace ncps::cli
