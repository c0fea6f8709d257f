// Command-line frontend for the hbpow library. Parameters come from flags
// or a JSON config file (flags override the file); grids are written as
// CSV with 17 significant digits, scalar records as JSON.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hbpow.h"
#include "json.hpp"

namespace {

using nlohmann::json;

// Exit codes; also listed in --help. The nonzero values coincide with the
// library status codes.
enum {
  kExitOk = 0,
  kExitConfig = 2,
  kExitPrecondition = 3,
  kExitTolerance = 4,
  kExitNumeric = 5,
};

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

// Folds a library status into the matching exit code.
void check(int status) {
  if (status != HBPOW_OK) fail(status, hbpow_last_error());
}

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  double at(int i) const {
    if (n == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) /
                    static_cast<double>(n - 1);
  }
};

struct Grid {
  Axis re;
  Axis im;        // n = 1, lo = 0 when the grid string had no imaginary part
  bool two_d = false;
};

Axis parse_axis(const std::string& text) {
  Axis axis;
  char extra;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &axis.lo, &axis.hi, &axis.n,
                  &extra) != 3) {
    fail(kExitConfig, "bad grid axis '" + text + "', expected lo:hi:n");
  }
  if (!(std::isfinite(axis.lo) && std::isfinite(axis.hi)) || axis.n < 1 ||
      axis.n > 1000000) {
    fail(kExitConfig, "bad grid axis '" + text + "'");
  }
  return axis;
}

// "<re0:re1:n>" or "<re0:re1:n>x<im0:im1:m>".
Grid parse_grid(const std::string& text) {
  Grid grid;
  const auto split = text.find('x');
  if (split == std::string::npos) {
    grid.re = parse_axis(text);
    return grid;
  }
  grid.re = parse_axis(text.substr(0, split));
  grid.im = parse_axis(text.substr(split + 1));
  grid.two_d = true;
  return grid;
}

// Everything a run needs; filled from the config file, then overridden by
// flags.
struct Options {
  std::optional<double> p, psi, mu_plus, mu_minus, exponent;
  std::optional<double> tol, t_max, w_re, w_im;
  std::optional<std::vector<double>> pmat;  // kappa1, kappa3, kappa2
  std::optional<std::string> grid, out, backend;
};

std::vector<double> parse_pmat(const std::string& text) {
  std::vector<double> v(3);
  char extra;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &v[0], &v[1], &v[2],
                  &extra) != 3) {
    fail(kExitConfig, "bad --P '" + text + "', expected k1,k3,k2");
  }
  return v;
}

double number_field(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) {
    fail(kExitConfig, "config field '" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

void merge_config(Options& opts, const std::string& path,
                  const std::string& command) {
  std::ifstream f(path);
  if (!f) fail(kExitConfig, "cannot open config file " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    fail(kExitConfig, std::string("config: ") + e.what());
  }
  if (!j.is_object()) fail(kExitConfig, "config must be a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != command) {
        fail(kExitConfig, "config command does not match '" + command + "'");
      }
    } else if (key == "p") {
      if (!opts.p) opts.p = number_field(j, key);
    } else if (key == "psi") {
      if (!opts.psi) opts.psi = number_field(j, key);
    } else if (key == "mu_plus") {
      if (!opts.mu_plus) opts.mu_plus = number_field(j, key);
    } else if (key == "mu_minus") {
      if (!opts.mu_minus) opts.mu_minus = number_field(j, key);
    } else if (key == "exponent") {
      if (!opts.exponent) opts.exponent = number_field(j, key);
    } else if (key == "tol") {
      if (!opts.tol) opts.tol = number_field(j, key);
    } else if (key == "t_max") {
      if (!opts.t_max) opts.t_max = number_field(j, key);
    } else if (key == "P") {
      if (opts.pmat) continue;
      if (value.is_string()) {
        opts.pmat = parse_pmat(value.get<std::string>());
      } else if (value.is_array() && value.size() == 3 &&
                 value[0].is_number() && value[1].is_number() &&
                 value[2].is_number()) {
        opts.pmat = std::vector<double>{value[0].get<double>(),
                                        value[1].get<double>(),
                                        value[2].get<double>()};
      } else {
        fail(kExitConfig, "config field 'P' must be [k1, k3, k2]");
      }
    } else if (key == "w") {
      if (opts.w_re) continue;
      if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
          !value[1].is_number()) {
        fail(kExitConfig, "config field 'w' must be [re, im]");
      }
      opts.w_re = value[0].get<double>();
      opts.w_im = value[1].get<double>();
    } else if (key == "grid") {
      if (!opts.grid) {
        if (!value.is_string()) {
          fail(kExitConfig, "config field 'grid' must be a string");
        }
        opts.grid = value.get<std::string>();
      }
    } else if (key == "out") {
      if (!opts.out) {
        if (!value.is_string()) {
          fail(kExitConfig, "config field 'out' must be a string");
        }
        opts.out = value.get<std::string>();
      }
    } else if (key == "backend") {
      if (!opts.backend) {
        if (!value.is_string()) {
          fail(kExitConfig, "config field 'backend' must be a string");
        }
        opts.backend = value.get<std::string>();
      }
    } else {
      fail(kExitConfig, "unknown config field '" + key + "'");
    }
  }
}

struct ParamsHandle {
  hbpow_params* h = nullptr;
  ParamsHandle() = default;
  ParamsHandle(const ParamsHandle&) = delete;
  ParamsHandle& operator=(const ParamsHandle&) = delete;
  ~ParamsHandle() { hbpow_params_destroy(h); }
};

struct PairHandle {
  hbpow_pair* h = nullptr;
  PairHandle() = default;
  PairHandle(const PairHandle&) = delete;
  PairHandle& operator=(const PairHandle&) = delete;
  ~PairHandle() { hbpow_pair_destroy(h); }
};

bool has_measure_input(const Options& opts) {
  return opts.mu_plus || opts.mu_minus;
}

// Builds the parameter set: directly from (p, P, psi), or through the
// inverse construction when a measure literal was given instead.
void make_params(const Options& opts, ParamsHandle& params) {
  const bool matrix = opts.pmat.has_value();
  const bool measure = has_measure_input(opts);
  if (matrix && measure) {
    fail(kExitConfig, "give either --P or a measure literal, not both");
  }
  if (matrix) {
    if (!opts.p) fail(kExitConfig, "--P requires --p");
    const std::vector<double>& m = *opts.pmat;
    check(hbpow_params_create(*opts.p, m[0], m[1], m[2],
                              opts.psi.value_or(0.0), &params.h));
    return;
  }
  if (measure) {
    if (!opts.mu_plus || !opts.mu_minus) {
      fail(kExitConfig, "a measure literal needs --mu-plus and --mu-minus");
    }
    double expo;
    if (opts.exponent) {
      expo = *opts.exponent;
    } else if (opts.p) {
      expo = 2.0 * *opts.p;
    } else {
      fail(kExitConfig, "a measure literal needs 'exponent' or --p");
    }
    check(hbpow_params_of_measure(*opts.mu_plus, *opts.mu_minus, expo,
                                  &params.h));
    return;
  }
  fail(kExitConfig, "no parameters: give --p with --P, or a measure literal");
}

Grid require_grid(const Options& opts) {
  if (!opts.grid) fail(kExitConfig, "this command needs --grid");
  return parse_grid(*opts.grid);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const Options& opts, const std::string& text) {
  if (!opts.out) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(*opts.out, std::ios::binary);
  if (!f) fail(kExitConfig, "cannot open output file " + *opts.out);
  f << text;
}

json params_record(const ParamsHandle& params) {
  double f[5];
  check(hbpow_params_fields(params.h, f));
  return json{{"p", f[0]},
              {"kappa1", f[1]},
              {"kappa3", f[2]},
              {"kappa2", f[3]},
              {"psi", f[4]}};
}

int backend_code(const Options& opts) {
  const std::string name = opts.backend.value_or("closed");
  if (name == "series") return HBPOW_BACKEND_SERIES;
  if (name == "closed") return HBPOW_BACKEND_CLOSED;
  fail(kExitConfig, "unknown backend '" + name + "'");
}

// ----------------------------------------------------------- commands ----

void cmd_eval(const Options& opts) {
  ParamsHandle params;
  make_params(opts, params);
  const Grid grid = require_grid(opts);
  PairHandle pair;
  check(hbpow_pair_create(params.h, backend_code(opts), &pair.h));

  std::ostringstream csv;
  csv << "re_z,im_z,re_A,im_A,re_B,im_B,re_E,im_E,backend_residual\n";
  for (int i = 0; i < grid.im.n; ++i) {
    for (int j = 0; j < grid.re.n; ++j) {
      const double re = grid.re.at(j), im = grid.im.at(i);
      double ab[4];
      check(hbpow_pair_eval(pair.h, re, im, ab));
      double residual;
      check(hbpow_crosscheck(params.h, re, im, &residual));
      // E = A - i B.
      const double re_e = ab[0] + ab[3], im_e = ab[1] - ab[2];
      csv << fmt(re) << ',' << fmt(im) << ',' << fmt(ab[0]) << ','
          << fmt(ab[1]) << ',' << fmt(ab[2]) << ',' << fmt(ab[3]) << ','
          << fmt(re_e) << ',' << fmt(im_e) << ',' << fmt(residual) << '\n';
    }
  }
  emit(opts, csv.str());
}

void cmd_kernel(const Options& opts) {
  ParamsHandle params;
  make_params(opts, params);
  const Grid grid = require_grid(opts);
  PairHandle pair;
  check(hbpow_pair_create(params.h, backend_code(opts), &pair.h));
  const double w_re = opts.w_re.value_or(0.0);
  const double w_im = opts.w_im.value_or(0.0);

  std::ostringstream csv;
  csv << "re_z,im_z,re_w,im_w,re_K,im_K\n";
  for (int i = 0; i < grid.im.n; ++i) {
    for (int j = 0; j < grid.re.n; ++j) {
      const double re = grid.re.at(j), im = grid.im.at(i);
      double k[2];
      check(hbpow_pair_kernel(pair.h, re, im, w_re, w_im, k));
      csv << fmt(re) << ',' << fmt(im) << ',' << fmt(w_re) << ','
          << fmt(w_im) << ',' << fmt(k[0]) << ',' << fmt(k[1]) << '\n';
    }
  }
  emit(opts, csv.str());
}

void cmd_hamiltonian(const Options& opts) {
  ParamsHandle params;
  make_params(opts, params);
  const Grid grid = require_grid(opts);
  if (grid.two_d) {
    fail(kExitConfig, "hamiltonian expects a one-dimensional grid of scales");
  }

  std::ostringstream csv;
  csv << "a,h11,h12,h21,h22\n";
  for (int j = 0; j < grid.re.n; ++j) {
    const double a = grid.re.at(j);
    double h[4];
    check(hbpow_h_of(params.h, a, h));
    csv << fmt(a) << ',' << fmt(h[0]) << ',' << fmt(h[1]) << ',' << fmt(h[2])
        << ',' << fmt(h[3]) << '\n';
  }
  emit(opts, csv.str());
}

void cmd_measure(const Options& opts) {
  json record;
  if (has_measure_input(opts) && !opts.pmat) {
    // Inverse direction: measure literal to a generating parameter set.
    ParamsHandle params;
    make_params(opts, params);
    record = params_record(params);
  } else {
    ParamsHandle params;
    make_params(opts, params);
    double m[3];
    check(hbpow_measure_of(params.h, m));
    record = json{{"mu_plus", m[0]}, {"mu_minus", m[1]}, {"exponent", m[2]}};
  }
  emit(opts, record.dump(2) + "\n");
}

void cmd_canonicalize(const Options& opts) {
  ParamsHandle params;
  make_params(opts, params);
  ParamsHandle approx, simeq;
  check(hbpow_canonicalize_approx(params.h, &approx.h));
  check(hbpow_canonicalize_simeq(params.h, &simeq.h));
  const json record{{"approx", params_record(approx)},
                    {"simeq", params_record(simeq)}};
  emit(opts, record.dump(2) + "\n");
}

void cmd_weyl(const Options& opts) {
  ParamsHandle params;
  make_params(opts, params);
  const Grid grid = require_grid(opts);
  const double t_max = opts.t_max.value_or(8.0);

  std::ostringstream csv;
  csv << "re_z,im_z,re_q,im_q,cauchy_estimate\n";
  for (int i = 0; i < grid.im.n; ++i) {
    for (int j = 0; j < grid.re.n; ++j) {
      const double re = grid.re.at(j), im = grid.im.at(i);
      double q[2], cauchy;
      check(hbpow_weyl(params.h, re, im, t_max, q, &cauchy));
      csv << fmt(re) << ',' << fmt(im) << ',' << fmt(q[0]) << ','
          << fmt(q[1]) << ',' << fmt(cauchy) << '\n';
    }
  }
  emit(opts, csv.str());
}

void cmd_crosscheck(const Options& opts) {
  ParamsHandle params;
  make_params(opts, params);
  const Grid grid = require_grid(opts);
  const double tol = opts.tol.value_or(1e-8);

  double max_residual = 0.0;
  long points = 0;
  for (int i = 0; i < grid.im.n; ++i) {
    for (int j = 0; j < grid.re.n; ++j) {
      double residual;
      check(hbpow_crosscheck(params.h, grid.re.at(j), grid.im.at(i),
                             &residual));
      max_residual = std::max(max_residual, residual);
      ++points;
    }
  }
  const bool pass = max_residual <= tol;
  const json record{{"points", points},
                    {"max_residual", max_residual},
                    {"tol", tol},
                    {"pass", pass}};
  emit(opts, record.dump(2) + "\n");
  if (!pass) {
    fail(kExitTolerance, "max residual " + fmt(max_residual) +
                             " exceeds tolerance " + fmt(tol));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hbpow: structure functions, kernels, Hamiltonians, Weyl coefficients "
      "and spectral measures of homogeneous de Branges spaces"};
  app.footer(
      "Exit codes: 0 ok, 2 config error, 3 precondition violation, "
      "4 tolerance breach, 5 numerical failure.");
  app.require_subcommand(1);

  std::string config_path, pmat_text, grid_text, out_path, backend, w_text;
  double p = 0, psi = 0, mu_plus = 0, mu_minus = 0, exponent = 0;
  double tol = 0, t_max = 0;

  auto* o_config = app.add_option("--config", config_path,
                                  "JSON config file; flags override it");
  auto* o_p = app.add_option("--p", p, "order parameter p");
  auto* o_pmat = app.add_option(
      "--P", pmat_text, "symmetric matrix P as k1,k3,k2 (row-wise upper)");
  auto* o_psi = app.add_option("--psi", psi, "shear parameter psi");
  auto* o_mu_plus =
      app.add_option("--mu-plus", mu_plus, "measure weight on (0, oo)");
  auto* o_mu_minus =
      app.add_option("--mu-minus", mu_minus, "measure weight on (-oo, 0)");
  auto* o_exponent = app.add_option(
      "--exponent", exponent, "measure exponent 2p (defaults to 2*--p)");
  auto* o_grid = app.add_option(
      "--grid", grid_text, "grid: re0:re1:n or re0:re1:nxim0:im1:m");
  auto* o_tol = app.add_option("--tol", tol, "tolerance (crosscheck gate)");
  auto* o_t_max =
      app.add_option("--t-max", t_max, "Weyl truncation radius (default 8)");
  auto* o_w = app.add_option("--w", w_text, "kernel anchor w as re,im");
  auto* o_out = app.add_option("--out", out_path,
                               "output file (default: standard output)");
  auto* o_backend = app.add_option("--backend", backend,
                                   "evaluator backend: closed or series");

  const char* names[] = {"eval",   "kernel",       "hamiltonian", "measure",
                         "canonicalize", "weyl", "crosscheck"};
  const char* descs[] = {
      "evaluate (A, B, E) with the backend residual over a grid",
      "reproducing kernel K(z, w) over a grid",
      "Hamiltonian H(a) over a grid of scales",
      "spectral measure of a parameter set, or the inverse construction",
      "both canonical representatives of a parameter set",
      "Weyl coefficient of the truncated half-line system over a grid",
      "max series-vs-closed residual over a grid, gated by --tol"};
  for (int i = 0; i < 7; ++i) {
    auto* sub = app.add_subcommand(names[i], descs[i]);
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Options opts;
    if (o_p->count()) opts.p = p;
    if (o_psi->count()) opts.psi = psi;
    if (o_mu_plus->count()) opts.mu_plus = mu_plus;
    if (o_mu_minus->count()) opts.mu_minus = mu_minus;
    if (o_exponent->count()) opts.exponent = exponent;
    if (o_tol->count()) opts.tol = tol;
    if (o_t_max->count()) opts.t_max = t_max;
    if (o_pmat->count()) opts.pmat = parse_pmat(pmat_text);
    if (o_grid->count()) opts.grid = grid_text;
    if (o_out->count()) opts.out = out_path;
    if (o_backend->count()) opts.backend = backend;
    if (o_w->count()) {
      double re, im;
      char extra;
      if (std::sscanf(w_text.c_str(), "%lf,%lf%c", &re, &im, &extra) != 2) {
        fail(kExitConfig, "bad --w '" + w_text + "', expected re,im");
      }
      opts.w_re = re;
      opts.w_im = im;
    }
    if (o_config->count()) merge_config(opts, config_path, command);

    if (command == "eval") {
      cmd_eval(opts);
    } else if (command == "kernel") {
      cmd_kernel(opts);
    } else if (command == "hamiltonian") {
      cmd_hamiltonian(opts);
    } else if (command == "measure") {
      cmd_measure(opts);
    } else if (command == "canonicalize") {
      cmd_canonicalize(opts);
    } else if (command == "weyl") {
      cmd_weyl(opts);
    } else {
      cmd_crosscheck(opts);
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}
