#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <adr/convergence.hpp>
#include <adr/io.hpp>
#include <adr/stability.hpp>

namespace {

using adr::ConfigError;

// ---------------------------------------------------------------------------
// tabulated data: 1-D "x v" pairs, 2-D "t <t...>" header then "x <v...>" rows

struct Table1D {
  std::vector<double> x, v;
};

struct Table2D {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<std::vector<double>> v;  // v[ix][it]
};

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> data_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (!tokenize(line).empty()) lines.push_back(line);
  }
  return lines;
}

double parse_number(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " from '" + tok + "'");
  }
}

Table1D load_table_1d(const std::string& path) {
  Table1D tab;
  for (const std::string& line : data_lines(path)) {
    const auto toks = tokenize(line);
    if (toks.size() != 2)
      throw ConfigError("table '" + path + "': expected two columns (x value)");
    tab.x.push_back(parse_number(toks[0], "x"));
    tab.v.push_back(parse_number(toks[1], "value"));
  }
  if (tab.x.size() < 2) throw ConfigError("table '" + path + "': needs at least two rows");
  if (!std::is_sorted(tab.x.begin(), tab.x.end()))
    throw ConfigError("table '" + path + "': x column must be sorted ascending");
  return tab;
}

double interp1(const Table1D& tab, double x) {
  if (x <= tab.x.front()) return tab.v.front();
  if (x >= tab.x.back()) return tab.v.back();
  const auto it = std::upper_bound(tab.x.begin(), tab.x.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - tab.x.begin());
  const double w = (x - tab.x[k - 1]) / (tab.x[k] - tab.x[k - 1]);
  return (1.0 - w) * tab.v[k - 1] + w * tab.v[k];
}

Table2D load_table_2d(const std::string& path) {
  const auto lines = data_lines(path);
  if (lines.size() < 3) throw ConfigError("table '" + path + "': needs a t header and two rows");
  Table2D tab;
  {
    const auto toks = tokenize(lines[0]);
    if (toks.empty() || toks[0] != "t")
      throw ConfigError("table '" + path + "': first line must start with 't'");
    for (std::size_t k = 1; k < toks.size(); ++k)
      tab.t.push_back(parse_number(toks[k], "t"));
    if (tab.t.size() < 2 || !std::is_sorted(tab.t.begin(), tab.t.end()))
      throw ConfigError("table '" + path + "': t header must list >= 2 ascending values");
  }
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto toks = tokenize(lines[r]);
    if (toks.size() != tab.t.size() + 1)
      throw ConfigError("table '" + path + "': row width does not match the t header");
    tab.x.push_back(parse_number(toks[0], "x"));
    std::vector<double> row;
    for (std::size_t k = 1; k < toks.size(); ++k)
      row.push_back(parse_number(toks[k], "value"));
    tab.v.push_back(std::move(row));
  }
  if (tab.x.size() < 2 || !std::is_sorted(tab.x.begin(), tab.x.end()))
    throw ConfigError("table '" + path + "': x column must list >= 2 ascending values");
  return tab;
}

double interp2(const Table2D& tab, double x, double t) {
  const auto bracket = [](const std::vector<double>& g, double s) {
    if (s <= g.front()) return std::pair<std::size_t, double>{0, 0.0};
    if (s >= g.back()) return std::pair<std::size_t, double>{g.size() - 2, 1.0};
    const auto it = std::upper_bound(g.begin(), g.end(), s);
    const std::size_t k = static_cast<std::size_t>(it - g.begin()) - 1;
    return std::pair<std::size_t, double>{k, (s - g[k]) / (g[k + 1] - g[k])};
  };
  const auto [ix, wx] = bracket(tab.x, x);
  const auto [it, wt] = bracket(tab.t, t);
  const double v00 = tab.v[ix][it], v01 = tab.v[ix][it + 1];
  const double v10 = tab.v[ix + 1][it], v11 = tab.v[ix + 1][it + 1];
  return (1.0 - wx) * ((1.0 - wt) * v00 + wt * v01) + wx * ((1.0 - wt) * v10 + wt * v11);
}

// ---------------------------------------------------------------------------
// declarative problem files: flat key = value lines, '#' comments

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double builtin_box(double x) { return (x >= 0.125 && x <= 0.5) ? 1.0 : 0.0; }
double builtin_diffwave(double x, double t) {
  const double u = 2.0 * t + 2.0;
  return std::sinh(u) / (std::cosh(u) - std::sin(kSqrt2 * (x - 1.0)));
}

std::function<double(double)> make_q0(const std::string& name) {
  if (name == "gauss") return [](double x) { return std::exp(-2.0 * x * x); };
  if (name == "box") return builtin_box;
  if (name == "sinpi") return [](double x) { return std::sin(kPi * x); };
  if (name == "expsin2")
    return [](double x) {
      const double s = std::sin(x);
      return std::exp(s * s);
    };
  if (name == "diffwave") return [](double x) { return builtin_diffwave(x, 0.0); };
  if (name.rfind("table:", 0) == 0)
    return [tab = load_table_1d(name.substr(6))](double x) { return interp1(tab, x); };
  throw ConfigError("q0 '" + name +
                    "': expected gauss, box, sinpi, expsin2, diffwave or table:PATH");
}

std::function<double(double, double)> make_exact(const std::string& name) {
  if (name == "none") return {};
  if (name == "gauss_decay")
    return [](double x, double t) { return std::exp(-2.0 * (x - t) * (x - t) - t); };
  if (name == "box_shift") return [](double x, double t) { return builtin_box(x - 0.5 * t); };
  if (name == "box_shift_decay")
    return [](double x, double t) { return builtin_box(x - 0.5 * t) * std::exp(-t); };
  if (name == "sine_decay")
    return [](double x, double t) {
      return std::exp((-1e-5 * kPi * kPi - 5.0) * t) * std::sin(kPi * (x - 10.0 * t));
    };
  if (name == "diffwave") return builtin_diffwave;
  if (name.rfind("table:", 0) == 0)
    return [tab = load_table_2d(name.substr(6))](double x, double t) {
      return interp2(tab, x, t);
    };
  throw ConfigError("exact '" + name +
                    "': expected none, gauss_decay, box_shift, box_shift_decay, sine_decay, "
                    "diffwave or table:PATH");
}

adr::DiffusionModel make_alpha(const std::string& name) {
  if (name == "expxt")
    return adr::SpaceTimeDiffusion{
        [](double x, double t) { return 1e-5 * std::exp(x * (t - 1.0) * (t - 1.0)); }, {}};
  if (name == "state:inverse")
    return adr::StateDependentDiffusion{[](double q) { return 1.0 / q; }};
  if (name.rfind("table:", 0) == 0)
    return adr::SpaceTimeDiffusion{
        [tab = load_table_2d(name.substr(6))](double x, double t) { return interp2(tab, x, t); },
        {}};
  const double a = parse_number(name, "alpha");
  if (a == 0.0) return adr::ZeroDiffusion{};
  return adr::ConstantDiffusion{a};
}

struct FileProblem {
  adr::ProblemSpec spec;  // grid filled in later
  adr::StepBounds bounds;
  double alpha_bound = 0.0;
  double alpha_report = 0.0;
};

FileProblem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open problem file '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    if (kv.count(key))
      throw ConfigError(path + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  const auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError(path + ": missing required key '" + key + "'");
    return *v;
  };

  FileProblem fp;
  fp.spec.lambda = parse_number(require("lambda"), "lambda");
  fp.spec.beta = parse_number(require("beta"), "beta");
  const double xl = parse_number(require("x_left"), "x_left");
  const double xr = parse_number(require("x_right"), "x_right");
  fp.spec.t_end = parse_number(require("t_end"), "t_end");
  fp.spec.q0 = make_q0(require("q0"));
  if (auto a = take("alpha"))
    fp.spec.diffusion = make_alpha(*a);
  else
    fp.spec.diffusion = adr::ZeroDiffusion{};
  fp.spec.exact = make_exact(take("exact").value_or("none"));
  const std::string bc = require("bc");
  if (bc == "periodic")
    fp.spec.bc = adr::BoundaryCondition::Periodic;
  else if (bc == "dirichlet")
    fp.spec.bc = adr::BoundaryCondition::DirichletExact;
  else
    throw ConfigError(path + ": bc must be periodic or dirichlet");
  if (auto v = take("c_max")) fp.bounds.c_max = parse_number(*v, "c_max");
  if (auto v = take("d_max")) fp.bounds.d_max = parse_number(*v, "d_max");
  if (auto v = take("r_min")) fp.bounds.r_min = parse_number(*v, "r_min");
  if (!kv.empty()) throw ConfigError(path + ": unknown key '" + kv.begin()->first + "'");

  fp.spec.grid = adr::Grid1D(xl, xr, 1);  // placeholder; replaced by --cells
  fp.alpha_bound = adr::sampled_alpha_bound(fp.spec.diffusion, fp.spec.q0, xl, xr, fp.spec.t_end);
  fp.alpha_report = fp.alpha_bound;
  return fp;
}

// ---------------------------------------------------------------------------

adr::AxisRange parse_range(const std::string& text, const std::string& what) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw ConfigError(what + ": expected lo:hi:count");
  adr::AxisRange r;
  r.lo = parse_number(parts[0], what + " lo");
  r.hi = parse_number(parts[1], what + " hi");
  const double n = parse_number(parts[2], what + " count");
  r.n = static_cast<int>(n);
  if (r.n < 1 || r.n != n) throw ConfigError(what + ": count must be a positive integer");
  if (r.n > 1 && !(r.hi > r.lo)) throw ConfigError(what + ": hi must exceed lo");
  return r;
}

void print_selection(const adr::DtSelection& sel, long steps) {
  std::cout << "dt = " << adr::fmt17(sel.dt) << "\n";
  std::cout << "c = " << adr::fmt17(sel.c) << "\n";
  std::cout << "d = " << adr::fmt17(sel.d) << "\n";
  std::cout << "r = " << adr::fmt17(sel.r) << "\n";
  std::cout << "steps = " << steps << "\n";
}

void print_errors(const adr::NormTriple& err) {
  std::cout << "error_l1 = " << adr::fmt17(err.l1) << "\n";
  std::cout << "error_l2 = " << adr::fmt17(err.l2) << "\n";
  std::cout << "error_linf = " << adr::fmt17(err.linf) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D finite-volume advection-diffusion-reaction toolkit"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run one problem on one mesh");
  std::string sv_benchmark, sv_spec_file, sv_scheme = "ader", sv_out, sv_norm_mode = "sup";
  int sv_cells = 0;
  double sv_dt_scale = 1.0;
  bool sv_decay = false;
  auto* sv_bench_opt = solve->add_option("--benchmark", sv_benchmark, "named benchmark");
  auto* sv_spec_opt = solve->add_option("--spec-file", sv_spec_file, "problem file");
  sv_bench_opt->excludes(sv_spec_opt);
  solve->add_option("--scheme", sv_scheme, "ader|ader-const|ader-ar|muscl|first-order");
  solve->add_option("--cells", sv_cells, "mesh label (benchmark) or cell count (spec file)")
      ->required();
  solve->add_option("--out", sv_out, "write the final field as CSV");
  solve->add_option("--dt-scale", sv_dt_scale, "multiply the selected dt");
  solve->add_option("--norm-mode", sv_norm_mode, "sup|final error reporting");
  solve->add_flag("--step-decay", sv_decay, "decaying-step variant of test1_2");

  // converge
  auto* conv = app.add_subcommand("converge", "mesh-refinement study");
  std::string cv_benchmark, cv_scheme = "ader", cv_out, cv_summary_out, cv_norm_mode = "sup";
  std::vector<int> cv_meshes;
  int cv_reference = 512;
  double cv_dt_scale = 1.0;
  bool cv_decay = false;
  conv->add_option("--benchmark", cv_benchmark, "named benchmark")->required();
  conv->add_option("--scheme", cv_scheme, "ader|ader-const|ader-ar|muscl|first-order");
  conv->add_option("--meshes", cv_meshes, "mesh labels, comma separated")->delimiter(',');
  conv->add_option("--norm-mode", cv_norm_mode, "sup|final error norms");
  conv->add_option("--reference-cells", cv_reference, "reference mesh label (no-exact runs)");
  conv->add_option("--dt-scale", cv_dt_scale, "multiply every selected dt");
  conv->add_option("--out", cv_out, "study CSV path")->required();
  conv->add_option("--summary-out", cv_summary_out, "summary JSON path (default: out as .json)");
  conv->add_flag("--step-decay", cv_decay, "decaying-step variant of test1_2");

  // stability
  auto* stab = app.add_subcommand("stability", "amplification-factor scans");
  std::string st_mode, st_c_range, st_d_range = "0:0:1", st_r_range = "0:0:1", st_out;
  double st_c_max = 0.0, st_d_max = 0.0, st_r_min = 0.0;
  int st_resolution = 21, st_n_theta = 721;
  stab->add_option("--mode", st_mode, "orthotope|region|curve")->required();
  stab->add_option("--c-max", st_c_max, "orthotope c bound");
  stab->add_option("--d-max", st_d_max, "orthotope d bound");
  stab->add_option("--r-min", st_r_min, "orthotope r bound (<= 0)");
  stab->add_option("--resolution", st_resolution, "grid points per orthotope axis");
  stab->add_option("--c-range", st_c_range, "c sweep lo:hi:count");
  stab->add_option("--d-range", st_d_range, "d sweep lo:hi:count");
  stab->add_option("--r-range", st_r_range, "r sweep lo:hi:count");
  stab->add_option("--n-theta", st_n_theta, "theta samples in [-pi, pi]");
  stab->add_option("--out", st_out, "artifact path (JSON for orthotope, CSV otherwise)");

  // amp
  auto* amp = app.add_subcommand("amp", "amplification factor at one point");
  double am_theta = 0.0, am_c = 0.0, am_d = 0.0, am_r = 0.0;
  amp->add_option("--theta", am_theta, "Fourier angle")->required();
  amp->add_option("--c", am_c, "Courant number")->required();
  amp->add_option("--d", am_d, "diffusion number")->required();
  amp->add_option("--r", am_r, "reaction number")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) {
      const adr::SchemeKind scheme = adr::scheme_from_name(sv_scheme);
      if (sv_norm_mode != "sup" && sv_norm_mode != "final")
        throw ConfigError("--norm-mode must be sup or final");
      adr::SolveOptions opts;
      opts.dt_scale = sv_dt_scale;

      adr::SolveResult sol;
      std::function<double(double, double)> exact;
      adr::ErrorAccumulator acc;
      if (!sv_benchmark.empty()) {
        const adr::Benchmark bench = adr::make_benchmark(sv_benchmark, sv_decay);
        exact = bench.exact;
        adr::Observer obs;
        if (exact && sv_norm_mode == "sup")
          obs = [&](const adr::Field& f, const adr::Grid1D& g) { acc.observe(f, g, exact); };
        sol = adr::solve_benchmark(bench, sv_cells, scheme, obs, opts);
        std::cout << "benchmark = " << bench.name << "\n";
        std::cout << "cells = " << sol.grid.n_cells << "\n";
      } else if (!sv_spec_file.empty()) {
        if (sv_decay) throw ConfigError("--step-decay applies only to --benchmark test1_2");
        FileProblem fp = parse_problem_file(sv_spec_file);
        fp.spec.grid = adr::Grid1D(fp.spec.grid.x_left, fp.spec.grid.x_right, sv_cells);
        exact = fp.spec.exact;
        adr::Observer obs;
        if (exact && sv_norm_mode == "sup")
          obs = [&](const adr::Field& f, const adr::Grid1D& g) { acc.observe(f, g, exact); };
        sol = adr::solve_problem(fp.spec, fp.bounds, fp.alpha_bound, fp.alpha_report, scheme,
                                 obs, opts);
        std::cout << "problem = " << sv_spec_file << "\n";
        std::cout << "cells = " << sol.grid.n_cells << "\n";
      } else {
        throw ConfigError("solve needs --benchmark or --spec-file");
      }
      std::cout << "scheme = " << adr::scheme_name(scheme) << "\n";
      print_selection(sol.dts, sol.steps);
      if (exact) {
        if (sv_norm_mode == "final") acc.observe(sol.final, sol.grid, exact);
        print_errors(acc.err);
      }
      if (!sv_out.empty()) adr::write_field_csv(sv_out, sol.final, sol.grid);
      return 0;
    }

    if (*conv) {
      adr::StudyConfig config;
      config.benchmark = cv_benchmark;
      config.scheme = adr::scheme_from_name(cv_scheme);
      if (cv_norm_mode == "sup")
        config.mode = adr::NormMode::SupOverTime;
      else if (cv_norm_mode == "final")
        config.mode = adr::NormMode::FinalTime;
      else
        throw ConfigError("--norm-mode must be sup or final");
      config.reference_label = cv_reference;
      config.decayed_step = cv_decay;
      config.dt_scale = cv_dt_scale;
      if (!cv_meshes.empty()) {
        config.meshes = cv_meshes;
      } else if (!adr::make_benchmark(cv_benchmark, cv_decay).exact) {
        config.meshes = {8, 16, 32, 64, 128, 256};  // keep the default reference finer
      }
      const adr::Study study = adr::run_study(config);
      adr::atomic_write(cv_out, adr::study_csv(study));
      std::string summary_path = cv_summary_out;
      if (summary_path.empty()) {
        summary_path = cv_out;
        const auto dot = summary_path.find_last_of('.');
        if (dot != std::string::npos) summary_path.erase(dot);
        summary_path += ".json";
      }
      adr::atomic_write(summary_path, adr::study_summary_json(study));
      std::cout << "rows = " << study.rows.size() << "\n";
      std::cout << "worst_order_deviation_from_2 = "
                << adr::fmt17(study.worst_order_deviation_from_2) << "\n";
      return 0;
    }

    if (*stab) {
      if (st_mode == "orthotope") {
        if (!stab->count("--c-max") || !stab->count("--d-max") || !stab->count("--r-min"))
          throw ConfigError("orthotope mode needs --c-max, --d-max and --r-min");
        adr::Orthotope box{st_c_max, st_d_max, st_r_min};
        adr::OrthotopeResolution res;
        res.n_c = res.n_d = res.n_r = st_resolution;
        const adr::StabilityReport report = adr::check_orthotope(box, res, st_n_theta);
        const std::string json = adr::stability_report_json(report);
        std::cout << json;
        if (!st_out.empty()) adr::atomic_write(st_out, json);
        return 0;
      }
      if (st_mode == "region" || st_mode == "curve") {
        if (!stab->count("--c-range"))
          throw ConfigError(st_mode + " mode needs --c-range (and optionally --d-range/--r-range)");
        const adr::AxisRange cr = parse_range(st_c_range, "--c-range");
        const adr::AxisRange dr = parse_range(st_d_range, "--d-range");
        const adr::AxisRange rr = parse_range(st_r_range, "--r-range");
        if (st_mode == "curve") {
          const int swept = (cr.n > 1) + (dr.n > 1) + (rr.n > 1);
          if (swept != 1) throw ConfigError("curve mode sweeps exactly one axis");
        }
        const auto samples = adr::sample_region(cr, dr, rr, st_n_theta);
        const std::string csv = adr::region_csv(samples);
        if (st_out.empty())
          std::cout << csv;
        else
          adr::atomic_write(st_out, csv);
        return 0;
      }
      throw ConfigError("--mode must be orthotope, region or curve");
    }

    if (*amp) {
      const std::complex<double> a = adr::amplification_closed_form(am_theta, am_c, am_d, am_r);
      std::cout << "A = " << adr::fmt17(a.real()) << " + " << adr::fmt17(a.imag()) << "i\n";
      std::cout << "|A| = " << adr::fmt17(std::abs(a)) << "\n";
      return 0;
    }
  } catch (const adr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const adr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
