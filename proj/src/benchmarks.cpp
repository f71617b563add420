#include <adr/benchmarks.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

namespace adr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double box_profile(double x) { return (x >= 0.125 && x <= 0.5) ? 1.0 : 0.0; }

double ratio_profile(double x, double t) {
  const double u = 2.0 * t + 2.0;
  return std::sinh(u) / (std::cosh(u) - std::sin(kSqrt2 * (x - 1.0)));
}

}  // namespace

Grid1D Benchmark::grid_for_label(int label) const {
  if (label < 1) throw ConfigError("mesh label must be positive");
  return Grid1D(x_left, x_right, label);
}

ProblemSpec Benchmark::problem(const Grid1D& grid) const {
  ProblemSpec s;
  s.lambda = lambda;
  s.beta = beta;
  s.diffusion = diffusion;
  s.q0 = q0;
  s.bc = bc;
  s.grid = grid;
  s.t_end = t_end;
  s.exact = exact;
  return s;
}

double sampled_alpha_bound(const DiffusionModel& model,
                           const std::function<double(double)>& q0, double x_left,
                           double x_right, double t_end) {
  if (std::holds_alternative<ZeroDiffusion>(model)) return 0.0;
  if (const auto* c = std::get_if<ConstantDiffusion>(&model)) return c->alpha;
  if (const auto* st = std::get_if<SpaceTimeDiffusion>(&model)) {
    double best = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double x = x_left + (x_right - x_left) * i / 63.0;
      for (int j = 0; j < 64; ++j) {
        const double t = t_end * j / 63.0;
        best = std::max(best, st->alpha(x, t));
      }
    }
    return best;
  }
  const auto& sd = std::get<StateDependentDiffusion>(model);
  if (!q0) throw ConfigError("sampled_alpha_bound: state-dependent alpha needs q0");
  double best = 0.0;
  for (int i = 0; i < 256; ++i) {
    const double x = x_left + (x_right - x_left) * (i + 0.5) / 256.0;
    best = std::max(best, sd.alpha(q0(x)));
  }
  return best;
}

Benchmark make_benchmark(const std::string& name, bool decayed_step) {
  if (decayed_step && name != "test1_2")
    throw ConfigError("the decayed-step variant only applies to test1_2");
  Benchmark b;
  b.name = name;
  if (name == "test1_1") {
    b.lambda = 1.0;
    b.beta = -1.0;
    b.q0 = [](double x) { return std::exp(-2.0 * x * x); };
    b.exact = [](double x, double t) { return std::exp(-2.0 * (x - t) * (x - t) - t); };
    b.bc = BoundaryCondition::DirichletExact;
    b.x_left = 0.0;
    b.x_right = 2.0;
    b.bounds.c_max = 1.0;
    b.bounds.r_min = -1.0;
    // the published r column for this problem is beta*dt per unit domain length
    b.r_table_scale = 1.0 / (b.x_right - b.x_left);
  } else if (name == "test1_2") {
    b.lambda = 0.5;
    b.beta = -1.0;
    b.q0 = box_profile;
    if (decayed_step)
      b.exact = [](double x, double t) { return box_profile(x - 0.5 * t) * std::exp(-t); };
    else
      b.exact = [](double x, double t) { return box_profile(x - 0.5 * t); };
    b.bc = BoundaryCondition::DirichletExact;
    b.x_left = 0.0;
    b.x_right = 1.5;
    b.bounds.c_max = 0.5;
    b.bounds.r_min = -1.0;
  } else if (name == "test2_1") {
    const double alpha = 1e-5;
    b.lambda = 10.0;
    b.beta = -5.0;
    b.diffusion = ConstantDiffusion{alpha};
    b.q0 = [](double x) { return std::sin(kPi * x); };
    b.exact = [alpha, lam = b.lambda, beta = b.beta](double x, double t) {
      return std::exp((-alpha * kPi * kPi + beta) * t) * std::sin(kPi * (x - lam * t));
    };
    b.bc = BoundaryCondition::DirichletExact;
    b.x_left = -1.0;
    b.x_right = 1.0;
    b.bounds.c_max = 0.1;
    b.bounds.d_max = 0.25;
    b.bounds.r_min = -0.25;
    b.alpha_bound = alpha;
    b.alpha_report = alpha;
  } else if (name == "test2_2") {
    b.lambda = 10.0;
    b.beta = -5.0;
    b.diffusion = SpaceTimeDiffusion{
        [](double x, double t) { return 1e-5 * std::exp(x * (t - 1.0) * (t - 1.0)); }, {}};
    b.q0 = [](double x) {
      const double s = std::sin(x);
      return std::exp(s * s);
    };
    b.bc = BoundaryCondition::Periodic;
    b.x_left = 0.0;
    b.x_right = 2.0 * kPi;
    b.bounds.c_max = 0.5;
    b.bounds.d_max = 0.25;
    b.bounds.r_min = -0.5;
    b.alpha_bound = sampled_alpha_bound(b.diffusion, b.q0, b.x_left, b.x_right, b.t_end);
    b.alpha_report = 1e-5;  // the coefficient's base magnitude; the realized-d convention
  } else if (name == "test3") {
    b.lambda = 0.0;
    b.beta = 0.0;
    b.diffusion = StateDependentDiffusion{[](double q) { return 1.0 / q; }};
    b.q0 = [](double x) { return ratio_profile(x, 0.0); };
    b.exact = ratio_profile;
    b.bc = BoundaryCondition::Periodic;
    b.x_left = -kSqrt2 * kPi;
    b.x_right = kSqrt2 * kPi;
    b.bounds.d_max = 0.25;
    b.alpha_bound = sampled_alpha_bound(b.diffusion, b.q0, b.x_left, b.x_right, b.t_end);
    b.alpha_report = b.alpha_bound;
  } else {
    throw ConfigError("unknown benchmark '" + name +
                      "' (expected test1_1, test1_2, test2_1, test2_2 or test3)");
  }
  return b;
}

std::vector<std::string> benchmark_names() {
  return {"test1_1", "test1_2", "test2_1", "test2_2", "test3"};
}

DtSelection select_dt(const StepBounds& bounds, double lambda, double beta,
                      double alpha_bound, double alpha_report, double dx) {
  if (!(dx > 0.0)) throw ConfigError("select_dt: dx must be positive");
  double dt = std::numeric_limits<double>::infinity();
  bool active = false;
  if (bounds.c_max && lambda != 0.0) {
    if (!(*bounds.c_max > 0.0)) throw ConfigError("select_dt: c_max must be positive");
    dt = std::min(dt, *bounds.c_max * dx / std::abs(lambda));
    active = true;
  }
  if (bounds.d_max && alpha_bound > 0.0) {
    if (!(*bounds.d_max > 0.0)) throw ConfigError("select_dt: d_max must be positive");
    dt = std::min(dt, *bounds.d_max * dx * dx / alpha_bound);
    active = true;
  }
  if (bounds.r_min && *bounds.r_min < 0.0 && beta < 0.0) {
    dt = std::min(dt, *bounds.r_min / beta);
    active = true;
  }
  if (!active)
    throw ConfigError(
        "select_dt: no active constraint (need c_max with lambda != 0, d_max with alpha > 0, "
        "or r_min < 0 with beta < 0)");
  DtSelection sel;
  sel.dt = dt;
  sel.c = lambda * dt / dx;
  sel.d = alpha_report * dt / (dx * dx);
  sel.r = beta * dt;
  return sel;
}

DtSelection select_dt(const Benchmark& bench, const Grid1D& grid) {
  DtSelection sel = select_dt(bench.bounds, bench.lambda, bench.beta, bench.alpha_bound,
                              bench.alpha_report, grid.dx);
  sel.r *= bench.r_table_scale;
  return sel;
}

NormTriple spatial_error_norms(const Field& f, const Grid1D& grid,
                               const std::function<double(double, double)>& exact) {
  if (!exact) throw ConfigError("spatial_error_norms: exact solution is required");
  NormTriple n;
  double sum1 = 0.0, sum2 = 0.0, mx = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double e = interior(f, grid)(i) - exact(grid.center(i), f.time);
    sum1 += std::abs(e);
    sum2 += e * e;
    mx = std::max(mx, std::abs(e));
  }
  n.l1 = grid.dx * sum1;
  n.l2 = std::sqrt(grid.dx * sum2);
  n.linf = mx;
  return n;
}

NormTriple spatial_norms(const Field& f, const Grid1D& grid) {
  NormTriple n;
  double sum1 = 0.0, sum2 = 0.0, mx = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double v = interior(f, grid)(i);
    sum1 += std::abs(v);
    sum2 += v * v;
    mx = std::max(mx, std::abs(v));
  }
  n.l1 = grid.dx * sum1;
  n.l2 = std::sqrt(grid.dx * sum2);
  n.linf = mx;
  return n;
}

NormTriple field_error_norms(const Field& f, const Field& ref, const Grid1D& grid) {
  if (ref.values.size() != f.values.size())
    throw ConfigError("field_error_norms: fields live on different grids");
  NormTriple n;
  double sum1 = 0.0, sum2 = 0.0, mx = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double e = interior(f, grid)(i) - interior(ref, grid)(i);
    sum1 += std::abs(e);
    sum2 += e * e;
    mx = std::max(mx, std::abs(e));
  }
  n.l1 = grid.dx * sum1;
  n.l2 = std::sqrt(grid.dx * sum2);
  n.linf = mx;
  return n;
}

void ErrorAccumulator::observe(const Field& f, const Grid1D& grid,
                               const std::function<double(double, double)>& exact) {
  if (!exact) throw ConfigError("ErrorAccumulator: exact solution is required");
  double e1 = 0.0, e2 = 0.0, einf = 0.0;
  double r1 = 0.0, r2 = 0.0, rinf = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double ex = exact(grid.center(i), f.time);
    const double e = interior(f, grid)(i) - ex;
    e1 += std::abs(e);
    e2 += e * e;
    einf = std::max(einf, std::abs(e));
    r1 += std::abs(ex);
    r2 += ex * ex;
    rinf = std::max(rinf, std::abs(ex));
  }
  err.l1 = std::max(err.l1, grid.dx * e1);
  err.l2 = std::max(err.l2, std::sqrt(grid.dx * e2));
  err.linf = std::max(err.linf, einf);
  ref.l1 = std::max(ref.l1, grid.dx * r1);
  ref.l2 = std::max(ref.l2, std::sqrt(grid.dx * r2));
  ref.linf = std::max(ref.linf, rinf);
}

void ErrorAccumulator::observe(const Field& f, const Field& reference, const Grid1D& grid) {
  const NormTriple e = field_error_norms(f, reference, grid);
  const NormTriple n = spatial_norms(reference, grid);
  err.l1 = std::max(err.l1, e.l1);
  err.l2 = std::max(err.l2, e.l2);
  err.linf = std::max(err.linf, e.linf);
  ref.l1 = std::max(ref.l1, n.l1);
  ref.l2 = std::max(ref.l2, n.l2);
  ref.linf = std::max(ref.linf, n.linf);
}

SolveResult solve_problem(const ProblemSpec& spec, const StepBounds& bounds,
                          double alpha_bound, double alpha_report, SchemeKind scheme,
                          const Observer& observer, const SolveOptions& opts) {
  spec.validate();
  if (!(opts.dt_scale > 0.0)) throw ConfigError("solve: dt_scale must be positive");
  const Grid1D& g = spec.grid;

  DtSelection sel = select_dt(bounds, spec.lambda, spec.beta, alpha_bound, alpha_report, g.dx);
  sel.dt *= opts.dt_scale;
  sel.c *= opts.dt_scale;
  sel.d *= opts.dt_scale;
  sel.r *= opts.dt_scale;

  Field f = project_initial(spec, opts.quadrature_points);
  if (observer) observer(f, g);

  // history only matters where d(alpha)/dt is estimated by backward differences
  bool needs_history = false;
  if (const auto* st = std::get_if<SpaceTimeDiffusion>(&spec.diffusion))
    needs_history = !st->dt_alpha;
  else if (std::holds_alternative<StateDependentDiffusion>(spec.diffusion))
    needs_history = true;
  const bool adaptive =
      std::holds_alternative<StateDependentDiffusion>(spec.diffusion) && bounds.d_max.has_value();

  AlphaHistory hist;
  bool have_history = false;
  const double t_end = spec.t_end;
  const double tol = 1e-12 * std::max(1.0, t_end);
  long steps = 0;
  while (f.time < t_end - tol) {
    double dt = sel.dt;
    if (adaptive) {
      // keep the realized d within its bound as the state evolves
      const double amax = cell_alpha(f, spec).maxCoeff();
      if (amax > 0.0) dt = std::min(dt, *bounds.d_max * g.dx * g.dx / amax);
    }
    if (f.time + dt > t_end - tol) dt = t_end - f.time;

    Eigen::ArrayXd ca_now;
    if (needs_history) ca_now = cell_alpha(f, spec);
    Field next = step(f, spec, dt, scheme, have_history ? &hist : nullptr);
    if (needs_history) {
      hist.cell_alpha = std::move(ca_now);
      hist.dt = dt;
      have_history = true;
    }
    f = std::move(next);
    ++steps;
    if (std::abs(f.time - t_end) <= tol && f.time != t_end) {
      f.time = t_end;
      apply_bc(f, spec);
    }
    if (observer) observer(f, g);
  }

  SolveResult res;
  res.final = std::move(f);
  res.grid = g;
  res.dts = sel;
  res.steps = steps;
  return res;
}

SolveResult solve_benchmark(const Benchmark& bench, int label, SchemeKind scheme,
                            const Observer& observer, const SolveOptions& opts) {
  const Grid1D g = bench.grid_for_label(label);
  SolveResult res = solve_problem(bench.problem(g), bench.bounds, bench.alpha_bound,
                                  bench.alpha_report, scheme, observer, opts);
  res.dts.r *= bench.r_table_scale;
  return res;
}

SolveResult reference_solution(const Benchmark& bench, int fine_label, SchemeKind scheme,
                               const SolveOptions& opts) {
  return solve_benchmark(bench, fine_label, scheme, {}, opts);
}

Field restrict_to(const Field& fine, const Grid1D& fine_grid, const Grid1D& coarse_grid) {
  if (fine_grid.x_left != coarse_grid.x_left || fine_grid.x_right != coarse_grid.x_right)
    throw ConfigError("restrict_to: grids cover different domains");
  if (coarse_grid.n_cells < 1 || fine_grid.n_cells % coarse_grid.n_cells != 0) {
    std::ostringstream msg;
    msg << "restrict_to: " << fine_grid.n_cells << " fine cells do not aggregate onto "
        << coarse_grid.n_cells << " coarse cells";
    throw ConfigError(msg.str());
  }
  const int ratio = fine_grid.n_cells / coarse_grid.n_cells;
  Field out = make_field(coarse_grid, fine.time);
  for (int i = 0; i < coarse_grid.n_cells; ++i) {
    double sum = 0.0;
    for (int k = 0; k < ratio; ++k) sum += interior(fine, fine_grid)(i * ratio + k);
    interior(out, coarse_grid)(i) = sum / ratio;
  }
  return out;
}

ReferenceHistory reference_history(const Benchmark& bench, int fine_label,
                                   SchemeKind scheme, const SolveOptions& opts) {
  ReferenceHistory h;
  h.grid = bench.grid_for_label(fine_label);
  solve_benchmark(
      bench, fine_label, scheme,
      [&h](const Field& f, const Grid1D& g) {
        h.times.push_back(f.time);
        h.interiors.emplace_back(interior(f, g));
      },
      opts);
  return h;
}

Field ReferenceHistory::at(double t, const Grid1D& coarse, double tol) const {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - times.begin());
  if (k == times.size() || (k > 0 && t - times[k - 1] < times[k] - t)) --k;
  if (times.empty() || std::abs(times[k] - t) > tol) {
    std::ostringstream msg;
    msg << "reference history has no snapshot at t = " << t
        << " (coarse step times must land on reference step times)";
    throw ConfigError(msg.str());
  }
  Field fine = make_field(grid, times[k]);
  interior(fine, grid) = interiors[k];
  return restrict_to(fine, grid, coarse);
}

}  // namespace adr
