#pragma once

#include <optional>
#include <string>
#include <vector>

#include <adr/schemes.hpp>

namespace adr {

// Per-axis time-step bounds; an absent bound means that constraint is never active.
struct StepBounds {
  std::optional<double> c_max;
  std::optional<double> d_max;
  std::optional<double> r_min;  // <= 0
};

// A named verification problem: coefficients, initial data, boundary treatment and
// time-step bounds, plus the reporting conventions its published tables use.
// Mesh labels are cell counts.
struct Benchmark {
  std::string name;
  double lambda = 0.0;
  double beta = 0.0;
  DiffusionModel diffusion = ZeroDiffusion{};
  std::function<double(double)> q0;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  double x_left = 0.0, x_right = 1.0;
  double t_end = 1.0;
  std::function<double(double, double)> exact;  // empty -> needs a reference solution
  StepBounds bounds;

  // Diffusion magnitude bounding the d-constraint in select_dt (conservative),
  // and the representative magnitude used when reporting the realized d.
  double alpha_bound = 0.0;
  double alpha_report = 0.0;

  // test1_1's published table tabulates r per unit domain length (0.5 on [0,2]);
  // applied to the reported r only, never to the time step itself.
  double r_table_scale = 1.0;

  Grid1D grid_for_label(int label) const;
  ProblemSpec problem(const Grid1D& grid) const;
};

// Registry: test1_1, test1_2, test2_1, test2_2, test3.
Benchmark make_benchmark(const std::string& name, bool decayed_step = false);
std::vector<std::string> benchmark_names();

struct DtSelection {
  double dt = 0.0;
  double c = 0.0, d = 0.0, r = 0.0;  // realized at the unclipped dt
};
// select_dt(bench, grid) and solve_benchmark report r in the benchmark's table
// convention (r_table_scale); the free-standing overload reports beta * dt as is.

// dt = min over active constraints (c_max with lambda != 0, d_max with alpha_bound > 0,
// r_min with beta < 0); throws ConfigError when none is active.
DtSelection select_dt(const StepBounds& bounds, double lambda, double beta,
                      double alpha_bound, double alpha_report, double dx);
DtSelection select_dt(const Benchmark& bench, const Grid1D& grid);

struct NormTriple {
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

// Discrete norms of interior - exact(centers, f.time): l1 = dx*sum|e|,
// l2 = sqrt(dx*sum e^2), linf = max|e|.
NormTriple spatial_error_norms(const Field& f, const Grid1D& grid,
                               const std::function<double(double, double)>& exact);
NormTriple spatial_norms(const Field& f, const Grid1D& grid);
// Same-grid difference against a reference field.
NormTriple field_error_norms(const Field& f, const Field& ref, const Grid1D& grid);

// Running sup-over-time of error and reference norms (one observe per time level).
struct ErrorAccumulator {
  NormTriple err;
  NormTriple ref;
  void observe(const Field& f, const Grid1D& grid,
               const std::function<double(double, double)>& exact);
  // Same accumulation against a same-grid reference snapshot.
  void observe(const Field& f, const Field& reference, const Grid1D& grid);
};

struct SolveOptions {
  double dt_scale = 1.0;       // multiplies the selected dt (diagnostics)
  int quadrature_points = 16;  // initial-projection subsamples
};

struct SolveResult {
  Field final;
  Grid1D grid;
  DtSelection dts;
  long steps = 0;
};

using Observer = std::function<void(const Field&, const Grid1D&)>;

// Advance a benchmark from t=0 to t_end with the selected dt (final step clipped to
// land on t_end exactly); observer fires on the initial field and after every step.
// StateDependent diffusion re-checks the d-bound each step and shrinks dt if needed.
SolveResult solve_benchmark(const Benchmark& bench, int label, SchemeKind scheme,
                            const Observer& observer = {}, const SolveOptions& opts = {});

// Same driver for a free-standing problem spec.
SolveResult solve_problem(const ProblemSpec& spec, const StepBounds& bounds,
                          double alpha_bound, double alpha_report, SchemeKind scheme,
                          const Observer& observer = {}, const SolveOptions& opts = {});

// Fine-grid solve restricted to a coarse grid by exact cell-average aggregation.
// fine_label cells must be an integer multiple of every coarse mesh used with it.
SolveResult reference_solution(const Benchmark& bench, int fine_label, SchemeKind scheme,
                               const SolveOptions& opts = {});
Field restrict_to(const Field& fine, const Grid1D& fine_grid, const Grid1D& coarse_grid);

// Every recorded time level of a reference solve (dense; a 512-cell reference over
// a few thousand steps is a few MB). Coarser runs under the same step bounds have
// step times that nest into these exactly (dt scales by the integer mesh ratio or
// its square), which is what sup-over-time comparison against a reference needs.
struct ReferenceHistory {
  Grid1D grid;
  std::vector<double> times;              // strictly increasing
  std::vector<Eigen::ArrayXd> interiors;  // interior cells per time

  // Snapshot restricted to coarse at the recorded time matching t within tol;
  // throws ConfigError when no recorded time is that close.
  Field at(double t, const Grid1D& coarse, double tol) const;
};
ReferenceHistory reference_history(const Benchmark& bench, int fine_label,
                                   SchemeKind scheme, const SolveOptions& opts = {});

// Diffusion magnitudes used for select_dt bounds: max over a 64x64 (x,t) sample for
// SpaceTime, max alpha(q0) over 256 samples for StateDependent.
double sampled_alpha_bound(const DiffusionModel& model,
                           const std::function<double(double)>& q0, double x_left,
                           double x_right, double t_end);

}  // namespace adr
