#pragma once

#include <functional>
#include <variant>

#include <adr/grid.hpp>

namespace adr {

// q_t + lambda q_x = (alpha q_x)_x + beta q.
// The diffusion coefficient comes in four flavours; alpha >= 0 is required
// wherever it is evaluated.
struct ZeroDiffusion {};

struct ConstantDiffusion {
  double alpha = 0.0;
};

struct SpaceTimeDiffusion {
  std::function<double(double, double)> alpha;     // alpha(x, t)
  // Optional analytic time derivative. When absent the scheme falls back to a
  // backward difference of cell values against the previous step (0 on step 1).
  std::function<double(double, double)> dt_alpha;
};

struct StateDependentDiffusion {
  std::function<double(double)> alpha;             // alpha(q)
};

using DiffusionModel =
    std::variant<ZeroDiffusion, ConstantDiffusion, SpaceTimeDiffusion, StateDependentDiffusion>;

enum class BoundaryCondition {
  Periodic,
  // Ghost cells take the exact solution at ghost-cell centers at the field's
  // current time. The advective flux sees the forward difference (q_1 - q_0)/dx
  // as the first interior cell's slope, mirrored at the last interior cell.
  DirichletExact,
};

struct ProblemSpec {
  double lambda = 0.0;
  double beta = 0.0;
  DiffusionModel diffusion = ZeroDiffusion{};
  std::function<double(double)> q0;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  Grid1D grid;
  double t_end = 0.0;
  std::function<double(double, double)> exact;     // optional unless Dirichlet

  void validate() const {
    if (!q0) throw ConfigError("ProblemSpec: q0 is required");
    if (grid.n_cells < 1) throw ConfigError("ProblemSpec: grid is not set up");
    if (!(t_end >= 0.0)) throw ConfigError("ProblemSpec: t_end must be non-negative");
    if (bc == BoundaryCondition::DirichletExact && !exact)
      throw ConfigError("ProblemSpec: DirichletExact boundary requires an exact solution");
    if (const auto* c = std::get_if<ConstantDiffusion>(&diffusion)) {
      if (!(c->alpha >= 0.0)) throw ConfigError("ProblemSpec: constant alpha must be >= 0");
    }
  }
};

}  // namespace adr
