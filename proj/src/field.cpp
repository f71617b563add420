#include <adr/field.hpp>

#include <cmath>
#include <sstream>

#include <adr/io.hpp>

namespace adr {

Field make_field(const Grid1D& grid, double time) {
  Field f;
  f.values = Eigen::ArrayXd::Zero(grid.padded_size());
  f.time = time;
  return f;
}

void require_finite(const Field& f, const Grid1D& grid, const std::string& where) {
  for (int p = 0; p < grid.padded_size(); ++p) {
    if (!std::isfinite(f.values(p))) {
      const int i = p - Grid1D::n_ghost;
      std::ostringstream msg;
      msg << where << ": non-finite value " << f.values(p) << " in ";
      if (i < 0 || i >= grid.n_cells)
        msg << "ghost cell (padded index " << p << ")";
      else
        msg << "cell " << i;
      msg << " at t = " << f.time;
      throw NonFiniteError(msg.str());
    }
  }
}

Field project_initial(const ProblemSpec& spec, int subsamples) {
  spec.validate();
  if (subsamples < 1) throw ConfigError("project_initial: subsamples must be >= 1");
  const Grid1D& g = spec.grid;
  Field f = make_field(g, 0.0);
  const double h = g.dx / subsamples;
  for (int i = 0; i < g.n_cells; ++i) {
    const double a = g.x_left + i * g.dx;
    double sum = 0.0;
    for (int k = 0; k < subsamples; ++k) sum += spec.q0(a + (k + 0.5) * h);
    interior(f, g)(i) = sum / subsamples;
  }
  apply_bc(f, spec);
  require_finite(f, g, "project_initial");
  return f;
}

void apply_bc(Field& f, const ProblemSpec& spec) {
  const Grid1D& g = spec.grid;
  const int n = g.n_cells;
  const int gh = Grid1D::n_ghost;
  if (f.values.size() != g.padded_size())
    throw ConfigError("apply_bc: field does not match grid");
  switch (spec.bc) {
    case BoundaryCondition::Periodic:
      for (int k = 0; k < gh; ++k) {
        f.values(k) = f.values(n + k);            // left ghosts copy the right edge
        f.values(gh + n + k) = f.values(gh + k);  // right ghosts copy the left edge
      }
      break;
    case BoundaryCondition::DirichletExact:
      if (!spec.exact) throw ConfigError("apply_bc: Dirichlet boundary needs exact solution");
      for (int k = 0; k < gh; ++k) {
        f.values(k) = spec.exact(g.center_padded(k), f.time);
        f.values(gh + n + k) = spec.exact(g.center_padded(gh + n + k), f.time);
      }
      break;
  }
}

std::string field_csv(const Field& f, const Grid1D& grid) {
  std::string out = "x,q\n";
  for (int i = 0; i < grid.n_cells; ++i) {
    out += fmt17(grid.center(i));
    out += ',';
    out += fmt17(interior(f, grid)(i));
    out += '\n';
  }
  return out;
}

void write_field_csv(const std::string& path, const Field& f, const Grid1D& grid) {
  atomic_write(path, field_csv(f, grid));
}

}  // namespace adr
