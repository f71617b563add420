#pragma once

#include <string>

#include <Eigen/Core>

#include <adr/problem.hpp>

namespace adr {

// Cell-average data on a padded grid (interior + ghosts), tagged with time.
struct Field {
  Eigen::ArrayXd values;   // length grid.padded_size()
  double time = 0.0;
};

Field make_field(const Grid1D& grid, double time = 0.0);

inline auto interior(Field& f, const Grid1D& g) {
  return f.values.segment(Grid1D::n_ghost, g.n_cells);
}
inline auto interior(const Field& f, const Grid1D& g) {
  return f.values.segment(Grid1D::n_ghost, g.n_cells);
}

// Throws NonFiniteError naming the first offending interior/ghost cell.
void require_finite(const Field& f, const Grid1D& grid, const std::string& where);

// Cell averages of q0 by composite midpoint quadrature (subsamples per cell),
// ghosts filled via apply_bc at t = 0.
Field project_initial(const ProblemSpec& spec, int subsamples = 16);

// Fill ghost cells from the boundary condition at f.time. Idempotent.
void apply_bc(Field& f, const ProblemSpec& spec);

// Snapshot of interior cells, header "x,q", 17 significant digits.
std::string field_csv(const Field& f, const Grid1D& grid);
void write_field_csv(const std::string& path, const Field& f, const Grid1D& grid);

}  // namespace adr
