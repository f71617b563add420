#pragma once

#include <adr/errors.hpp>

namespace adr {

// Uniform 1-D cell grid with two ghost cells on each side.
//
// Index conventions used throughout:
//   interior cell i   : i = 0 .. n_cells-1
//   padded cell p     : p = 0 .. n_cells+3, interior i <-> p = i + n_ghost
//   padded interface j: j = 0 .. n_cells+2, between padded cells j and j+1
struct Grid1D {
  double x_left = 0.0;
  double x_right = 1.0;
  int n_cells = 0;
  double dx = 0.0;

  static constexpr int n_ghost = 2;

  Grid1D() = default;
  Grid1D(double xl, double xr, int n) : x_left(xl), x_right(xr), n_cells(n) {
    if (!(xr > xl)) throw ConfigError("Grid1D: x_right must exceed x_left");
    if (n < 1) throw ConfigError("Grid1D: n_cells must be positive");
    dx = (xr - xl) / n;
  }

  int padded_size() const { return n_cells + 2 * n_ghost; }
  int n_interfaces() const { return padded_size() - 1; }

  // cell centers
  double center(int i) const { return x_left + (i + 0.5) * dx; }
  double center_padded(int p) const { return x_left + (p - n_ghost + 0.5) * dx; }
  // position of padded interface j (left face of padded cell j+1)
  double interface_padded(int j) const { return x_left + (j - n_ghost + 1) * dx; }
};

}  // namespace adr
