#include <doctest.h>

#include <cmath>
#include <sstream>

#include <adr/field.hpp>

using namespace adr;

namespace {

ProblemSpec periodic_spec(double xl, double xr, int n) {
  ProblemSpec spec;
  spec.grid = Grid1D(xl, xr, n);
  spec.q0 = [](double) { return 0.0; };
  spec.t_end = 1.0;
  return spec;
}

// independent oracle: high-resolution trapezoid rule
double trapezoid_average(const std::function<double(double)>& f, double a, double b) {
  const int n = 20000;
  const double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int k = 1; k < n; ++k) sum += f(a + k * h);
  return sum * h / (b - a);
}

}  // namespace

TEST_CASE("grid geometry and index conventions") {
  Grid1D g(0.0, 2.0, 8);
  CHECK(g.dx == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.padded_size() == 12);
  CHECK(g.n_interfaces() == 11);
  CHECK(g.center(0) == doctest::Approx(0.125));
  CHECK(g.center_padded(Grid1D::n_ghost) == doctest::Approx(0.125));
  CHECK(g.center_padded(0) == doctest::Approx(-0.375));  // outermost left ghost
  // interface j sits between padded cells j and j+1
  CHECK(g.interface_padded(Grid1D::n_ghost - 1) == doctest::Approx(0.0));
  CHECK(g.interface_padded(Grid1D::n_ghost + g.n_cells - 1) == doctest::Approx(2.0));
}

TEST_CASE("grid constructor rejects bad domains") {
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 0), ConfigError);
}

TEST_CASE("projection of a constant is exact") {
  ProblemSpec spec = periodic_spec(0.0, 1.0, 16);
  spec.q0 = [](double) { return 1.0; };
  Field f = project_initial(spec);
  for (int p = 0; p < spec.grid.padded_size(); ++p) CHECK(f.values(p) == 1.0);
}

TEST_CASE("projection of a box is exact on interior-of-box cells") {
  // cell [0.25, 0.3125] lies inside [1/8, 1/2]
  ProblemSpec spec = periodic_spec(0.0, 1.5, 24);
  spec.q0 = [](double x) { return (x >= 0.125 && x <= 0.5) ? 1.0 : 0.0; };
  Field f = project_initial(spec);
  CHECK(interior(f, spec.grid)(4) == 1.0);
  CHECK(interior(f, spec.grid)(20) == 0.0);
}

TEST_CASE("projected cell average matches a brute-force quadrature") {
  ProblemSpec spec = periodic_spec(0.0, 2.0, 8);
  spec.q0 = [](double x) { return std::exp(-2.0 * x * x); };
  Field f = project_initial(spec, 1024);
  const double oracle = trapezoid_average(spec.q0, 0.0, 0.25);
  CHECK(interior(f, spec.grid)(0) == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("midpoint projection converges to center values at order 2") {
  auto q0 = [](double x) { return std::exp(-2.0 * x * x); };
  auto max_gap = [&](int n) {
    ProblemSpec spec = periodic_spec(0.0, 2.0, n);
    spec.q0 = q0;
    Field f = project_initial(spec, 16);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(interior(f, spec.grid)(i) - q0(spec.grid.center(i))));
    return worst;
  };
  const double e1 = max_gap(32);
  const double e2 = max_gap(64);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("periodic ghosts wrap the interior") {
  ProblemSpec spec = periodic_spec(0.0, 1.0, 4);
  Field f = make_field(spec.grid);
  interior(f, spec.grid) << 1.0, 2.0, 3.0, 4.0;
  apply_bc(f, spec);
  CHECK(f.values(0) == 3.0);
  CHECK(f.values(1) == 4.0);
  CHECK(f.values(6) == 1.0);
  CHECK(f.values(7) == 2.0);
}

TEST_CASE("periodic ghosts of a constant field stay constant") {
  ProblemSpec spec = periodic_spec(0.0, 1.0, 6);
  Field f = make_field(spec.grid);
  f.values.setConstant(2.5);
  apply_bc(f, spec);
  for (int p = 0; p < spec.grid.padded_size(); ++p) CHECK(f.values(p) == 2.5);
}

TEST_CASE("dirichlet ghosts evaluate the exact solution at ghost centers") {
  ProblemSpec spec = periodic_spec(0.0, 2.0, 8);
  spec.bc = BoundaryCondition::DirichletExact;
  spec.exact = [](double x, double t) { return std::exp(-2.0 * (x - t) * (x - t) - t); };
  spec.q0 = [&](double x) { return spec.exact(x, 0.0); };
  Field f = make_field(spec.grid, 0.0);
  apply_bc(f, spec);
  const Grid1D& g = spec.grid;
  CHECK(f.values(0) == doctest::Approx(std::exp(-2.0 * 0.375 * 0.375)).epsilon(1e-15));
  CHECK(f.values(1) == doctest::Approx(std::exp(-2.0 * 0.125 * 0.125)).epsilon(1e-15));
  CHECK(f.values(g.padded_size() - 1) ==
        doctest::Approx(std::exp(-2.0 * 2.375 * 2.375)).epsilon(1e-15));

  SUBCASE("ghosts track the field time") {
    f.time = 0.5;
    apply_bc(f, spec);
    CHECK(f.values(0) == doctest::Approx(spec.exact(-0.375, 0.5)).epsilon(1e-15));
  }
}

TEST_CASE("apply_bc is idempotent") {
  ProblemSpec spec = periodic_spec(0.0, 1.0, 8);
  spec.q0 = [](double x) { return std::sin(x); };
  Field f = project_initial(spec);
  Field g = f;
  apply_bc(g, spec);
  CHECK((g.values == f.values).all());

  spec.bc = BoundaryCondition::DirichletExact;
  spec.exact = [](double x, double t) { return x + t; };
  apply_bc(f, spec);
  g = f;
  apply_bc(g, spec);
  CHECK((g.values == f.values).all());
}

TEST_CASE("dirichlet without an exact solution is rejected") {
  ProblemSpec spec = periodic_spec(0.0, 1.0, 8);
  spec.bc = BoundaryCondition::DirichletExact;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  Field f = make_field(spec.grid);
  CHECK_THROWS_AS(apply_bc(f, spec), ConfigError);
}

TEST_CASE("require_finite names the offending cell") {
  Grid1D g(0.0, 1.0, 8);
  Field f = make_field(g);
  interior(f, g)(3) = std::nan("");
  CHECK_THROWS_WITH_AS(require_finite(f, g, "here"),
                       doctest::Contains("cell 3"), NonFiniteError);
  f.values.setZero();
  CHECK_NOTHROW(require_finite(f, g, "here"));
}

TEST_CASE("field csv carries centers and full-precision values") {
  Grid1D g(0.0, 1.0, 4);
  Field f = make_field(g);
  interior(f, g) << 0.1, 0.2, 0.3, 0.4;
  const std::string csv = field_csv(f, g);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,q");
  std::getline(in, line);
  CHECK(line.substr(0, 6) == "0.125,");
  // 0.1 must round-trip
  CHECK(std::stod(line.substr(6)) == 0.1);
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
