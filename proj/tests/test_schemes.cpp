#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <adr/schemes.hpp>

using namespace adr;

namespace {

ProblemSpec scheme_spec(int n, double xl, double xr, double lambda, double beta,
                        DiffusionModel diff,
                        BoundaryCondition bc = BoundaryCondition::Periodic) {
  ProblemSpec spec;
  spec.grid = Grid1D(xl, xr, n);
  spec.lambda = lambda;
  spec.beta = beta;
  spec.diffusion = std::move(diff);
  spec.bc = bc;
  spec.q0 = [](double) { return 0.0; };
  spec.t_end = 1.0;
  return spec;
}

Field random_field(const ProblemSpec& spec, std::mt19937& rng, double lo = -1.0,
                   double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Field f = make_field(spec.grid);
  for (int i = 0; i < spec.grid.n_cells; ++i) interior(f, spec.grid)(i) = u(rng);
  apply_bc(f, spec);
  return f;
}

double worst_rel_gap(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a(i) - b(i)) / std::max(1.0, std::abs(a(i))));
  return worst;
}

Eigen::ArrayXd slopes_of(const Eigen::ArrayXd& q, double dx) {
  Eigen::ArrayXd s = Eigen::ArrayXd::Zero(q.size());
  for (int p = 1; p + 1 < q.size(); ++p) s(p) = centred_slope(q, p, dx);
  return s;
}

// advection-reaction stencil written out term by term, independent of the library kernel
Eigen::ArrayXd ar_stencil_oracle(const Eigen::ArrayXd& qp, int g, double c, double r) {
  const int n = static_cast<int>(qp.size()) - 2 * g;
  Eigen::ArrayXd out(n);
  for (int i = 0; i < n; ++i) {
    const int p = i + g;
    const double q0 = qp(p), qm1 = qp(p - 1), qm2 = qp(p - 2), qp1 = qp(p + 1);
    out(i) = q0 -
             c * ((2.0 + r) / 2.0 * (q0 - qm1) +
                  (2.0 - 2.0 * c + r) / 8.0 * (qp1 - q0 - qm1 + qm2)) +
             r * (q0 - c / 4.0 * (qp1 - qm1) + r / 2.0 * q0);
  }
  return out;
}

}  // namespace

TEST_CASE("centred slope evaluates the two-neighbor difference") {
  Eigen::ArrayXd q(3);
  q << 1, 2, 3;
  CHECK(centred_slope(q, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  q << 5, 5, 5;
  CHECK(centred_slope(q, 1, 1.0) == 0.0);
  q << 0, 1, 4;
  CHECK(centred_slope(q, 1, 0.5) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("diffusion operator is the alpha-weighted second difference") {
  Eigen::ArrayXd q(3);
  InterfaceCoeffs coeffs;
  coeffs.dt_alpha = Eigen::ArrayXd::Zero(2);

  q << 0, 1, 4;
  coeffs.alpha = Eigen::ArrayXd::Ones(2);
  CHECK(diffusion_operator(q, coeffs, 1.0)(1) == doctest::Approx(2.0).epsilon(1e-15));

  q << 0, 0, 1;
  coeffs.alpha << 1.0, 2.0;  // left interface 1, right interface 2
  CHECK(diffusion_operator(q, coeffs, 1.0)(1) == doctest::Approx(2.0).epsilon(1e-15));

  q << 3, 3, 3;
  CHECK(diffusion_operator(q, coeffs, 1.0)(1) == 0.0);
}

TEST_CASE("upwind flux with half-step expansion") {
  Eigen::ArrayXd zero5 = Eigen::ArrayXd::Zero(5);

  SUBCASE("constant state without reaction carries lambda*q") {
    Eigen::ArrayXd q = Eigen::ArrayXd::Constant(5, 3.0);
    CHECK(ader_flux(q, zero5, zero5, 2, 2.0, 0.0, 0.7, 1.0) ==
          doctest::Approx(6.0).epsilon(1e-15));
  }

  SUBCASE("linear data, unit speed") {
    Eigen::ArrayXd q(5);
    q << 0, 1, 2, 3, 4;
    Eigen::ArrayXd s = slopes_of(q, 1.0);
    CHECK(ader_flux(q, s, zero5, 2, 1.0, 0.0, 0.5, 1.0) ==
          doctest::Approx(2.25).epsilon(1e-15));
  }

  SUBCASE("reaction correction on a constant state") {
    Eigen::ArrayXd q = Eigen::ArrayXd::Ones(5);
    CHECK(ader_flux(q, zero5, zero5, 2, 1.0, -1.0, 0.1, 1.0) ==
          doctest::Approx(0.95).epsilon(1e-15));
  }

  SUBCASE("zero speed gives zero flux") {
    Eigen::ArrayXd q(5);
    q << 1, 5, -2, 4, 0;
    Eigen::ArrayXd s = slopes_of(q, 1.0);
    CHECK(ader_flux(q, s, zero5, 2, 0.0, -1.0, 0.3, 1.0) == 0.0);
  }

  SUBCASE("negative speed mirrors the positive branch") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::ArrayXd q(7), qr(7);
    for (int p = 0; p < 7; ++p) q(p) = u(rng);
    for (int p = 0; p < 7; ++p) qr(p) = q(6 - p);
    const double dx = 0.4, dt = 0.2, beta = -0.3;
    Eigen::ArrayXd s = slopes_of(q, dx), sr = slopes_of(qr, dx);
    Eigen::ArrayXd z = Eigen::ArrayXd::Zero(7);
    for (int j = 1; j <= 4; ++j) {
      const double fm = ader_flux(q, s, z, j, -0.9, beta, dt, dx);
      const double fp = ader_flux(qr, sr, z, 5 - j, 0.9, beta, dt, dx);
      CHECK(fm == doctest::Approx(-fp).epsilon(1e-13));
    }
  }
}

TEST_CASE("half-time diffusion volume term") {
  SUBCASE("constant field gives zero") {
    Eigen::ArrayXd q = Eigen::ArrayXd::Constant(5, 2.0);
    InterfaceCoeffs coeffs;
    coeffs.alpha = Eigen::ArrayXd::Ones(4);
    coeffs.dt_alpha = Eigen::ArrayXd::Zero(4);
    Eigen::ArrayXd z = Eigen::ArrayXd::Zero(5);
    CHECK(half_time_diffusion(q, z, z, coeffs, 2, 1.0, -1.0, 0.3, 1.0) == 0.0);
  }

  SUBCASE("unit spike, half step") {
    Eigen::ArrayXd q(5);
    q << 0, 0, 1, 0, 0;
    InterfaceCoeffs coeffs;
    coeffs.alpha = Eigen::ArrayXd::Ones(4);
    coeffs.dt_alpha = Eigen::ArrayXd::Zero(4);
    Eigen::ArrayXd s = slopes_of(q, 1.0);
    Eigen::ArrayXd lap = diffusion_operator(q, coeffs, 1.0);
    REQUIRE(lap(1) == doctest::Approx(1.0));
    REQUIRE(lap(2) == doctest::Approx(-2.0));
    // neighbor of the spike: the evolved differences cancel
    CHECK(half_time_diffusion(q, s, lap, coeffs, 1, 0.0, 0.0, 0.5, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-15));
    // at the spike: both interface terms contribute -0.25
    CHECK(half_time_diffusion(q, s, lap, coeffs, 2, 0.0, 0.0, 0.5, 1.0) ==
          doctest::Approx(-0.5).epsilon(1e-14));
  }

  SUBCASE("vanishing dt recovers the plain diffusion operator") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::ArrayXd q(9);
    for (int p = 0; p < 9; ++p) q(p) = u(rng);
    const double dx = 0.3;
    InterfaceCoeffs coeffs;
    coeffs.alpha = Eigen::ArrayXd::Ones(8);
    coeffs.dt_alpha = Eigen::ArrayXd::Zero(8);
    Eigen::ArrayXd s = slopes_of(q, dx);
    Eigen::ArrayXd lap = diffusion_operator(q, coeffs, dx);
    for (int p = 2; p <= 6; ++p) {
      const double g = half_time_diffusion(q, s, lap, coeffs, p, 0.7, -0.5, 1e-12, dx);
      CHECK(g == doctest::Approx(lap(p)).epsilon(1e-8));
    }
  }
}

TEST_CASE("half-step reaction volume term") {
  Eigen::ArrayXd z5 = Eigen::ArrayXd::Zero(5);

  SUBCASE("no reaction, no source") {
    Eigen::ArrayXd q(5);
    q << 1, -2, 3, 0, 5;
    Eigen::ArrayXd s = slopes_of(q, 1.0);
    CHECK(numerical_source(q, s, z5, 2, 1.0, 0.0, 0.4) == 0.0);
  }

  SUBCASE("constant state, decay rate -1") {
    Eigen::ArrayXd q = Eigen::ArrayXd::Ones(5);
    CHECK(numerical_source(q, z5, z5, 2, 3.0, -1.0, 0.2) ==
          doctest::Approx(-0.9).epsilon(1e-15));
  }

  SUBCASE("linear data with advection and growth") {
    Eigen::ArrayXd q(3);
    q << 0, 1, 2;
    Eigen::ArrayXd s = slopes_of(q, 1.0);
    Eigen::ArrayXd z3 = Eigen::ArrayXd::Zero(3);
    CHECK(numerical_source(q, s, z3, 1, 1.0, 2.0, 0.1) ==
          doctest::Approx(2.1).epsilon(1e-15));
  }
}

TEST_CASE("flux-side slopes differ from volume slopes only at exact-inflow boundaries") {
  std::mt19937 rng(9);
  ProblemSpec spec = scheme_spec(12, 0.0, 2.0, 1.0, -1.0, ZeroDiffusion{});

  SUBCASE("periodic: identical arrays") {
    Field f = random_field(spec, rng);
    CHECK((flux_slopes(f, spec) == reconstruction_slopes(f, spec)).all());
  }

  SUBCASE("dirichlet: one-sided at the first and last interior cell") {
    spec.bc = BoundaryCondition::DirichletExact;
    spec.exact = [](double x, double t) { return std::sin(x + t); };
    Field f = random_field(spec, rng);
    const Eigen::ArrayXd vol = reconstruction_slopes(f, spec);
    const Eigen::ArrayXd flx = flux_slopes(f, spec);
    const int first = Grid1D::n_ghost;
    const int last = Grid1D::n_ghost + spec.grid.n_cells - 1;
    const auto& q = f.values;
    CHECK(flx(first) == (q(first + 1) - q(first)) / spec.grid.dx);
    CHECK(flx(last) == (q(last) - q(last - 1)) / spec.grid.dx);
    CHECK(vol(first) == centred_slope(q, first, spec.grid.dx));
    for (int p = 0; p < q.size(); ++p)
      if (p != first && p != last) CHECK(flx(p) == vol(p));
  }
}

TEST_CASE("the two second-order paths agree on linear problems") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double lambda = coef(rng);
    const double beta = coef(rng);
    DiffusionModel diff = ZeroDiffusion{};
    if (trial % 3 == 1) diff = ConstantDiffusion{0.05 * std::abs(coef(rng))};
    if (trial % 3 == 2)
      diff = SpaceTimeDiffusion{
          [](double x, double t) { return 0.01 * (2.0 + std::sin(x + t)); },
          [](double x, double t) { return 0.01 * std::cos(x + t); }};
    ProblemSpec spec = scheme_spec(32, 0.0, 1.0, lambda, beta, std::move(diff));
    Field f = random_field(spec, rng);
    Field a = step_ader(f, spec, 1e-3);
    Field b = step_muscl_hancock(f, spec, 1e-3);
    CHECK(worst_rel_gap(interior(a, spec.grid), interior(b, spec.grid)) <= 1e-12);
  }
}

TEST_CASE("the two second-order paths agree under exact-solution boundaries") {
  std::mt19937 rng(78);
  ProblemSpec spec = scheme_spec(24, 0.0, 2.0, 0.8, -0.6, ConstantDiffusion{0.02},
                                 BoundaryCondition::DirichletExact);
  spec.exact = [](double x, double t) { return std::exp(-t) * std::sin(2.0 * x + t); };
  Field f = random_field(spec, rng);
  Field a = step_ader(f, spec, 2e-3);
  Field b = step_muscl_hancock(f, spec, 2e-3);
  CHECK(worst_rel_gap(interior(a, spec.grid), interior(b, spec.grid)) <= 1e-12);
}

TEST_CASE("assembled update matches the five-point stencil for constant alpha") {
  std::mt19937 rng(11);
  const int n = 16;
  const double dx = 1.0 / n;
  const double dt = 0.4 * dx;                // c = 0.4 with lambda = 1
  const double alpha = 0.1 * dx * dx / dt;   // d = 0.1
  const double beta = -0.2 / dt;             // r = -0.2
  ProblemSpec spec = scheme_spec(n, 0.0, 1.0, 1.0, beta, ConstantDiffusion{alpha});
  Field f = random_field(spec, rng);
  Field a = step_ader(f, spec, dt);
  Field b = step_ader_stencil_constant_alpha(f, spec, dt);
  CHECK(worst_rel_gap(interior(a, spec.grid), interior(b, spec.grid)) <= 1e-13);
}

TEST_CASE("zero-diffusion update reduces to the advection-reaction stencil") {
  std::mt19937 rng(13);
  const int n = 16;
  const double dx = 1.0 / n;
  const double dt = 0.01;
  ProblemSpec spec = scheme_spec(n, 0.0, 1.0, 0.8, -2.0, ZeroDiffusion{});
  Field f = random_field(spec, rng);
  const double c = spec.lambda * dt / dx;
  const double r = spec.beta * dt;
  Eigen::ArrayXd oracle = ar_stencil_oracle(f.values, Grid1D::n_ghost, c, r);
  Field a = step_ader(f, spec, dt);
  CHECK(worst_rel_gap(interior(a, spec.grid), oracle) <= 1e-14);
  Field b = step(f, spec, dt, SchemeKind::AderAdvectionReaction);
  CHECK(worst_rel_gap(interior(b, spec.grid), oracle) <= 1e-14);
}

TEST_CASE("gaussian decay setup, one step matches the stencil away from the boundary") {
  // exact-solution boundaries switch the flux slope at the first and last cell,
  // so only the untouched middle cells are compared against the plain stencil
  const int n = 8;
  ProblemSpec spec = scheme_spec(n, 0.0, 2.0, 1.0, -1.0, ZeroDiffusion{},
                                 BoundaryCondition::DirichletExact);
  spec.exact = [](double x, double t) {
    return std::exp(-2.0 * (x - t) * (x - t) - t);
  };
  spec.q0 = [&spec](double x) { return spec.exact(x, 0.0); };
  Field f = project_initial(spec);
  const double dt = 0.2;  // c = 0.8, r = -0.2
  Field a = step_ader(f, spec, dt);
  Eigen::ArrayXd oracle = cdr_stencil_update(f.values, Grid1D::n_ghost, 0.8, 0.0, -0.2);
  for (int i = 2; i <= n - 3; ++i)
    CHECK(interior(a, spec.grid)(i) == doctest::Approx(oracle(i)).epsilon(1e-13));

  // the affected cells, assembled by hand: the flux sees the one-sided slope at
  // the first and last interior cell, the source keeps the centred slope
  const auto& q = f.values;
  const int gh = Grid1D::n_ghost;
  const double dx = spec.grid.dx;
  const double lambda = spec.lambda, beta = spec.beta;
  auto centred = [&](int p) { return (q(p + 1) - q(p - 1)) / (2.0 * dx); };
  auto flux = [&](int j, double slope) {
    const double qe = q(j) + 0.5 * dx * slope;
    return lambda * (qe + 0.5 * dt * (-lambda * slope + beta * qe));
  };
  auto cell = [&](int p, double f_left, double f_right) {
    const double src = beta * (q(p) + 0.5 * dt * (-lambda * centred(p) + beta * q(p)));
    return q(p) - dt / dx * (f_right - f_left) + dt * src;
  };
  const double fwd = (q(gh + 1) - q(gh)) / dx;
  const double bwd = (q(gh + n - 1) - q(gh + n - 2)) / dx;
  const double c0 = cell(gh, flux(gh - 1, centred(gh - 1)), flux(gh, fwd));
  const double c1 = cell(gh + 1, flux(gh, fwd), flux(gh + 1, centred(gh + 1)));
  const double cl =
      cell(gh + n - 1, flux(gh + n - 2, centred(gh + n - 2)), flux(gh + n - 1, bwd));
  CHECK(interior(a, spec.grid)(0) == doctest::Approx(c0).epsilon(1e-13));
  CHECK(interior(a, spec.grid)(1) == doctest::Approx(c1).epsilon(1e-13));
  CHECK(interior(a, spec.grid)(n - 1) == doctest::Approx(cl).epsilon(1e-13));
}

TEST_CASE("stencil with d=0 and r=0 is the classical second-order advection stencil") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::ArrayXd qp(20);
  for (int p = 0; p < 20; ++p) qp(p) = u(rng);
  const double c = 0.6;
  Eigen::ArrayXd got = cdr_stencil_update(qp, 2, c, 0.0, 0.0);
  for (int i = 0; i < 16; ++i) {
    const int p = i + 2;
    const double expect =
        qp(p) - c * ((qp(p) - qp(p - 1)) +
                     (1.0 - c) / 4.0 * (qp(p + 1) - qp(p) - qp(p - 1) + qp(p - 2)));
    CHECK(got(i) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("unit courant number shifts the field by one cell") {
  std::mt19937 rng(19);
  const int n = 16;
  ProblemSpec spec = scheme_spec(n, 0.0, 1.0, 1.0, 0.0, ZeroDiffusion{});
  Field f = random_field(spec, rng);
  const double dt = spec.grid.dx;  // c = 1
  Field m = step_muscl_hancock(f, spec, dt);
  Field s = step_ader_stencil_constant_alpha(f, spec, dt);
  for (int i = 0; i < n; ++i) {
    const double from = interior(f, spec.grid)((i - 1 + n) % n);
    CHECK(std::abs(interior(m, spec.grid)(i) - from) <= 1e-13);
    CHECK(std::abs(interior(s, spec.grid)(i) - from) <= 1e-13);
  }
}

TEST_CASE("interface fluxes telescope around a periodic ring") {
  // constant alpha: the wrap interface sees bitwise-identical inputs on both sides
  std::mt19937 rng(5);
  ProblemSpec spec = scheme_spec(24, 0.0, 3.0, 0.7, -0.4, ConstantDiffusion{0.02});
  Field f = random_field(spec, rng);
  const double dt = 0.01;
  const InterfaceCoeffs coeffs = interface_alpha(f, spec);
  const Eigen::ArrayXd slopes = reconstruction_slopes(f, spec);
  const Eigen::ArrayXd fsl = flux_slopes(f, spec);
  const Eigen::ArrayXd lap = diffusion_operator(f.values, coeffs, spec.grid.dx);
  const int jl = Grid1D::n_ghost - 1;
  const int jr = Grid1D::n_ghost + spec.grid.n_cells - 1;
  CHECK(ader_flux(f.values, fsl, lap, jl, 0.7, -0.4, dt, spec.grid.dx) ==
        ader_flux(f.values, fsl, lap, jr, 0.7, -0.4, dt, spec.grid.dx));
  CHECK(interface_diffusion_flux(f.values, slopes, lap, coeffs, jl, 0.7, -0.4, dt,
                                 spec.grid.dx) ==
        interface_diffusion_flux(f.values, slopes, lap, coeffs, jr, 0.7, -0.4, dt,
                                 spec.grid.dx));
}

TEST_CASE("mass is conserved without reaction") {
  std::mt19937 rng(6);
  ProblemSpec spec = scheme_spec(
      32, 0.0, 2.0 * std::numbers::pi, 1.0, 0.0,
      SpaceTimeDiffusion{[](double x, double t) {
                           return 0.01 * (2.0 + std::sin(x)) * (1.0 + 0.1 * std::sin(t));
                         },
                         {}});
  Field f = random_field(spec, rng, 0.5, 1.5);
  const double mass0 = spec.grid.dx * interior(f, spec.grid).sum();
  Field a = step_ader(f, spec, 0.002);
  CHECK(std::abs(spec.grid.dx * interior(a, spec.grid).sum() - mass0) <=
        1e-12 * std::abs(mass0));
  Field m = step_muscl_hancock(f, spec, 0.002);
  CHECK(std::abs(spec.grid.dx * interior(m, spec.grid).sum() - mass0) <=
        1e-12 * std::abs(mass0));
}

TEST_CASE("constant fields pass through every scheme unchanged when beta is zero") {
  const double k = 3.7;
  for (SchemeKind kind :
       {SchemeKind::AderGeneral, SchemeKind::AderConstantAlpha,
        SchemeKind::AderAdvectionReaction, SchemeKind::MusclHancock,
        SchemeKind::FirstOrder}) {
    DiffusionModel diff;
    if (kind == SchemeKind::AderAdvectionReaction)
      diff = ZeroDiffusion{};
    else
      diff = ConstantDiffusion{0.01};
    ProblemSpec spec = scheme_spec(16, 0.0, 1.0, 0.9, 0.0, std::move(diff));
    Field f = make_field(spec.grid);
    f.values.setConstant(k);
    Field out = step(f, spec, 0.01, kind);
    CHECK((out.values - k).abs().maxCoeff() <= 1e-15 * k);
  }
}

TEST_CASE("one step multiplies a fourier mode by one uniform complex scalar") {
  const int n = 32;
  const double dx = 1.0 / n;
  const double dt = 0.45 * dx;
  const double alpha = 0.08 * dx * dx / dt;
  const double beta = -0.15 / dt;
  ProblemSpec spec = scheme_spec(n, 0.0, 1.0, 1.0, beta, ConstantDiffusion{alpha});
  const double theta = 2.0 * std::numbers::pi * 3.0 / n;
  Field re = make_field(spec.grid), im = make_field(spec.grid);
  for (int i = 0; i < n; ++i) {
    interior(re, spec.grid)(i) = std::cos(theta * i);
    interior(im, spec.grid)(i) = std::sin(theta * i);
  }
  apply_bc(re, spec);
  apply_bc(im, spec);
  Field re1 = step_ader(re, spec, dt);
  Field im1 = step_ader(im, spec, dt);
  std::complex<double> first;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> before(interior(re, spec.grid)(i),
                                      interior(im, spec.grid)(i));
    const std::complex<double> after(interior(re1, spec.grid)(i),
                                     interior(im1, spec.grid)(i));
    const std::complex<double> mult = after / before;
    if (i == 0)
      first = mult;
    else
      worst = std::max(worst, std::abs(mult - first));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("a left-moving problem mirrors its right-moving twin") {
  const int n = 40;
  auto bump = [](double x) {
    return std::exp(-8.0 * (x - 0.4) * (x - 0.4)) +
           0.2 * std::sin(2.0 * std::numbers::pi * x);
  };
  ProblemSpec right = scheme_spec(n, 0.0, 1.0, 0.7, -0.3, ConstantDiffusion{0.005});
  ProblemSpec left = scheme_spec(n, 0.0, 1.0, -0.7, -0.3, ConstantDiffusion{0.005});
  right.q0 = bump;
  left.q0 = [bump](double x) { return bump(1.0 - x); };
  Field fr = project_initial(right);
  Field fl = project_initial(left);
  for (int k = 0; k < 5; ++k) {
    fr = step_ader(fr, right, 0.01);
    fl = step_ader(fl, left, 0.01);
  }
  const double scale = interior(fr, right.grid).abs().maxCoeff();
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(interior(fl, left.grid)(i) - interior(fr, right.grid)(n - 1 - i)) <=
          1e-12 * scale);
}

TEST_CASE("first-order scheme") {
  SUBCASE("pure decay scales the field by 1 + r") {
    ProblemSpec spec = scheme_spec(8, 0.0, 1.0, 0.0, -1.0, ZeroDiffusion{});
    Field f = make_field(spec.grid);
    f.values.setConstant(1.0);
    Field out = step_first_order(f, spec, 0.1);
    CHECK((interior(out, spec.grid) - 0.9).abs().maxCoeff() <= 1e-15);
  }

  SUBCASE("upwind advection halves a unit jump at half courant") {
    const int n = 16;
    ProblemSpec spec = scheme_spec(n, 0.0, 1.0, 1.0, 0.0, ZeroDiffusion{});
    Field f = make_field(spec.grid);
    interior(f, spec.grid)(8) = 1.0;
    apply_bc(f, spec);
    Field out = step_first_order(f, spec, 0.5 * spec.grid.dx);
    for (int i = 0; i < n; ++i) {
      const double expect = (i == 8 || i == 9) ? 0.5 : 0.0;
      CHECK(interior(out, spec.grid)(i) == doctest::Approx(expect).epsilon(1e-15));
    }
  }

  SUBCASE("full update matches the explicit formula") {
    std::mt19937 rng(23);
    ProblemSpec spec = scheme_spec(12, 0.0, 1.0, 0.8, -0.5, ConstantDiffusion{0.03});
    Field f = random_field(spec, rng);
    const double dt = 0.002, dx = spec.grid.dx;
    Field out = step_first_order(f, spec, dt);
    for (int i = 0; i < 12; ++i) {
      const int p = i + Grid1D::n_ghost;
      const auto& q = f.values;
      const double expect = q(p) - dt * 0.8 * (q(p) - q(p - 1)) / dx +
                            dt * 0.03 * (q(p + 1) - 2.0 * q(p) + q(p - 1)) / (dx * dx) -
                            dt * 0.5 * q(p);
      CHECK(interior(out, spec.grid)(i) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("interface diffusion coefficients") {
  SUBCASE("constant model fills every interface") {
    ProblemSpec spec = scheme_spec(8, 0.0, 1.0, 1.0, 0.0, ConstantDiffusion{3.0});
    Field f = make_field(spec.grid);
    InterfaceCoeffs coeffs = interface_alpha(f, spec);
    CHECK(coeffs.alpha.size() == spec.grid.n_interfaces());
    CHECK((coeffs.alpha == 3.0).all());
    CHECK((coeffs.dt_alpha == 0.0).all());
  }

  SUBCASE("space-time model sampled where its time factor vanishes") {
    ProblemSpec spec = scheme_spec(
        8, 0.0, 2.0, 1.0, 0.0,
        SpaceTimeDiffusion{
            [](double x, double t) { return std::exp(x * (t - 1.0) * (t - 1.0)); }, {}});
    Field f = make_field(spec.grid, 1.0);
    InterfaceCoeffs coeffs = interface_alpha(f, spec);
    CHECK((coeffs.alpha - 1.0).abs().maxCoeff() <= 1e-15);
    CHECK((coeffs.dt_alpha == 0.0).all());
  }

  SUBCASE("space-time model with an analytic rate") {
    ProblemSpec spec = scheme_spec(
        8, 0.0, 2.0, 1.0, 0.0,
        SpaceTimeDiffusion{
            [](double x, double t) { return std::exp(x * (t - 1.0) * (t - 1.0)); },
            [](double x, double t) {
              return 2.0 * x * (t - 1.0) * std::exp(x * (t - 1.0) * (t - 1.0));
            }});
    Field f = make_field(spec.grid, 0.5);
    InterfaceCoeffs coeffs = interface_alpha(f, spec);
    for (int j = 0; j < spec.grid.n_interfaces(); ++j) {
      const double x = spec.grid.interface_padded(j);
      CHECK(coeffs.dt_alpha(j) ==
            doctest::Approx(-x * std::exp(0.25 * x)).epsilon(1e-15));
    }
  }

  SUBCASE("state-dependent model averages the two cell values") {
    ProblemSpec spec = scheme_spec(
        4, 0.0, 1.0, 1.0, 0.0,
        StateDependentDiffusion{[](double q) { return 1.0 / q; }});
    Field f = make_field(spec.grid);
    interior(f, spec.grid) << 1.0, 2.0, 1.0, 2.0;
    apply_bc(f, spec);
    InterfaceCoeffs coeffs = interface_alpha(f, spec);
    CHECK(coeffs.alpha(Grid1D::n_ghost) == doctest::Approx(0.75).epsilon(1e-15));
  }

  SUBCASE("backward difference against the previous level") {
    ProblemSpec spec = scheme_spec(
        4, 0.0, 1.0, 1.0, 0.0, StateDependentDiffusion{[](double q) { return q; }});
    Field f = make_field(spec.grid);
    interior(f, spec.grid) << 1.0, 2.0, 3.0, 4.0;
    apply_bc(f, spec);
    AlphaHistory prev;
    prev.cell_alpha = Eigen::ArrayXd::Zero(spec.grid.padded_size());
    prev.dt = 1.0;
    InterfaceCoeffs coeffs = interface_alpha(f, spec, &prev);
    CHECK(coeffs.dt_alpha(Grid1D::n_ghost) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(coeffs.alpha(Grid1D::n_ghost) == doctest::Approx(1.5).epsilon(1e-15));
  }

  SUBCASE("invalid history is rejected") {
    ProblemSpec spec = scheme_spec(4, 0.0, 1.0, 1.0, 0.0, ConstantDiffusion{1.0});
    Field f = make_field(spec.grid);
    AlphaHistory prev;
    prev.cell_alpha = Eigen::ArrayXd::Zero(spec.grid.padded_size());
    prev.dt = 0.0;
    CHECK_THROWS_AS(interface_alpha(f, spec, &prev), ConfigError);
    prev.dt = 0.1;
    prev.cell_alpha = Eigen::ArrayXd::Zero(3);
    CHECK_THROWS_AS(interface_alpha(f, spec, &prev), ConfigError);
  }

  SUBCASE("negative state-dependent alpha names the cell") {
    ProblemSpec spec = scheme_spec(
        6, 0.0, 1.0, 1.0, 0.0,
        StateDependentDiffusion{[](double q) { return 1.0 / q; }});
    Field f = make_field(spec.grid);
    interior(f, spec.grid) << 1.0, 1.0, -1.0, 1.0, 1.0, 1.0;
    apply_bc(f, spec);
    CHECK_THROWS_WITH_AS(interface_alpha(f, spec), doctest::Contains("cell 2"),
                         DomainError);
  }
}

TEST_CASE("step rejects bad configuration") {
  ProblemSpec spec = scheme_spec(8, 0.0, 1.0, 1.0, 0.0, ConstantDiffusion{0.01});
  Field f = make_field(spec.grid);
  f.values.setConstant(1.0);
  CHECK_THROWS_AS(step_ader(f, spec, 0.0), ConfigError);
  CHECK_THROWS_AS(step_ader(f, spec, -0.1), ConfigError);

  ProblemSpec st = scheme_spec(
      8, 0.0, 1.0, 1.0, 0.0,
      SpaceTimeDiffusion{[](double, double) { return 0.01; }, {}});
  CHECK_THROWS_AS(step_ader_stencil_constant_alpha(f, st, 0.01), ConfigError);

  ProblemSpec neg = scheme_spec(8, 0.0, 1.0, -1.0, 0.0, ZeroDiffusion{});
  CHECK_THROWS_AS(step_ader_stencil_constant_alpha(f, neg, 0.01), ConfigError);

  CHECK_THROWS_AS(step(f, spec, 0.01, SchemeKind::AderAdvectionReaction), ConfigError);
}

TEST_CASE("scheme names round-trip") {
  for (SchemeKind kind :
       {SchemeKind::AderGeneral, SchemeKind::AderConstantAlpha,
        SchemeKind::AderAdvectionReaction, SchemeKind::MusclHancock,
        SchemeKind::FirstOrder})
    CHECK(scheme_from_name(scheme_name(kind)) == kind);
  CHECK_THROWS_AS(scheme_from_name("bogus"), ConfigError);
}
