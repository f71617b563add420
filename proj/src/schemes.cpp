#include <adr/schemes.hpp>

#include <cmath>
#include <sstream>
#include <variant>

namespace adr {

namespace {

void check_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("step: dt must be positive");
}

[[noreturn]] void bad_alpha(const Grid1D& g, int p, double q, double a, double t) {
  const int i = p - Grid1D::n_ghost;
  std::ostringstream msg;
  msg << "alpha(q) = " << a << " for q = " << q << " in ";
  if (i < 0 || i >= g.n_cells)
    msg << "ghost cell (padded index " << p << ")";
  else
    msg << "cell " << i;
  msg << " at t = " << t << "; alpha must be finite and >= 0";
  throw DomainError(msg.str());
}

}  // namespace

Eigen::ArrayXd cell_alpha(const Field& f, const ProblemSpec& spec) {
  const Grid1D& g = spec.grid;
  const int P = g.padded_size();
  Eigen::ArrayXd a = Eigen::ArrayXd::Zero(P);
  if (std::holds_alternative<ZeroDiffusion>(spec.diffusion)) return a;
  if (const auto* c = std::get_if<ConstantDiffusion>(&spec.diffusion)) {
    a.setConstant(c->alpha);
    return a;
  }
  if (const auto* st = std::get_if<SpaceTimeDiffusion>(&spec.diffusion)) {
    for (int p = 0; p < P; ++p) a(p) = st->alpha(g.center_padded(p), f.time);
    return a;
  }
  const auto& sd = std::get<StateDependentDiffusion>(spec.diffusion);
  for (int p = 0; p < P; ++p) {
    const double v = sd.alpha(f.values(p));
    if (!std::isfinite(v) || v < 0.0) bad_alpha(g, p, f.values(p), v, f.time);
    a(p) = v;
  }
  return a;
}

InterfaceCoeffs interface_alpha(const Field& f, const ProblemSpec& spec,
                                const AlphaHistory* prev) {
  const Grid1D& g = spec.grid;
  const int J = g.n_interfaces();
  InterfaceCoeffs coeffs;
  coeffs.alpha = Eigen::ArrayXd::Zero(J);
  coeffs.dt_alpha = Eigen::ArrayXd::Zero(J);
  if (prev != nullptr) {
    if (!(prev->dt > 0.0)) throw ConfigError("interface_alpha: previous dt must be positive");
    if (prev->cell_alpha.size() != g.padded_size())
      throw ConfigError("interface_alpha: previous alpha does not match grid");
  }

  if (std::holds_alternative<ZeroDiffusion>(spec.diffusion)) return coeffs;

  if (const auto* c = std::get_if<ConstantDiffusion>(&spec.diffusion)) {
    coeffs.alpha.setConstant(c->alpha);
    return coeffs;
  }

  if (const auto* st = std::get_if<SpaceTimeDiffusion>(&spec.diffusion)) {
    for (int j = 0; j < J; ++j) coeffs.alpha(j) = st->alpha(g.interface_padded(j), f.time);
    if (st->dt_alpha) {
      for (int j = 0; j < J; ++j)
        coeffs.dt_alpha(j) = st->dt_alpha(g.interface_padded(j), f.time);
    } else if (prev != nullptr) {
      const Eigen::ArrayXd ca = cell_alpha(f, spec);
      const Eigen::ArrayXd rate = (ca - prev->cell_alpha) / prev->dt;
      coeffs.dt_alpha = 0.5 * (rate.segment(0, J) + rate.segment(1, J));
    }
    return coeffs;
  }

  // state-dependent: interface value is the mean of the adjacent cell values
  const Eigen::ArrayXd ca = cell_alpha(f, spec);
  coeffs.alpha = 0.5 * (ca.segment(0, J) + ca.segment(1, J));
  if (prev != nullptr) {
    const Eigen::ArrayXd rate = (ca - prev->cell_alpha) / prev->dt;
    coeffs.dt_alpha = 0.5 * (rate.segment(0, J) + rate.segment(1, J));
  }
  return coeffs;
}

Eigen::ArrayXd reconstruction_slopes(const Field& f, const ProblemSpec& spec) {
  const Grid1D& g = spec.grid;
  const int P = g.padded_size();
  const auto& q = f.values;
  Eigen::ArrayXd s = Eigen::ArrayXd::Zero(P);
  s.segment(1, P - 2) = (q.segment(2, P - 2) - q.segment(0, P - 2)) / (2.0 * g.dx);
  return s;
}

Eigen::ArrayXd flux_slopes(const Field& f, const ProblemSpec& spec) {
  const Grid1D& g = spec.grid;
  Eigen::ArrayXd s = reconstruction_slopes(f, spec);
  if (spec.bc == BoundaryCondition::DirichletExact) {
    // one-sided toward the interior at the first/last interior cell
    const auto& q = f.values;
    const int first = Grid1D::n_ghost;
    const int last = Grid1D::n_ghost + g.n_cells - 1;
    s(first) = (q(first + 1) - q(first)) / g.dx;
    s(last) = (q(last) - q(last - 1)) / g.dx;
  }
  return s;
}

Eigen::ArrayXd diffusion_operator(const Eigen::ArrayXd& q, const InterfaceCoeffs& coeffs,
                                  double dx) {
  const int P = static_cast<int>(q.size());
  Eigen::ArrayXd lap = Eigen::ArrayXd::Zero(P);
  // cell p's faces are interfaces p (right) and p-1 (left)
  lap.segment(1, P - 2) =
      (coeffs.alpha.segment(1, P - 2) * (q.segment(2, P - 2) - q.segment(1, P - 2)) -
       coeffs.alpha.segment(0, P - 2) * (q.segment(1, P - 2) - q.segment(0, P - 2))) /
      (dx * dx);
  return lap;
}

double ader_flux(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                 const Eigen::ArrayXd& lap, int j, double lambda, double beta, double dt,
                 double dx) {
  if (lambda == 0.0) return 0.0;
  if (lambda > 0.0) {
    const double qe = q(j) + 0.5 * dx * slopes(j);
    return lambda * (qe + 0.5 * dt * (-lambda * slopes(j) + beta * qe + lap(j)));
  }
  const double qe = q(j + 1) - 0.5 * dx * slopes(j + 1);
  return lambda * (qe + 0.5 * dt * (-lambda * slopes(j + 1) + beta * qe + lap(j + 1)));
}

double interface_diffusion_flux(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                                const Eigen::ArrayXd& lap, const InterfaceCoeffs& coeffs,
                                int j, double lambda, double beta, double dt, double dx) {
  (void)dx;
  const double dq = q(j + 1) - q(j);
  const double b =
      dq + 0.5 * dt * (-lambda * (slopes(j + 1) - slopes(j)) + (lap(j + 1) - lap(j)) + beta * dq);
  return (coeffs.alpha(j) + 0.5 * dt * coeffs.dt_alpha(j)) * b;
}

double half_time_diffusion(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                           const Eigen::ArrayXd& lap, const InterfaceCoeffs& coeffs, int p,
                           double lambda, double beta, double dt, double dx) {
  const double gr = interface_diffusion_flux(q, slopes, lap, coeffs, p, lambda, beta, dt, dx);
  const double gl = interface_diffusion_flux(q, slopes, lap, coeffs, p - 1, lambda, beta, dt, dx);
  return (gr - gl) / (dx * dx);
}

double numerical_source(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                        const Eigen::ArrayXd& lap, int p, double lambda, double beta,
                        double dt) {
  return beta * (q(p) + 0.5 * dt * (-lambda * slopes(p) + lap(p) + beta * q(p)));
}

namespace {

// Shared corrector: conservative flux/diffusion differences, then the source.
// F and G must hold interface values for j in [1, P-3].
Field assemble_update(const Field& f, const ProblemSpec& spec, double dt,
                      const Eigen::ArrayXd& F, const Eigen::ArrayXd& G,
                      const Eigen::ArrayXd& slopes, const Eigen::ArrayXd& lap,
                      const char* where) {
  const Grid1D& g = spec.grid;
  const int gh = Grid1D::n_ghost;
  const auto& q = f.values;
  Field out = make_field(g, f.time + dt);
  const double adv = dt / g.dx;
  const double dif = dt / (g.dx * g.dx);
  for (int i = 0; i < g.n_cells; ++i) {
    const int p = i + gh;
    double v = q(p) - adv * (F(p) - F(p - 1));
    v += dif * (G(p) - G(p - 1));
    v += dt * numerical_source(q, slopes, lap, p, spec.lambda, spec.beta, dt);
    out.values(p) = v;
  }
  apply_bc(out, spec);
  require_finite(out, g, where);
  return out;
}

}  // namespace

Field step_ader(const Field& f, const ProblemSpec& spec, double dt, const AlphaHistory* prev) {
  check_dt(dt);
  const Grid1D& g = spec.grid;
  const int P = g.padded_size();
  const auto& q = f.values;
  const InterfaceCoeffs coeffs = interface_alpha(f, spec, prev);
  const Eigen::ArrayXd slopes = reconstruction_slopes(f, spec);
  const Eigen::ArrayXd fslopes = flux_slopes(f, spec);
  const Eigen::ArrayXd lap = diffusion_operator(q, coeffs, g.dx);
  Eigen::ArrayXd F = Eigen::ArrayXd::Zero(g.n_interfaces());
  Eigen::ArrayXd G = Eigen::ArrayXd::Zero(g.n_interfaces());
  for (int j = 1; j + 2 < P; ++j) {
    F(j) = ader_flux(q, fslopes, lap, j, spec.lambda, spec.beta, dt, g.dx);
    G(j) = interface_diffusion_flux(q, slopes, lap, coeffs, j, spec.lambda, spec.beta, dt, g.dx);
  }
  return assemble_update(f, spec, dt, F, G, slopes, lap, "step_ader");
}

Field step_ader_stencil_constant_alpha(const Field& f, const ProblemSpec& spec, double dt) {
  check_dt(dt);
  double alpha = 0.0;
  if (const auto* c = std::get_if<ConstantDiffusion>(&spec.diffusion)) {
    alpha = c->alpha;
  } else if (!std::holds_alternative<ZeroDiffusion>(spec.diffusion)) {
    throw ConfigError("stencil scheme needs Zero or Constant diffusion");
  }
  if (spec.lambda < 0.0)
    throw ConfigError("stencil scheme is upwind-biased for lambda >= 0; use the assembled scheme");
  const Grid1D& g = spec.grid;
  const double c = spec.lambda * dt / g.dx;
  const double d = alpha * dt / (g.dx * g.dx);
  const double r = spec.beta * dt;
  Field out = make_field(g, f.time + dt);
  interior(out, g) = cdr_stencil_update(f.values, Grid1D::n_ghost, c, d, r);
  apply_bc(out, spec);
  require_finite(out, g, "step_ader_stencil_constant_alpha");
  return out;
}

Field step_muscl_hancock(const Field& f, const ProblemSpec& spec, double dt,
                         const AlphaHistory* prev) {
  check_dt(dt);
  const Grid1D& g = spec.grid;
  const int P = g.padded_size();
  const auto& q = f.values;
  const InterfaceCoeffs coeffs = interface_alpha(f, spec, prev);
  const Eigen::ArrayXd slopes = reconstruction_slopes(f, spec);
  const Eigen::ArrayXd fslopes = flux_slopes(f, spec);
  const Eigen::ArrayXd lap = diffusion_operator(q, coeffs, g.dx);

  // Boundary-extrapolated values evolved half a step; the diffusion and reaction
  // contributions enter the predictor from cell-average data. The predictor only
  // feeds the flux, so it carries the flux-side slopes.
  Eigen::ArrayXd qlbar = Eigen::ArrayXd::Zero(P);
  Eigen::ArrayXd qrbar = Eigen::ArrayXd::Zero(P);
  for (int p = 1; p + 1 < P; ++p) {
    const double ql = q(p) - 0.5 * g.dx * fslopes(p);
    const double qr = q(p) + 0.5 * g.dx * fslopes(p);
    const double flux_diff = spec.lambda * (qr - ql) / g.dx;
    qrbar(p) = qr - 0.5 * dt * (flux_diff - lap(p) - spec.beta * qr);
    qlbar(p) = ql - 0.5 * dt * (flux_diff - lap(p) - spec.beta * ql);
  }

  Eigen::ArrayXd F = Eigen::ArrayXd::Zero(g.n_interfaces());
  Eigen::ArrayXd G = Eigen::ArrayXd::Zero(g.n_interfaces());
  for (int j = 1; j + 2 < P; ++j) {
    if (spec.lambda > 0.0)
      F(j) = spec.lambda * qrbar(j);
    else if (spec.lambda < 0.0)
      F(j) = spec.lambda * qlbar(j + 1);
    G(j) = interface_diffusion_flux(q, slopes, lap, coeffs, j, spec.lambda, spec.beta, dt, g.dx);
  }
  return assemble_update(f, spec, dt, F, G, slopes, lap, "step_muscl_hancock");
}

Field step_first_order(const Field& f, const ProblemSpec& spec, double dt) {
  check_dt(dt);
  const Grid1D& g = spec.grid;
  const int gh = Grid1D::n_ghost;
  const auto& q = f.values;
  const InterfaceCoeffs coeffs = interface_alpha(f, spec, nullptr);
  const Eigen::ArrayXd lap = diffusion_operator(q, coeffs, g.dx);
  Field out = make_field(g, f.time + dt);
  for (int i = 0; i < g.n_cells; ++i) {
    const int p = i + gh;
    double adv = 0.0;
    if (spec.lambda > 0.0)
      adv = spec.lambda * (q(p) - q(p - 1)) / g.dx;
    else if (spec.lambda < 0.0)
      adv = spec.lambda * (q(p + 1) - q(p)) / g.dx;
    double v = q(p) - dt * adv;
    v += dt * lap(p);
    v += dt * spec.beta * q(p);
    out.values(p) = v;
  }
  apply_bc(out, spec);
  require_finite(out, g, "step_first_order");
  return out;
}

Field step(const Field& f, const ProblemSpec& spec, double dt, SchemeKind kind,
           const AlphaHistory* prev) {
  switch (kind) {
    case SchemeKind::AderGeneral:
      return step_ader(f, spec, dt, prev);
    case SchemeKind::AderConstantAlpha:
      return step_ader_stencil_constant_alpha(f, spec, dt);
    case SchemeKind::AderAdvectionReaction:
      if (!std::holds_alternative<ZeroDiffusion>(spec.diffusion))
        throw ConfigError("advection-reaction scheme needs Zero diffusion");
      return step_ader_stencil_constant_alpha(f, spec, dt);
    case SchemeKind::MusclHancock:
      return step_muscl_hancock(f, spec, dt, prev);
    case SchemeKind::FirstOrder:
      return step_first_order(f, spec, dt);
  }
  throw ConfigError("unknown scheme");
}

const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::AderGeneral: return "ader";
    case SchemeKind::AderConstantAlpha: return "ader-const";
    case SchemeKind::AderAdvectionReaction: return "ader-ar";
    case SchemeKind::MusclHancock: return "muscl";
    case SchemeKind::FirstOrder: return "first-order";
  }
  return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "ader") return SchemeKind::AderGeneral;
  if (name == "ader-const") return SchemeKind::AderConstantAlpha;
  if (name == "ader-ar") return SchemeKind::AderAdvectionReaction;
  if (name == "muscl") return SchemeKind::MusclHancock;
  if (name == "first-order") return SchemeKind::FirstOrder;
  throw ConfigError("unknown scheme '" + name +
                    "' (expected ader, ader-const, ader-ar, muscl or first-order)");
}

}  // namespace adr
