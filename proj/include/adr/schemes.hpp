#pragma once

#include <adr/field.hpp>

namespace adr {

// Dimensionless step numbers: c = lambda*dt/dx, d = alpha*dt/dx^2, r = beta*dt.
struct StepParams {
  double dt = 0.0;
  double c = 0.0;
  double d = 0.0;
  double r = 0.0;
};

enum class SchemeKind {
  AderGeneral,            // assembled flux/diffusion/source update, any diffusion model
  AderConstantAlpha,      // five-point (c,d,r) stencil; needs Zero or Constant alpha
  AderAdvectionReaction,  // same stencil with d = 0; needs Zero alpha
  MusclHancock,           // half-step boundary evolution + upwind flux, same volume terms
  FirstOrder,             // upwind advection + central diffusion + explicit reaction
};

// Diffusion coefficient and its time derivative at every padded interface
// (length grid.n_interfaces() = n_cells + 2*n_ghost - 1).
struct InterfaceCoeffs {
  Eigen::ArrayXd alpha;
  Eigen::ArrayXd dt_alpha;
};

// Previous-step data for the backward-difference d(alpha)/dt estimate.
struct AlphaHistory {
  Eigen::ArrayXd cell_alpha;  // per padded cell at the previous time level
  double dt = 0.0;            // time difference between the two levels
};

// alpha evaluated per padded cell at (f.time, current state).
// StateDependent alpha throws DomainError (naming the cell) on alpha < 0 or non-finite.
Eigen::ArrayXd cell_alpha(const Field& f, const ProblemSpec& spec);

// Interface values: SpaceTime alpha is sampled at (x_{j+1/2}, t); the other models
// average the two adjacent cell values. dt_alpha comes from the analytic derivative
// when provided, else the backward difference against prev, else zero.
InterfaceCoeffs interface_alpha(const Field& f, const ProblemSpec& spec,
                                const AlphaHistory* prev = nullptr);

// Centred slope of padded cell p. Valid for p in [1, padded-2].
inline double centred_slope(const Eigen::ArrayXd& q, int p, double dx) {
  return (q(p + 1) - q(p - 1)) / (2.0 * dx);
}

// Centred slope of every padded cell (index p; entries outside [1, padded-2] are zero).
Eigen::ArrayXd reconstruction_slopes(const Field& f, const ProblemSpec& spec);

// Slopes as seen by the advective flux: centred, except that under DirichletExact the
// first/last interior cell uses the one-sided difference toward the interior. The
// diffusion and source volume terms keep centred slopes throughout.
Eigen::ArrayXd flux_slopes(const Field& f, const ProblemSpec& spec);

// (Delta alpha Delta q)_p = [a_{p+1/2}(q_{p+1}-q_p) - a_{p-1/2}(q_p-q_{p-1})]/dx^2
// per padded cell; entries outside [1, padded-2] are zero.
Eigen::ArrayXd diffusion_operator(const Eigen::ArrayXd& q, const InterfaceCoeffs& coeffs,
                                  double dx);

// Upwind flux with half-step time expansion at padded interface j.
// lambda > 0 uses cell j's data, lambda < 0 mirrors with cell j+1, lambda == 0 gives 0.
// Valid for j in [1, padded-3].
double ader_flux(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                 const Eigen::ArrayXd& lap, int j, double lambda, double beta, double dt,
                 double dx);

// Interface diffusion flux G_j = [a_{j+1/2} + dt/2 * da_{j+1/2}] * B_j with B_j the
// half-step-evolved difference q_{j+1}-q_j; the cell term is (G_j - G_{j-1})/dx^2.
// Valid for j in [1, padded-3].
double interface_diffusion_flux(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                                const Eigen::ArrayXd& lap, const InterfaceCoeffs& coeffs,
                                int j, double lambda, double beta, double dt, double dx);

// Half-step diffusion volume term for padded cell p (interior only),
// built from the two adjacent interface fluxes.
double half_time_diffusion(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                           const Eigen::ArrayXd& lap, const InterfaceCoeffs& coeffs, int p,
                           double lambda, double beta, double dt, double dx);

// Half-step reaction volume term s_p = beta*[q_p + dt/2*(-lambda*D_p + lap_p + beta*q_p)].
double numerical_source(const Eigen::ArrayXd& q, const Eigen::ArrayXd& slopes,
                        const Eigen::ArrayXd& lap, int p, double lambda, double beta,
                        double dt);

// One update of the dimensionless five-point stencil on a padded array; returns the
// interior cells only. Scalar-generic so complex Fourier modes can be advanced too.
template <class Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> cdr_stencil_update(
    const Eigen::ArrayBase<Derived>& q_padded, int n_ghost, double c, double d, double r) {
  using Arr = Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1>;
  const int n = static_cast<int>(q_padded.size()) - 2 * n_ghost;
  const int g = n_ghost;
  // the stencil reaches two cells either side
  const Arr qm2 = q_padded.segment(g - 2, n);
  const Arr qm1 = q_padded.segment(g - 1, n);
  const Arr q0 = q_padded.segment(g, n);
  const Arr qp1 = q_padded.segment(g + 1, n);
  const Arr qp2 = q_padded.segment(g + 2, n);

  Arr out =
      q0 -
      c * ((2.0 + r) / 2.0 * (q0 - qm1) + (2.0 - 2.0 * c + r) / 8.0 * (qp1 - q0 - qm1 + qm2) +
           d / 2.0 * (qp1 - 3.0 * q0 + 3.0 * qm1 - qm2)) +
      d * ((qp1 - 2.0 * q0 + qm1) - c / 4.0 * (qp2 - 2.0 * qp1 + 2.0 * qm1 - qm2) +
           d / 2.0 * (qp2 - 4.0 * qp1 + 6.0 * q0 - 4.0 * qm1 + qm2) +
           r / 2.0 * (qp1 - 2.0 * q0 + qm1)) +
      r * (q0 - c / 4.0 * (qp1 - qm1) + d / 2.0 * (qp1 - 2.0 * q0 + qm1) + r / 2.0 * q0);
  return out;
}

// Full steps: advance the field by dt, refresh ghosts at the new time, check finiteness.
Field step_ader(const Field& f, const ProblemSpec& spec, double dt,
                const AlphaHistory* prev = nullptr);
Field step_ader_stencil_constant_alpha(const Field& f, const ProblemSpec& spec, double dt);
Field step_muscl_hancock(const Field& f, const ProblemSpec& spec, double dt,
                         const AlphaHistory* prev = nullptr);
Field step_first_order(const Field& f, const ProblemSpec& spec, double dt);

Field step(const Field& f, const ProblemSpec& spec, double dt, SchemeKind kind,
           const AlphaHistory* prev = nullptr);

const char* scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);  // throws ConfigError

}  // namespace adr
