#pragma once

#include <complex>
#include <string>
#include <vector>

#include <adr/schemes.hpp>

namespace adr {

// One evaluation of the amplification factor.
struct AmplificationSample {
  double theta = 0.0;
  double c = 0.0, d = 0.0, r = 0.0;
  std::complex<double> a;
  double norm2 = 0.0;  // |a|^2
};

// Parameter box [0,c_max] x [0,d_max] x [r_min,0]; degenerate edges allowed.
struct Orthotope {
  double c_max = 0.0;
  double d_max = 0.0;
  double r_min = 0.0;
};

// Amplification factor of the five-point (c,d,r) stencil for the Fourier mode
// exp(I*theta*i). Closed form.
std::complex<double> amplification_closed_form(double theta, double c, double d, double r);

// Same multiplier measured by advancing cos/sin mode fields one stencil step on a
// periodic ring of n_cells (theta must be 2*pi*k/n_cells). Asserts the per-cell
// multiplier is uniform to 1e-12.
std::complex<double> amplification_empirical(double theta, double c, double d, double r,
                                             int n_cells = 64);

AmplificationSample sample_amplification(double theta, double c, double d, double r);

// max_theta |A| over a uniform closed grid on [-pi, pi].
double m_theta(double c, double d, double r, int n_theta = 721);

struct MThetaResult {
  double max_norm = 0.0;
  double theta_argmax = 0.0;
};
MThetaResult m_theta_argmax(double c, double d, double r, int n_theta = 721);

struct OrthotopeResolution {
  int n_c = 21, n_d = 21, n_r = 21;
};

struct StabilityReport {
  Orthotope box;
  double max_norm = 0.0;
  double c_argmax = 0.0, d_argmax = 0.0, r_argmax = 0.0, theta_argmax = 0.0;
  bool stable = false;  // max_norm <= 1 + 1e-12
};

StabilityReport check_orthotope(const Orthotope& box, const OrthotopeResolution& res = {},
                                int n_theta = 721);

std::string stability_report_json(const StabilityReport& rep);

// Inclusive sweep lo..hi with n samples (n == 1 pins the value at lo, requiring lo == hi
// is not enforced so single-point "ranges" are allowed anywhere).
struct AxisRange {
  double lo = 0.0, hi = 0.0;
  int n = 1;
  double value(int k) const { return n < 2 ? lo : lo + (hi - lo) * k / (n - 1.0); }
};

struct RegionSample {
  double c = 0.0, d = 0.0, r = 0.0;
  double m = 0.0;
};

// Cartesian sweep; row order: r outermost, then d, then c.
std::vector<RegionSample> sample_region(const AxisRange& c_range, const AxisRange& d_range,
                                        const AxisRange& r_range, int n_theta = 721);

std::string region_csv(const std::vector<RegionSample>& samples);

// (c, d, r) realized by a concrete (lambda, beta, alpha, dx, dt) combination.
StepParams coupled_parameters(double lambda, double beta, double alpha, double dx, double dt);

}  // namespace adr
