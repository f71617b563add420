#include <adr/stability.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include <adr/io.hpp>
#include <adr/parallel.hpp>

namespace adr {

using std::complex;
using json = nlohmann::ordered_json;

complex<double> amplification_closed_form(double theta, double c, double d, double r) {
  const complex<double> I(0.0, 1.0);
  const double s1 = std::sin(theta), c1 = std::cos(theta);
  const double s2 = std::sin(2.0 * theta), c2 = std::cos(2.0 * theta);

  // Fourier symbols of the stencil's difference blocks:
  //   1 - E^-1, E - 1 - E^-1 + E^-2, E - 3 + 3E^-1 - E^-2 (advective block)
  const complex<double> adv1 = (1.0 - c1) + I * s1;
  const complex<double> adv2 = (c2 - 1.0) + I * (2.0 * s1 - s2);
  const complex<double> adv3 = (4.0 * c1 - 3.0 - c2) + I * (s2 - 2.0 * s1);
  //   E - 2 + E^-1, E^2 - 2E + 2E^-1 - E^-2, E^2 - 4E + 6 - 4E^-1 + E^-2
  const double dif1 = 2.0 * c1 - 2.0;
  const complex<double> dif2 = I * (2.0 * s2 - 4.0 * s1);
  const double dif3 = 2.0 * c2 - 8.0 * c1 + 6.0;

  const complex<double> a =
      1.0 -
      c * ((2.0 + r) / 2.0 * adv1 + (2.0 - 2.0 * c + r) / 8.0 * adv2 + d / 2.0 * adv3) +
      d * (dif1 - c / 4.0 * dif2 + d / 2.0 * dif3 + r / 2.0 * dif1) +
      r * (1.0 - c / 2.0 * I * s1 + d * (c1 - 1.0) + r / 2.0);
  return a;
}

complex<double> amplification_empirical(double theta, double c, double d, double r,
                                        int n_cells) {
  if (n_cells < 8) throw ConfigError("amplification_empirical: need at least 8 cells");
  const double k = theta * n_cells / (2.0 * std::numbers::pi);
  if (std::abs(k - std::round(k)) > 1e-9)
    throw ConfigError("amplification_empirical: theta must be 2*pi*k/n_cells");

  const int gh = Grid1D::n_ghost;
  const int P = n_cells + 2 * gh;
  Eigen::ArrayXd u(P), v(P);
  for (int i = 0; i < n_cells; ++i) {
    u(gh + i) = std::cos(theta * i);
    v(gh + i) = std::sin(theta * i);
  }
  auto wrap = [&](Eigen::ArrayXd& q) {
    for (int m = 0; m < gh; ++m) {
      q(m) = q(n_cells + m);
      q(gh + n_cells + m) = q(gh + m);
    }
  };
  wrap(u);
  wrap(v);

  const Eigen::ArrayXd un = cdr_stencil_update(u, gh, c, d, r);
  const Eigen::ArrayXd vn = cdr_stencil_update(v, gh, c, d, r);

  // (u' + i v')_j = A * e^{i theta j}; divide the mode back out cell by cell
  complex<double> a0;
  double worst = 0.0;
  for (int i = 0; i < n_cells; ++i) {
    const complex<double> mode(std::cos(theta * i), std::sin(theta * i));
    const complex<double> ai = complex<double>(un(i), vn(i)) * std::conj(mode);
    if (i == 0)
      a0 = ai;
    else
      worst = std::max(worst, std::abs(ai - a0));
  }
  if (worst > 1e-12)
    throw NumericalError("amplification_empirical: multiplier varies across cells by " +
                         fmt17(worst));
  return a0;
}

AmplificationSample sample_amplification(double theta, double c, double d, double r) {
  AmplificationSample s;
  s.theta = theta;
  s.c = c;
  s.d = d;
  s.r = r;
  s.a = amplification_closed_form(theta, c, d, r);
  s.norm2 = std::norm(s.a);
  return s;
}

MThetaResult m_theta_argmax(double c, double d, double r, int n_theta) {
  if (n_theta < 2) throw ConfigError("m_theta: need at least 2 theta samples");
  MThetaResult best;
  best.max_norm = -1.0;
  const double pi = std::numbers::pi;
  for (int k = 0; k < n_theta; ++k) {
    const double theta = -pi + 2.0 * pi * k / (n_theta - 1.0);
    const double norm = std::abs(amplification_closed_form(theta, c, d, r));
    if (norm > best.max_norm) {
      best.max_norm = norm;
      best.theta_argmax = theta;
    }
  }
  return best;
}

double m_theta(double c, double d, double r, int n_theta) {
  return m_theta_argmax(c, d, r, n_theta).max_norm;
}

namespace {

// 0..hi (or hi..0) inclusive with n samples; degenerate axes collapse to one sample.
std::vector<double> axis_values(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("check_orthotope: resolution must be >= 1");
  if (n == 1 || lo == hi) return {lo};
  std::vector<double> vals(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) vals[static_cast<size_t>(k)] = lo + (hi - lo) * k / (n - 1.0);
  return vals;
}

}  // namespace

StabilityReport check_orthotope(const Orthotope& box, const OrthotopeResolution& res,
                                int n_theta) {
  if (box.c_max < 0.0 || box.d_max < 0.0 || box.r_min > 0.0)
    throw ConfigError("check_orthotope: box must satisfy c_max >= 0, d_max >= 0, r_min <= 0");
  const std::vector<double> cs = axis_values(0.0, box.c_max, res.n_c);
  const std::vector<double> ds = axis_values(0.0, box.d_max, res.n_d);
  const std::vector<double> rs = axis_values(box.r_min, 0.0, res.n_r);

  struct Best {
    double norm = -1.0;
    long index = -1;
    double theta = 0.0;
  };
  std::vector<Best> per_r(rs.size());
  parallel_for(static_cast<int>(rs.size()), [&](int ir) {
    Best b;
    for (size_t id = 0; id < ds.size(); ++id) {
      for (size_t ic = 0; ic < cs.size(); ++ic) {
        const MThetaResult m = m_theta_argmax(cs[ic], ds[id], rs[static_cast<size_t>(ir)], n_theta);
        const long lin = (static_cast<long>(ir) * static_cast<long>(ds.size()) +
                          static_cast<long>(id)) *
                             static_cast<long>(cs.size()) +
                         static_cast<long>(ic);
        if (m.max_norm > b.norm) {
          b.norm = m.max_norm;
          b.index = lin;
          b.theta = m.theta_argmax;
        }
      }
    }
    per_r[static_cast<size_t>(ir)] = b;
  });

  // merge in r order; ties keep the earliest linear index, matching a serial sweep
  Best best;
  for (const Best& b : per_r)
    if (b.norm > best.norm) best = b;

  StabilityReport rep;
  rep.box = box;
  rep.max_norm = best.norm;
  const long nc = static_cast<long>(cs.size());
  const long nd = static_cast<long>(ds.size());
  rep.c_argmax = cs[static_cast<size_t>(best.index % nc)];
  rep.d_argmax = ds[static_cast<size_t>((best.index / nc) % nd)];
  rep.r_argmax = rs[static_cast<size_t>(best.index / (nc * nd))];
  rep.theta_argmax = best.theta;
  rep.stable = rep.max_norm <= 1.0 + 1e-12;
  return rep;
}

std::string stability_report_json(const StabilityReport& rep) {
  json j;
  j["c_max"] = rep.box.c_max;
  j["d_max"] = rep.box.d_max;
  j["r_min"] = rep.box.r_min;
  j["max_norm"] = rep.max_norm;
  j["argmax"] = {{"c", rep.c_argmax}, {"d", rep.d_argmax}, {"r", rep.r_argmax},
                 {"theta", rep.theta_argmax}};
  j["stable"] = rep.stable;
  return j.dump(2) + "\n";
}

std::vector<RegionSample> sample_region(const AxisRange& c_range, const AxisRange& d_range,
                                        const AxisRange& r_range, int n_theta) {
  if (c_range.n < 1 || d_range.n < 1 || r_range.n < 1)
    throw ConfigError("sample_region: each axis needs at least one sample");
  const long total = static_cast<long>(c_range.n) * d_range.n * r_range.n;
  std::vector<RegionSample> samples(static_cast<size_t>(total));
  // row order: r outermost, then d, then c
  parallel_for(r_range.n, [&](int kr) {
    const double r = r_range.value(kr);
    long idx = static_cast<long>(kr) * d_range.n * c_range.n;
    for (int kd = 0; kd < d_range.n; ++kd) {
      const double d = d_range.value(kd);
      for (int kc = 0; kc < c_range.n; ++kc, ++idx) {
        const double c = c_range.value(kc);
        samples[static_cast<size_t>(idx)] = {c, d, r, m_theta(c, d, r, n_theta)};
      }
    }
  });
  return samples;
}

std::string region_csv(const std::vector<RegionSample>& samples) {
  std::string out = "c,d,r,m_theta\n";
  for (const RegionSample& s : samples) {
    out += fmt17(s.c);
    out += ',';
    out += fmt17(s.d);
    out += ',';
    out += fmt17(s.r);
    out += ',';
    out += fmt17(s.m);
    out += '\n';
  }
  return out;
}

StepParams coupled_parameters(double lambda, double beta, double alpha, double dx, double dt) {
  if (!(dx > 0.0)) throw ConfigError("coupled_parameters: dx must be positive");
  if (!(dt > 0.0)) throw ConfigError("coupled_parameters: dt must be positive");
  StepParams p;
  p.dt = dt;
  p.c = lambda * dt / dx;
  p.d = alpha * dt / (dx * dx);
  p.r = beta * dt;
  return p;
}

}  // namespace adr
