#include <adr/convergence.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include <adr/io.hpp>

namespace adr {

double order_between(double err_coarse, double err_fine, double ratio) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0))
    throw ConfigError("order_between: errors must be positive");
  if (!(ratio > 1.0)) throw ConfigError("order_between: ratio must exceed 1");
  return std::log(err_coarse / err_fine) / std::log(ratio);
}

Study run_study(const StudyConfig& config) {
  if (config.meshes.empty()) throw ConfigError("run_study: mesh list is empty");
  for (std::size_t k = 1; k < config.meshes.size(); ++k)
    if (config.meshes[k] <= config.meshes[k - 1])
      throw ConfigError("run_study: meshes must be strictly increasing");

  const Benchmark bench = make_benchmark(config.benchmark, config.decayed_step);
  SolveOptions opts;
  opts.dt_scale = config.dt_scale;

  Study study;
  study.config = config;

  const bool have_exact = static_cast<bool>(bench.exact);
  const NormMode mode = config.mode;
  Field ref_final;
  Grid1D ref_grid;
  ReferenceHistory ref_hist;
  if (!have_exact) {
    if (config.reference_label <= config.meshes.back())
      throw ConfigError("run_study: reference mesh must be finer than every study mesh");
    if (mode == NormMode::SupOverTime) {
      ref_hist = reference_history(bench, config.reference_label, config.scheme, opts);
    } else {
      SolveResult ref = reference_solution(bench, config.reference_label, config.scheme, opts);
      ref_final = std::move(ref.final);
      ref_grid = ref.grid;
    }
  }
  const double time_tol = 1e-9 * std::max(1.0, bench.t_end);

  for (int label : config.meshes) {
    MeshResult row;
    row.label = label;
    try {
      if (have_exact && mode == NormMode::SupOverTime) {
        ErrorAccumulator acc;
        SolveResult sol = solve_benchmark(
            bench, label, config.scheme,
            [&](const Field& f, const Grid1D& g) { acc.observe(f, g, bench.exact); }, opts);
        row.err = acc.err;
        row.rel = {acc.err.l1 / acc.ref.l1, acc.err.l2 / acc.ref.l2,
                   acc.err.linf / acc.ref.linf};
        row.c = sol.dts.c;
        row.d = sol.dts.d;
        row.r = sol.dts.r;
      } else if (have_exact) {
        SolveResult sol = solve_benchmark(bench, label, config.scheme, {}, opts);
        ErrorAccumulator acc;
        acc.observe(sol.final, sol.grid, bench.exact);
        row.err = acc.err;
        row.rel = {acc.err.l1 / acc.ref.l1, acc.err.l2 / acc.ref.l2,
                   acc.err.linf / acc.ref.linf};
        row.c = sol.dts.c;
        row.d = sol.dts.d;
        row.r = sol.dts.r;
      } else if (mode == NormMode::SupOverTime) {
        ErrorAccumulator acc;
        SolveResult sol = solve_benchmark(
            bench, label, config.scheme,
            [&](const Field& f, const Grid1D& g) {
              acc.observe(f, ref_hist.at(f.time, g, time_tol), g);
            },
            opts);
        row.err = acc.err;
        row.rel = {acc.err.l1 / acc.ref.l1, acc.err.l2 / acc.ref.l2,
                   acc.err.linf / acc.ref.linf};
        row.c = sol.dts.c;
        row.d = sol.dts.d;
        row.r = sol.dts.r;
      } else {
        SolveResult sol = solve_benchmark(bench, label, config.scheme, {}, opts);
        const Field restricted = restrict_to(ref_final, ref_grid, sol.grid);
        row.err = field_error_norms(sol.final, restricted, sol.grid);
        const NormTriple rn = spatial_norms(restricted, sol.grid);
        row.rel = {row.err.l1 / rn.l1, row.err.l2 / rn.l2, row.err.linf / rn.linf};
        row.c = sol.dts.c;
        row.d = sol.dts.d;
        row.r = sol.dts.r;
      }
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << "mesh " << label << " cells: " << e.what();
      throw NonFiniteError(msg.str());
    }
    if (!study.rows.empty()) {
      const MeshResult& prev = study.rows.back();
      const double ratio = static_cast<double>(label) / prev.label;
      row.order_l1 = order_between(prev.err.l1, row.err.l1, ratio);
      row.order_l2 = order_between(prev.err.l2, row.err.l2, ratio);
      row.order_linf = order_between(prev.err.linf, row.err.linf, ratio);
    }
    study.rows.push_back(std::move(row));
  }

  if (study.rows.size() < 2) {
    study.worst_order_deviation_from_2 = std::numeric_limits<double>::quiet_NaN();
  } else {
    const MeshResult& last = study.rows.back();
    study.worst_order_deviation_from_2 =
        std::max({std::abs(*last.order_l1 - 2.0), std::abs(*last.order_l2 - 2.0),
                  std::abs(*last.order_linf - 2.0)});
  }
  return study;
}

std::string study_csv(const Study& study) {
  std::ostringstream out;
  out << "cells,err_l1,order_l1,err_l2,order_l2,err_linf,order_linf,c,d,r\n";
  for (const MeshResult& row : study.rows) {
    out << row.label << ',' << fmt17(row.err.l1) << ','
        << (row.order_l1 ? fmt17(*row.order_l1) : "") << ',' << fmt17(row.err.l2) << ','
        << (row.order_l2 ? fmt17(*row.order_l2) : "") << ',' << fmt17(row.err.linf) << ','
        << (row.order_linf ? fmt17(*row.order_linf) : "") << ',' << fmt17(row.c) << ','
        << fmt17(row.d) << ',' << fmt17(row.r) << '\n';
  }
  return out.str();
}

std::string study_summary_json(const Study& study) {
  nlohmann::ordered_json j;
  j["benchmark"] = study.config.benchmark;
  j["scheme"] = scheme_name(study.config.scheme);
  j["meshes"] = nlohmann::ordered_json::array();
  for (const MeshResult& row : study.rows) j["meshes"].push_back(row.label);
  j["worst_order_deviation_from_2"] = study.worst_order_deviation_from_2;
  return j.dump(2) + "\n";
}

}  // namespace adr
