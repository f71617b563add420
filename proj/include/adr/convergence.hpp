#pragma once

#include <optional>

#include <adr/benchmarks.hpp>

namespace adr {

enum class NormMode { SupOverTime, FinalTime };

struct StudyConfig {
  std::string benchmark;
  SchemeKind scheme = SchemeKind::AderGeneral;
  std::vector<int> meshes = {8, 16, 32, 64, 128, 256, 512};
  NormMode mode = NormMode::SupOverTime;
  int reference_label = 512;  // used when the benchmark has no exact solution
  bool decayed_step = false;              // test1_2 variant
  double dt_scale = 1.0;
};

struct MeshResult {
  int label = 0;
  NormTriple err;
  NormTriple rel;
  std::optional<double> order_l1, order_l2, order_linf;
  double c = 0.0, d = 0.0, r = 0.0;
};

struct Study {
  StudyConfig config;
  std::vector<MeshResult> rows;
  // max |order - 2| over the finest row's three order entries (NaN with < 2 meshes)
  double worst_order_deviation_from_2 = 0.0;
};

// order = log(err_coarse/err_fine)/log(ratio); requires positive errors and ratio > 1.
double order_between(double err_coarse, double err_fine, double ratio = 2.0);

// Runs every mesh (meshes must be increasing), computes orders between consecutive
// rows from the dx ratio. A non-finite value in any run aborts with NonFiniteError
// naming the mesh.
Study run_study(const StudyConfig& config);

// CSV schema: cells,err_l1,order_l1,err_l2,order_l2,err_linf,order_linf,c,d,r
// (order fields empty on the first row), 17 significant digits.
std::string study_csv(const Study& study);
std::string study_summary_json(const Study& study);

}  // namespace adr
