#pragma once

#include "cloudsig/dimension.hpp"
#include "cloudsig/signature.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cloudsig::bench {

// Tables are labelled with the ridge parameter of the unnormalized system
// (alpha_label I + M) Lambda = m 1; the model stores alpha_label / m.
double model_alpha(double alpha_label, Eigen::Index m);

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const;
  void write_markdown(std::ostream& os) const;
};

std::string sci(double v, int digits = 3);

// Kernels used by the sector table. The regularized Laplace kernel uses
// r = 1e-5 there.
KernelSpec sector_gauss();
KernelSpec sector_laplace();

struct SectorCell {
  std::string kernel;
  double alpha_label = 0.0;
  int n = 0;
  // mean |kappa - 1| over the middle-quarter mask
  double error = 0.0;
  SolverPath path = SolverPath::SPDFactorization;
};

SectorCell sector_cell(const std::string& kernel_name, const KernelSpec& spec,
                       double alpha_label, int n);
std::vector<SectorCell> run_sector();
Table sector_table(const std::vector<SectorCell>& cells);

struct CircleRow {
  std::string kernel;
  double alpha_label = 0.0;
  double noise_percent = 0.0;
  double max_curvature_error = 0.0;
  double max_normal_angle_deg = 0.0;
  double condition_estimate = 0.0;
};

// 30-point unit circle, curvature and normal measured at the data points
// against the clean circle.
CircleRow circle_row(const std::string& kernel_name, const KernelSpec& spec, double alpha_label,
                     double noise_percent, std::uint64_t seed);
std::vector<CircleRow> run_circle(std::uint64_t seed);
Table circle_table(const std::vector<CircleRow>& rows);

struct SphereRow {
  std::uint64_t seed = 0;
  double max_u_error = 0.0;
  double max_normal_angle_deg = 0.0;
  double max_curvature_error = 0.0;
};

// Gauss, alpha = 0, 80 samples from `seed`, 32 evaluation points from a
// derived seed.
SphereRow sphere_row(std::uint64_t seed, int m = 80, int evaluation_points = 32);
std::vector<SphereRow> run_sphere(std::uint64_t seed, int seeds = 5);
Table sphere_table(const std::vector<SphereRow>& rows);

struct GraphRow {
  double noise_percent = 0.0;
  double alpha_label = 0.0;
  Vec normal;
  double curvature = 0.0;
  // angle between the normal and the vertical axis, either orientation
  double axis_angle_deg = 0.0;
};

// Gauss on gen_graph(51), normal and curvature at (0, -1).
GraphRow graph_row(double alpha_label, double noise_percent, std::uint64_t seed);
std::vector<GraphRow> run_graph(std::uint64_t seed);
Table graph_table(const std::vector<GraphRow>& rows);

struct DimensionRow {
  std::string shape;  // "curve" or "surface"
  DimensionEstimate estimate;
};

// Gauss with delta = 3 on gen_folded_curve(54) and gen_extruded_surface(54, 7),
// alpha_label = 1e-10.
KernelSpec dimension_kernel();
// The first four curve samples on the middle fold, strictly inside it.
std::vector<Vec> dimension_base_points();
std::vector<DimensionRow> run_dimension(std::uint64_t seed);
Table dimension_table(const std::vector<DimensionRow>& rows);

std::vector<std::string> suite_names();
// Throws InvalidSpec for an unknown suite name.
Table run_suite(const std::string& name, std::uint64_t seed);

}  // namespace cloudsig::bench
