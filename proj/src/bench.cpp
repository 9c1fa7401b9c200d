#include "cloudsig/bench.hpp"

#include "cloudsig/error.hpp"
#include "cloudsig/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace cloudsig::bench {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

double angle_deg(const Vec& a, const Vec& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0)) * kDeg;
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

double model_alpha(double alpha_label, Eigen::Index m) {
  return alpha_label / static_cast<double>(m);
}

std::string sci(double v, int digits) {
  if (v == 0.0) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_cell(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void Table::write_markdown(std::ostream& os) const {
  if (!title.empty()) os << "### " << title << "\n\n";
  os << '|';
  for (const auto& c : columns) os << ' ' << c << " |";
  os << "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) os << " --- |";
  os << '\n';
  for (const auto& row : rows) {
    os << '|';
    for (const auto& c : row) os << ' ' << c << " |";
    os << '\n';
  }
}

// ---- sector ---------------------------------------------------------------

KernelSpec sector_gauss() { return KernelSpec::gauss(1.0); }
KernelSpec sector_laplace() { return KernelSpec::regularized_laplace(1e-5, 1.0); }

SectorCell sector_cell(const std::string& kernel_name, const KernelSpec& spec,
                       double alpha_label, int n) {
  Shape sector = gen_sector(n);
  const Eigen::Index m = sector.cloud.size();
  const SignatureModel model =
      SignatureModel::fit(sector.cloud, spec, model_alpha(alpha_label, m));
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index k = 0; k < m; ++k) {
    if (!sector.mask[static_cast<std::size_t>(k)]) continue;
    const GeometryReport g = model.curvatures_at(model.cloud().point(k));
    sum += std::abs(g.curvatures(0) - 1.0);
    ++count;
  }
  return {kernel_name, alpha_label, n, count ? sum / count : 0.0, model.density().solver_path};
}

std::vector<SectorCell> run_sector() {
  std::vector<SectorCell> cells;
  const std::pair<const char*, KernelSpec> kernels[] = {{"gauss", sector_gauss()},
                                                        {"laplace-r", sector_laplace()}};
  for (const auto& [name, spec] : kernels) {
    for (double alpha : {0.0, 1e-10}) {
      for (int n : {32, 64, 128, 256}) cells.push_back(sector_cell(name, spec, alpha, n));
    }
  }
  return cells;
}

Table sector_table(const std::vector<SectorCell>& cells) {
  Table t;
  t.title = "Sector of aperture pi/16: mean relative curvature error on the middle quarter";
  t.columns = {"kernel", "alpha", "N=32", "N=64", "N=128", "N=256"};
  for (std::size_t i = 0; i < cells.size();) {
    std::vector<std::string> row{cells[i].kernel, sci(cells[i].alpha_label, 2)};
    std::size_t j = i;
    for (; j < cells.size() && cells[j].kernel == cells[i].kernel &&
           cells[j].alpha_label == cells[i].alpha_label;
         ++j) {
      row.push_back(sci(cells[j].error));
    }
    t.rows.push_back(std::move(row));
    i = j;
  }
  return t;
}

// ---- circle ---------------------------------------------------------------

CircleRow circle_row(const std::string& kernel_name, const KernelSpec& spec, double alpha_label,
                     double noise_percent, std::uint64_t seed) {
  const Shape clean = gen_circle(30);
  const Shape noisy = add_noise(clean, {noise_percent, seed});
  const Eigen::Index m = noisy.cloud.size();
  const SignatureModel model =
      SignatureModel::fit(noisy.cloud, spec, model_alpha(alpha_label, m));
  CircleRow row{kernel_name, alpha_label, noise_percent, 0.0, 0.0,
                model.density().condition_estimate};
  for (Eigen::Index k = 0; k < m; ++k) {
    const GeometryReport g = model.curvatures_at(noisy.cloud.point(k));
    row.max_curvature_error = std::max(row.max_curvature_error, std::abs(g.curvatures(0) - 1.0));
    row.max_normal_angle_deg =
        std::max(row.max_normal_angle_deg, angle_deg(g.normal, clean.cloud.point(k)));
  }
  return row;
}

std::vector<CircleRow> run_circle(std::uint64_t seed) {
  std::vector<CircleRow> rows;
  const std::pair<const char*, KernelSpec> kernels[] = {
      {"gauss", KernelSpec::gauss()}, {"laplace-r", KernelSpec::regularized_laplace(1e-6)}};
  for (double noise : {0.0, 0.05, 0.1}) {
    for (const auto& [name, spec] : kernels) {
      for (double alpha : {0.0, 1e-10, 1e-2}) {
        rows.push_back(circle_row(name, spec, alpha, noise, seed));
      }
    }
  }
  return rows;
}

Table circle_table(const std::vector<CircleRow>& rows) {
  Table t;
  t.title = "Unit circle, 30 points: errors at the data points";
  t.columns = {"kernel", "alpha", "noise", "max |kappa-1|", "max normal angle (deg)",
               "condition"};
  for (const auto& r : rows) {
    t.rows.push_back({r.kernel, sci(r.alpha_label, 2), fixed(r.noise_percent, 2),
                      sci(r.max_curvature_error), sci(r.max_normal_angle_deg),
                      sci(r.condition_estimate, 2)});
  }
  return t;
}

// ---- sphere ---------------------------------------------------------------

SphereRow sphere_row(std::uint64_t seed, int m, int evaluation_points) {
  const Shape sample = gen_sphere_sample(m, seed);
  const Shape probes = gen_sphere_sample(evaluation_points, seed ^ 0x5deece66dULL);
  const SignatureModel model = SignatureModel::fit(sample.cloud, KernelSpec::gauss(), 0.0);
  SphereRow row{seed};
  for (Eigen::Index k = 0; k < probes.cloud.size(); ++k) {
    const Vec x = probes.cloud.point(k);
    const GeometryReport g = model.curvatures_at(x);
    row.max_u_error = std::max(row.max_u_error, std::abs(g.u - 1.0));
    row.max_normal_angle_deg = std::max(row.max_normal_angle_deg, angle_deg(g.normal, x));
    row.max_curvature_error =
        std::max(row.max_curvature_error, (g.curvatures.array() - 1.0).abs().maxCoeff());
  }
  return row;
}

std::vector<SphereRow> run_sphere(std::uint64_t seed, int seeds) {
  std::vector<SphereRow> rows;
  for (int i = 0; i < seeds; ++i) rows.push_back(sphere_row(seed + static_cast<std::uint64_t>(i)));
  return rows;
}

Table sphere_table(const std::vector<SphereRow>& rows) {
  Table t;
  t.title = "Unit sphere, 80 samples, 32 evaluation points (Gauss, alpha = 0)";
  t.columns = {"seed", "max |u-1|", "max normal angle (deg)", "max |kappa-1|"};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.seed), sci(r.max_u_error), sci(r.max_normal_angle_deg),
                      sci(r.max_curvature_error)});
  }
  return t;
}

// ---- graph ----------------------------------------------------------------

GraphRow graph_row(double alpha_label, double noise_percent, std::uint64_t seed) {
  const Shape graph = add_noise(gen_graph(51), {noise_percent, seed});
  const Eigen::Index m = graph.cloud.size();
  const SignatureModel model =
      SignatureModel::fit(graph.cloud, KernelSpec::gauss(), model_alpha(alpha_label, m));
  Vec origin(2);
  origin << 0.0, -1.0;
  const GeometryReport g = model.curvatures_at(origin);
  const double tilt = std::asin(std::min(1.0, std::abs(g.normal(0)))) * kDeg;
  return {noise_percent, alpha_label, g.normal, g.curvatures(0), tilt};
}

std::vector<GraphRow> run_graph(std::uint64_t seed) {
  std::vector<GraphRow> rows;
  for (double noise : {0.0, 0.05, 0.1, 0.5}) {
    for (double alpha : {0.0, 1e-10, 0.01, 0.05, 0.1}) {
      rows.push_back(graph_row(alpha, noise, seed));
    }
  }
  return rows;
}

Table graph_table(const std::vector<GraphRow>& rows) {
  Table t;
  t.title = "Graph y = -1 + x^2 + |x|^2.5, 51 points: normal and curvature at (0,-1)";
  t.columns = {"noise", "alpha", "normal x", "normal y", "curvature", "tilt (deg)"};
  for (const auto& r : rows) {
    t.rows.push_back({fixed(r.noise_percent, 2), sci(r.alpha_label, 2), sci(r.normal(0)),
                      sci(r.normal(1)), sci(r.curvature), sci(r.axis_angle_deg)});
  }
  return t;
}

// ---- dimension ------------------------------------------------------------

KernelSpec dimension_kernel() { return KernelSpec::gauss(3.0); }

std::vector<Vec> dimension_base_points() {
  const Shape curve = gen_folded_curve(54);
  std::vector<Vec> out;
  for (Eigen::Index k = 0; k < curve.cloud.size() && out.size() < 4; ++k) {
    const Vec p = curve.cloud.point(k);
    if (std::abs(p(2) - 0.5) < 1e-12 && p(0) > 0.3 && p(0) < 1.7) out.push_back(p);
  }
  return out;
}

std::vector<DimensionRow> run_dimension(std::uint64_t seed) {
  const Shape curve = gen_folded_curve(54);
  const Shape surface = gen_extruded_surface(54, 7);
  const KernelSpec spec = dimension_kernel();
  const SignatureModel curve_model =
      SignatureModel::fit(curve.cloud, spec, model_alpha(1e-10, curve.cloud.size()));
  const SignatureModel surface_model =
      SignatureModel::fit(surface.cloud, spec, model_alpha(1e-10, surface.cloud.size()));
  const std::vector<Vec> base = dimension_base_points();

  std::vector<DimensionRow> rows;
  const std::pair<const char*, const SignatureModel*> models[] = {{"curve", &curve_model},
                                                                  {"surface", &surface_model}};
  for (const auto& [name, model] : models) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      DimensionOptions opts;
      opts.seed = seed * 0x100000001b3ULL + i;
      rows.push_back({name, estimate_local_dimension(*model, base[i], opts)});
    }
  }
  return rows;
}

Table dimension_table(const std::vector<DimensionRow>& rows) {
  Table t;
  t.title = "Local dimension from implied normals (15 probes, radius 0.01, threshold 0.1)";
  t.columns = {"shape", "x", "z", "sigma1", "sigma2", "sigma3", "sigma2/sigma1", "dimension"};
  for (const auto& r : rows) {
    const Vec& s = r.estimate.singular_values;
    t.rows.push_back({r.shape, fixed(r.estimate.base_point(0), 4),
                      fixed(r.estimate.base_point(2), 4), sci(s(0)), sci(s(1)), sci(s(2)),
                      sci(s(1) / s(0)), std::to_string(r.estimate.estimated_dimension)});
  }
  return t;
}

std::vector<std::string> suite_names() { return {"sector", "circle", "sphere", "graph", "dimension"}; }

Table run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "sector") return sector_table(run_sector());
  if (name == "circle") return circle_table(run_circle(seed));
  if (name == "sphere") return sphere_table(run_sphere(seed));
  if (name == "graph") return graph_table(run_graph(seed));
  if (name == "dimension") return dimension_table(run_dimension(seed));
  throw InvalidSpec("unknown bench suite '" + name + "'");
}

}  // namespace cloudsig::bench
