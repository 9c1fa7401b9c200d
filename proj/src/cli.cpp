#include "cloudsig/cli.hpp"

#include "cloudsig/bench.hpp"
#include "cloudsig/dimension.hpp"
#include "cloudsig/error.hpp"
#include "cloudsig/io.hpp"
#include "cloudsig/isoline.hpp"
#include "cloudsig/shapes.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>

namespace cloudsig::cli {

namespace {

// Writes through `write` to `path`, or to `fallback` when no path is given.
void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParseError("cannot write '" + path + "'");
  write(file);
  if (!file) throw ParseError("error while writing '" + path + "'");
}

std::string g17(double v) { return io::format_double(v); }

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string shape;
  int n = 0;
  int n_y = 7;
  double radius = 1.0;
  double side = 2.0;
  double aperture = std::numbers::pi / 16.0;
  bool planar = false;
  std::uint64_t seed = 0;
  double noise_percent = 0.0;
  std::string out;
  CLI::Option* n_option = nullptr;
};

const std::map<std::string, int> kDefaultCounts = {
    {"circle", 30}, {"square", 48},       {"sector", 128},        {"graph", 51},
    {"sphere", 80}, {"folded-curve", 54}, {"folded-surface", 54},
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const int n = a.n_option->count() ? a.n : kDefaultCounts.at(a.shape);
  Shape shape = [&] {
    if (a.shape == "circle") return gen_circle(n, a.radius);
    if (a.shape == "square") return gen_square(n, a.side);
    if (a.shape == "sector") return gen_sector(n, a.aperture, a.radius);
    if (a.shape == "graph") return gen_graph(n);
    if (a.shape == "sphere") return gen_sphere_sample(n, a.seed);
    if (a.shape == "folded-curve") return a.planar ? gen_folded_curve_planar(n) : gen_folded_curve(n);
    return gen_extruded_surface(n, a.n_y);
  }();
  if (a.noise_percent < 0.0) throw InvalidSpec("--noise-percent must be nonnegative");
  if (a.noise_percent > 0.0) {
    // decorrelated from the sphere sampling stream
    shape = add_noise(shape, {a.noise_percent, a.seed ^ 0xa0761d6478bd642fULL});
  }
  emit(a.out, out, [&](std::ostream& os) { io::write_cloud_csv(os, shape.cloud); });
  return kOk;
}

// ---- fit ------------------------------------------------------------------

struct FitArgs {
  std::string cloud;
  std::string kernel = "gauss";
  double r = 1e-6;
  double delta = 1.0;
  double alpha = 0.0;
  std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  PointCloud cloud = io::read_cloud_csv_file(a.cloud);
  KernelSpec spec{parse_kernel_family(a.kernel), a.r, a.delta};
  spec.validate();
  if (!(a.alpha >= 0.0) || !std::isfinite(a.alpha)) throw InvalidSpec("--alpha must be >= 0");
  const SignatureModel model = SignatureModel::fit(std::move(cloud), spec, a.alpha);
  io::write_model_file(a.out, model);

  const DensitySolution& d = model.density();
  double check = 0.0;
  for (Eigen::Index i = 0; i < model.cloud().size(); ++i) {
    const double target = 1.0 - d.alpha * d.lambda(i);
    check = std::max(check, std::abs(model.value(model.cloud().point(i)) - target));
  }
  out << "m=" << model.cloud().size() << '\n'
      << "d=" << model.dim() << '\n'
      << "kernel=" << to_string(spec.family) << '\n'
      << "alpha=" << g17(d.alpha) << '\n'
      << "solver_path=" << to_string(d.solver_path) << '\n'
      << "condition_estimate=" << g17(d.condition_estimate) << '\n'
      << "residual=" << g17(d.residual) << '\n'
      << "ill_conditioned=" << (d.ill_conditioned ? "true" : "false") << '\n'
      << "interpolation_check=" << g17(check) << '\n';
  if (d.ill_conditioned) {
    err << "warning: IllConditioned: condition estimate " << g17(d.condition_estimate)
        << " exceeds the SPD threshold; solved by truncated eigendecomposition\n";
  }
  return kOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string model;
  std::string points;
  bool at_data = false;
  bool normals = false;
  bool curvature = false;
  bool dimension = false;
  std::string reference_normals;
  int probes = 15;
  double radius = 0.01;
  double threshold = 0.1;
  std::uint64_t seed = 1;
  std::string out;
};

std::vector<Vec> read_query_file(const std::string& path, Eigen::Index d, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string("cannot open ") + what + " file '" + path + "'");
  std::vector<Vec> rows;
  for (const auto& row : io::read_rows_csv(in)) {
    if (static_cast<Eigen::Index>(row.size()) != d) {
      throw ParseError(std::string(what) + " file row has " + std::to_string(row.size()) +
                       " columns, model dimension is " + std::to_string(d));
    }
    rows.push_back(Eigen::Map<const Vec>(row.data(), d));
  }
  return rows;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const SignatureModel model = io::read_model_file(a.model);
  const Eigen::Index d = model.dim();
  std::vector<Vec> queries;
  if (a.at_data) {
    for (Eigen::Index k = 0; k < model.cloud().size(); ++k) queries.push_back(model.cloud().point(k));
  } else {
    queries = read_query_file(a.points, d, "points");
  }
  std::vector<Vec> reference;
  if (!a.reference_normals.empty()) {
    reference = read_query_file(a.reference_normals, d, "reference normals");
    if (reference.size() != queries.size()) {
      throw ParseError("reference normals file has " + std::to_string(reference.size()) +
                       " rows for " + std::to_string(queries.size()) + " query points");
    }
  }
  const bool differentiable = model.spec().max_order() >= 1;
  const bool want_normal = a.normals || a.curvature || !reference.empty();
  if ((want_normal || a.dimension) && !differentiable) {
    throw DerivativeUnavailable("normals need a differentiable kernel; refit with laplace-r");
  }
  DimensionOptions dim_opts{a.probes, a.radius, a.threshold, a.seed};

  std::vector<std::string> header{"index"};
  for (Eigen::Index i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
  header.push_back("u");
  if (differentiable) {
    for (Eigen::Index i = 0; i < d; ++i) header.push_back("grad" + std::to_string(i));
  }
  if (want_normal) {
    for (Eigen::Index i = 0; i < d; ++i) header.push_back("normal" + std::to_string(i));
    header.insert(header.end(), {"regularized", "offset"});
  }
  if (a.curvature) {
    for (Eigen::Index i = 0; i + 1 < d; ++i) header.push_back("kappa" + std::to_string(i));
  }
  if (!reference.empty()) header.push_back("normal_angle_deg");
  if (a.dimension) {
    for (Eigen::Index i = 0; i < d; ++i) header.push_back("sigma" + std::to_string(i));
    header.push_back("dimension");
  }

  std::vector<std::vector<std::string>> rows;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const Vec& x = queries[q];
    std::vector<std::string> row{std::to_string(q)};
    for (Eigen::Index i = 0; i < d; ++i) row.push_back(g17(x(i)));
    try {
      const Evaluation e = model.evaluate(x, differentiable ? 1 : 0);
      row.push_back(g17(e.u));
      if (differentiable) {
        for (Eigen::Index i = 0; i < d; ++i) row.push_back(g17((*e.gradient)(i)));
      }
      if (want_normal) {
        Vec normal;
        Vec curv;
        bool regularized = false;
        double offset = 0.0;
        if (a.curvature) {
          const GeometryReport g = model.curvatures_at(x);
          normal = g.normal;
          curv = g.curvatures;
          regularized = g.regularized;
          offset = g.offset;
        } else {
          const NormalResult nr = model.normal_at(x);
          normal = nr.normal;
          regularized = nr.regularized;
          offset = nr.offset;
        }
        for (Eigen::Index i = 0; i < d; ++i) row.push_back(g17(normal(i)));
        row.push_back(regularized ? "1" : "0");
        row.push_back(g17(offset));
        for (Eigen::Index i = 0; i < curv.size(); ++i) row.push_back(g17(curv(i)));
        if (!reference.empty()) {
          const Vec& ref = reference[q];
          const double c = std::clamp(normal.dot(ref) / ref.norm(), -1.0, 1.0);
          row.push_back(g17(std::acos(c) * 180.0 / std::numbers::pi));
        }
      }
      if (a.dimension) {
        DimensionOptions o = dim_opts;
        o.seed = a.seed + q;
        const DimensionEstimate est = estimate_local_dimension(model, x, o);
        for (Eigen::Index i = 0; i < d; ++i) row.push_back(g17(est.singular_values(i)));
        row.push_back(std::to_string(est.estimated_dimension));
      }
    } catch (const SingularPoint& e) {
      err << "error: query point " << q << ": " << e.what() << '\n';
      return kSingularity;
    }
    rows.push_back(std::move(row));
  }

  emit(a.out, out, [&](std::ostream& os) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
  });
  return kOk;
}

// ---- isoline --------------------------------------------------------------

struct IsolineArgs {
  std::string model;
  std::string iso = "auto";
  std::vector<int> grid{200, 200};
  double margin = 0.2;
  std::string format;
  bool normals = false;
  double normal_length = 0.1;
  std::string out;
};

int cmd_isoline(const IsolineArgs& a, std::ostream& out) {
  const SignatureModel model = io::read_model_file(a.model);
  if (model.dim() != 2) {
    throw DimensionUnsupported("isolines need a 2-D model, this one has d=" +
                               std::to_string(model.dim()));
  }
  std::optional<double> iso;
  if (a.iso == "mean") {
    iso = auto_iso_value(model);
  } else if (a.iso != "auto") {
    try {
      std::size_t used = 0;
      iso = std::stod(a.iso, &used);
      if (used != a.iso.size()) throw std::invalid_argument(a.iso);
    } catch (const std::exception&) {
      throw ParseError("--iso must be 'auto', 'mean' or a number, got '" + a.iso + "'");
    }
  }
  IsolineOptions opts;
  opts.nx = a.grid[0];
  opts.ny = a.grid[1];
  opts.margin = a.margin;
  const IsolineSet set = extract_isolines(model, iso, opts);

  std::string format = a.format;
  if (format.empty()) {
    const bool svg_ext = a.out.size() >= 4 && a.out.compare(a.out.size() - 4, 4, ".svg") == 0;
    format = svg_ext ? "svg" : "csv";
  }
  emit(a.out, out, [&](std::ostream& os) {
    if (format == "svg") {
      io::SvgOptions svg;
      svg.draw_normals = a.normals;
      svg.normal_length = a.normal_length;
      io::write_isolines_svg(os, set, model, svg);
    } else {
      io::write_isolines_csv(os, set);
    }
  });
  if (!a.out.empty()) {
    std::size_t closed = 0;
    for (const auto& p : set.polylines) closed += p.closed ? 1 : 0;
    out << "iso_value=" << g17(set.iso_value) << '\n'
        << "polylines=" << set.polylines.size() << '\n'
        << "closed_polylines=" << closed << '\n'
        << "max_vertex_residual=" << g17(set.max_vertex_residual) << '\n';
  }
  return kOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string suite;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const bench::Table table = bench::run_suite(a.suite, a.seed);
  if (!a.out.empty()) {
    emit(a.out, out, [&](std::ostream& os) { table.write_csv(os); });
    std::string md = a.out;
    const auto dot = md.find_last_of('.');
    const auto slash = md.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) md.erase(dot);
    emit(md + ".md", out, [&](std::ostream& os) { table.write_markdown(os); });
  }
  table.write_markdown(out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel signature functions for point clouds", "cloudsig"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a shape as a CSV cloud");
  std::vector<std::string> shape_names;
  for (const auto& [name, _] : kDefaultCounts) shape_names.push_back(name);
  gen_cmd->add_option("shape", gen.shape, "Shape name")->required()->check(CLI::IsMember(shape_names));
  gen.n_option = gen_cmd->add_option("--n,--m", gen.n, "Number of points (shape default if omitted)")
                     ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n-y", gen.n_y, "Copies across y for folded-surface")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--radius", gen.radius, "Circle or sector radius");
  gen_cmd->add_option("--side", gen.side, "Square side length");
  gen_cmd->add_option("--aperture", gen.aperture, "Sector aperture in radians");
  gen_cmd->add_flag("--planar", gen.planar, "Folded curve in R^2 instead of the xz-plane of R^3");
  gen_cmd->add_option("--seed", gen.seed, "Seed for sampling and noise");
  gen_cmd->add_option("--noise-percent", gen.noise_percent,
                      "Noise as a fraction of the largest consecutive gap");
  gen_cmd->add_option("--out", gen.out, "Output CSV (default stdout)");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a signature model to a cloud");
  fit_cmd->add_option("--cloud", fit.cloud, "Cloud CSV")->required();
  fit_cmd->add_option("--kernel", fit.kernel, "gauss, laplace or laplace-r")
      ->check(CLI::IsMember({"gauss", "laplace", "laplace-r"}));
  fit_cmd->add_option("--r", fit.r, "Regularization of laplace-r");
  fit_cmd->add_option("--delta", fit.delta, "Kernel scale");
  fit_cmd->add_option("--alpha", fit.alpha, "Ridge parameter");
  fit_cmd->add_option("--out", fit.out, "Model file")->required();

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "Evaluate a model at query points");
  an_cmd->add_option("--model", an.model, "Model file")->required();
  auto* pts_opt = an_cmd->add_option("--points", an.points, "Query points CSV");
  auto* data_opt = an_cmd->add_flag("--at-data", an.at_data, "Query at the data points");
  pts_opt->excludes(data_opt);
  an_cmd->add_flag("--normals", an.normals, "Report implied normals");
  an_cmd->add_flag("--curvature", an.curvature, "Report principal curvatures");
  an_cmd->add_flag("--dimension", an.dimension, "Estimate the local dimension");
  an_cmd->add_option("--reference-normals", an.reference_normals,
                     "Exact normals, one row per query point, for an angle error column");
  an_cmd->add_option("--probes", an.probes, "Dimension probes")->check(CLI::PositiveNumber);
  an_cmd->add_option("--radius", an.radius, "Dimension probe radius");
  an_cmd->add_option("--threshold", an.threshold, "Relative singular value threshold");
  an_cmd->add_option("--seed", an.seed, "Dimension probe seed");
  an_cmd->add_option("--out", an.out, "Output CSV (default stdout)");

  IsolineArgs iso;
  auto* iso_cmd = app.add_subcommand("isoline", "Extract level lines of a 2-D model");
  iso_cmd->add_option("--model", iso.model, "Model file")->required();
  iso_cmd->add_option("--iso", iso.iso,
                      "'auto' (1 for alpha = 0, else the data mean), 'mean' or a number");
  iso_cmd->add_option("--grid", iso.grid, "Cells along x and y")->expected(2)->check(
      CLI::Range(8, 100000));
  iso_cmd->add_option("--margin", iso.margin, "Box margin as a fraction of the diameter");
  iso_cmd->add_option("--format", iso.format, "csv or svg (default from --out extension)")
      ->check(CLI::IsMember({"csv", "svg"}));
  iso_cmd->add_flag("--normals", iso.normals, "Draw normal arrows in SVG output");
  iso_cmd->add_option("--normal-length", iso.normal_length, "Arrow length in model units");
  iso_cmd->add_option("--out", iso.out, "Output file (default stdout)");

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "Regenerate a benchmark table");
  bench_cmd->add_option("suite", bn.suite, "Suite name")->required()->check(
      CLI::IsMember(bench::suite_names()));
  bench_cmd->add_option("--seed", bn.seed, "Seed");
  bench_cmd->add_option("--out", bn.out, "CSV output; markdown goes next to it");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*fit_cmd) return cmd_fit(fit, out, err);
    if (*an_cmd) {
      if (!an.at_data && an.points.empty()) {
        err << "error: analyze needs --points or --at-data\n";
        return kUsage;
      }
      return cmd_analyze(an, out, err);
    }
    if (*iso_cmd) return cmd_isoline(iso, out);
    if (*bench_cmd) return cmd_bench(bn, out);
  } catch (const SolveFailed& e) {
    err << "error: SolveFailed: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const SingularPoint& e) {
    err << "error: SingularPoint: " << e.what() << '\n';
    return kSingularity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cloudsig::cli
