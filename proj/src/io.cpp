#include "cloudsig/io.hpp"

#include "cloudsig/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cloudsig::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_cloud_csv(std::ostream& os, const PointCloud& cloud) {
  os << "# d=" << cloud.dim() << "\n";
  for (Eigen::Index k = 0; k < cloud.size(); ++k) {
    for (Eigen::Index i = 0; i < cloud.dim(); ++i) {
      if (i) os << ',';
      os << format_double(cloud.point(k)(i));
    }
    os << '\n';
  }
}

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
    }
    for (std::size_t i = used; i < cell.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(cell[i]))) {
        throw ParseError("line " + std::to_string(line_no) + ": trailing characters in '" +
                         cell + "'");
      }
    }
    row.push_back(v);
  }
  return row;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::vector<std::vector<double>> read_rows_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    rows.push_back(parse_row(line, line_no));
  }
  return rows;
}

PointCloud read_cloud_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  long declared = -1;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto first = line.find_first_not_of(" \t");
    if (line[first] == '#') {
      const auto pos = line.find("d=");
      if (pos != std::string::npos) {
        try {
          declared = std::stol(line.substr(pos + 2));
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(line_no) + ": bad dimension header");
        }
      }
      continue;
    }
    rows.push_back(parse_row(line, line_no));
  }
  if (rows.empty()) throw ParseError("cloud file has no points");
  if (declared >= 0 && static_cast<std::size_t>(declared) != rows.front().size()) {
    throw ParseError("header declares d=" + std::to_string(declared) + " but rows have " +
                     std::to_string(rows.front().size()) + " columns");
  }
  try {
    return PointCloud(rows);
  } catch (const DuplicatePoints&) {
    throw;
  } catch (const InvalidCloud& e) {
    throw ParseError(e.what());
  }
}

PointCloud read_cloud_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cloud file '" + path + "'");
  return read_cloud_csv(in);
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string model_to_json(const SignatureModel& model) {
  const PointCloud& c = model.cloud();
  const DensitySolution& d = model.density();
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(c.size() * c.dim()));
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    for (Eigen::Index i = 0; i < c.dim(); ++i) pts.push_back(c.point(k)(i));
  }
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["cloud"] = {{"d", c.dim()}, {"m", c.size()}, {"points", pts}};
  doc["kernel"] = {{"family", std::string(to_string(model.spec().family))},
                   {"r", model.spec().r},
                   {"delta", model.spec().delta}};
  doc["alpha"] = d.alpha;
  doc["lambda"] = std::vector<double>(d.lambda.data(), d.lambda.data() + d.lambda.size());
  doc["solver"] = {{"path", std::string(to_string(d.solver_path))},
                   {"condition_estimate", finite_or_null(d.condition_estimate)},
                   {"residual", d.residual},
                   {"ill_conditioned", d.ill_conditioned}};
  return doc.dump(2) + "\n";
}

SignatureModel model_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format_version").get<int>() != kModelFormatVersion) {
      throw ParseError("unsupported model format version");
    }
    const auto& jc = doc.at("cloud");
    const auto d = jc.at("d").get<Eigen::Index>();
    const auto m = jc.at("m").get<Eigen::Index>();
    const auto pts = jc.at("points").get<std::vector<double>>();
    if (d < 1 || m < 1 || static_cast<Eigen::Index>(pts.size()) != d * m) {
      throw ParseError("cloud point list does not match d * m");
    }
    Mat points(d, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      for (Eigen::Index i = 0; i < d; ++i) {
        points(i, k) = pts[static_cast<std::size_t>(k * d + i)];
      }
    }
    const auto& jk = doc.at("kernel");
    KernelSpec spec{parse_kernel_family(jk.at("family").get<std::string>()),
                    jk.at("r").get<double>(), jk.at("delta").get<double>()};

    DensitySolution sol;
    sol.alpha = doc.at("alpha").get<double>();
    const auto lambda = doc.at("lambda").get<std::vector<double>>();
    sol.lambda = Eigen::Map<const Vec>(lambda.data(), static_cast<Eigen::Index>(lambda.size()));
    const auto& js = doc.at("solver");
    sol.solver_path = parse_solver_path(js.at("path").get<std::string>());
    const auto& cond = js.at("condition_estimate");
    sol.condition_estimate =
        cond.is_null() ? std::numeric_limits<double>::infinity() : cond.get<double>();
    sol.residual = js.at("residual").get<double>();
    sol.ill_conditioned = js.at("ill_conditioned").get<bool>();
    return SignatureModel(PointCloud(std::move(points)), spec, std::move(sol));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  } catch (const InvalidSpec& e) {
    throw ParseError(std::string("invalid model file: ") + e.what());
  } catch (const InvalidCloud& e) {
    throw ParseError(std::string("invalid model cloud: ") + e.what());
  }
}

void write_model_file(const std::string& path, const SignatureModel& model) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write model file '" + path + "'");
  out << model_to_json(model);
}

SignatureModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

void write_isolines_csv(std::ostream& os, const IsolineSet& set) {
  os << "polyline,x,y\n";
  for (std::size_t p = 0; p < set.polylines.size(); ++p) {
    for (const auto& v : set.polylines[p].vertices) {
      os << p << ',' << format_double(v[0]) << ',' << format_double(v[1]) << '\n';
    }
  }
}

void write_isolines_svg(std::ostream& os, const IsolineSet& set, const SignatureModel& model,
                        const SvgOptions& options) {
  const double w = set.box.hi[0] - set.box.lo[0];
  const double h = set.box.hi[1] - set.box.lo[1];
  const double scale = options.pixels / std::max(w, h);
  const double width = w * scale;
  const double height = h * scale;
  // SVG y grows downward
  auto px = [&](double x) { return (x - set.box.lo[0]) * scale; };
  auto py = [&](double y) { return (set.box.hi[1] - y) * scale; };
  char buf[160];

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.3f %.3f\">\n",
                width, height, width, height);
  os << buf;
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#808080\"/>\n";
  for (const Polyline& line : set.polylines) {
    os << "<path fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < line.vertices.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.3f %.3f ", i ? "L" : "M", px(line.vertices[i][0]),
                    py(line.vertices[i][1]));
      os << buf;
    }
    if (line.closed) os << "Z";
    os << "\"/>\n";
  }
  const PointCloud& c = model.cloud();
  if (options.draw_normals && model.spec().max_order() >= 1) {
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      try {
        const Vec n = model.normal_at(c.point(k)).normal;
        const double x0 = c.point(k)(0), y0 = c.point(k)(1);
        const double x1 = x0 + options.normal_length * n(0);
        const double y1 = y0 + options.normal_length * n(1);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                      "stroke=\"blue\" stroke-width=\"1\"/>\n",
                      px(x0), py(y0), px(x1), py(y1));
        os << buf;
      } catch (const SingularPoint&) {
        // no arrow where the normal is undefined
      }
    }
  }
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"white\" stroke=\"black\"/>\n",
                  px(c.point(k)(0)), py(c.point(k)(1)));
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace cloudsig::io
