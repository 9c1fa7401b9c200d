#pragma once

#include "cloudsig/isoline.hpp"
#include "cloudsig/signature.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cloudsig::io {

inline constexpr int kModelFormatVersion = 1;

// Cloud CSV: optional "# d=<d>" header, one point per row, comma separated,
// 17 significant digits. Blank lines and other '#' lines are ignored.
void write_cloud_csv(std::ostream& os, const PointCloud& cloud);
PointCloud read_cloud_csv(std::istream& is);
PointCloud read_cloud_csv_file(const std::string& path);

// Rows of numbers without the point-cloud invariants (used for reference
// normals and query lists that may repeat points).
std::vector<std::vector<double>> read_rows_csv(std::istream& is);

// Model file: a JSON document with the cloud, kernel, alpha, lambda and
// solver diagnostics. Doubles are written with round-trip precision.
std::string model_to_json(const SignatureModel& model);
SignatureModel model_from_json(const std::string& text);
void write_model_file(const std::string& path, const SignatureModel& model);
SignatureModel read_model_file(const std::string& path);

// "polyline,x,y" rows.
void write_isolines_csv(std::ostream& os, const IsolineSet& set);

struct SvgOptions {
  bool draw_normals = false;
  double normal_length = 0.1;  // in model units
  int pixels = 600;
};

// Polylines in red, data points as white circles, optional normal arrows at
// the data points.
void write_isolines_svg(std::ostream& os, const IsolineSet& set, const SignatureModel& model,
                        const SvgOptions& options = {});

std::string format_double(double v);

}  // namespace cloudsig::io
