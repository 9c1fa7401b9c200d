#include "cloudsig/bench.hpp"
#include "cloudsig/cli.hpp"
#include "cloudsig/io.hpp"
#include "cloudsig/shapes.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace cloudsig;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    const char* env = std::getenv("CLOUDSIG_TMP");
    fs::path p = env ? fs::path(env) : fs::temp_directory_path() / "cloudsig_cli_test";
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

std::string slurp(const std::string& file) {
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

// Parses a CSV with a header row into column vectors keyed by name.
std::map<std::string, std::vector<double>> read_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> names;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) names.push_back(cell);
  }
  std::map<std::string, std::vector<double>> cols;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    std::string cell;
    for (std::size_t i = 0; std::getline(r, cell, ','); ++i) cols[names.at(i)].push_back(std::stod(cell));
  }
  return cols;
}

void write_points(const std::string& file, const std::vector<Vec>& pts) {
  std::ofstream out(file);
  for (const Vec& p : pts) {
    for (Eigen::Index i = 0; i < p.size(); ++i) out << (i ? "," : "") << io::format_double(p(i));
    out << '\n';
  }
}

}  // namespace

TEST_CASE("gen circle writes 30 rows of 2 columns") {
  const Result r = invoke({"gen", "circle", "--n", "30"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  const PointCloud c = io::read_cloud_csv(in);
  CHECK(c.size() == 30);
  CHECK(c.dim() == 2);
  CHECK(c.points() == gen_circle(30).cloud.points());
}

TEST_CASE("gen is deterministic") {
  CHECK(invoke({"gen", "sphere", "--m", "80", "--seed", "7", "--out", path("s1.csv")}).code == 0);
  CHECK(invoke({"gen", "sphere", "--m", "80", "--seed", "7", "--out", path("s2.csv")}).code == 0);
  CHECK(slurp(path("s1.csv")) == slurp(path("s2.csv")));
  CHECK(invoke({"gen", "sphere", "--m", "80", "--seed", "8", "--out", path("s3.csv")}).code == 0);
  CHECK(slurp(path("s1.csv")) != slurp(path("s3.csv")));
}

TEST_CASE("gen noise stays within the bound") {
  const Result r = invoke({"gen", "circle", "--n", "30", "--noise-percent", "0.05", "--seed", "1"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const PointCloud noisy = io::read_cloud_csv(in);
  const Shape clean = gen_circle(30);
  const double bound = 0.05 * max_consecutive_gap(clean);
  for (Eigen::Index k = 0; k < 30; ++k) {
    CHECK((noisy.point(k) - clean.cloud.point(k)).norm() <= bound + 1e-15);
  }
}

TEST_CASE("gen shape defaults") {
  const std::map<std::string, std::pair<Eigen::Index, Eigen::Index>> expect{
      {"circle", {30, 2}},  {"square", {48, 2}},       {"sector", {128, 2}},
      {"graph", {51, 2}},   {"sphere", {80, 3}},       {"folded-curve", {54, 3}},
      {"folded-surface", {378, 3}}};
  for (const auto& [shape, size] : expect) {
    const Result r = invoke({"gen", shape});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const PointCloud c = io::read_cloud_csv(in);
    CHECK(c.size() == size.first);
    CHECK(c.dim() == size.second);
  }
  const Result planar = invoke({"gen", "folded-curve", "--planar"});
  std::istringstream in(planar.out);
  CHECK(io::read_cloud_csv(in).dim() == 2);
}

TEST_CASE("gen usage errors exit 2") {
  CHECK(invoke({"gen", "torus"}).code == 2);
  CHECK(invoke({"gen", "square", "--n", "10"}).code == 2);
  CHECK(invoke({"gen", "circle", "--n", "-3"}).code == 2);
  CHECK(invoke({"gen", "circle", "--radius", "0"}).code == 2);
  CHECK(invoke({"gen", "circle", "--noise-percent", "-1"}).code == 2);
  CHECK(invoke({"gen", "circle", "--bogus"}).code == 2);
  const Result none = invoke({});
  CHECK(none.code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("fit reports diagnostics") {
  REQUIRE(invoke({"gen", "circle", "--n", "30", "--out", path("circle.csv")}).code == 0);
  const Result r = invoke({"fit", "--cloud", path("circle.csv"), "--kernel", "gauss", "--alpha", "0",
                        "--out", path("circle.json")});
  REQUIRE(r.code == 0);
  auto kv = key_values(r.out);
  CHECK(std::stod(kv.at("residual")) <= 1e-9);
  CHECK(kv.at("solver_path") == "spd-factorization");
  CHECK(kv.at("m") == "30");
  CHECK(std::stod(kv.at("condition_estimate")) > 1.0);
  CHECK(r.err.empty());

  const Result ridge = invoke({"fit", "--cloud", path("circle.csv"), "--alpha", "1e-10", "--out",
                            path("circle_ridge.json")});
  REQUIRE(ridge.code == 0);
  CHECK(std::stod(key_values(ridge.out).at("interpolation_check")) <= 1e-10);
}

TEST_CASE("fit of a single point gives lambda 1") {
  {
    std::ofstream out(path("one.csv"));
    out << "0.25,0.5\n";
  }
  REQUIRE(invoke({"fit", "--cloud", path("one.csv"), "--out", path("one.json")}).code == 0);
  const SignatureModel m = io::read_model_file(path("one.json"));
  CHECK(m.density().lambda.size() == 1);
  CHECK(m.density().lambda(0) == doctest::Approx(1.0));
}

TEST_CASE("fit warns on ill-conditioning and fails on broken systems") {
  REQUIRE(invoke({"gen", "sector", "--n", "256", "--out", path("sector.csv")}).code == 0);
  const Result ill = invoke({"fit", "--cloud", path("sector.csv"), "--out", path("sector.json")});
  CHECK(ill.code == 0);
  CHECK(key_values(ill.out).at("ill_conditioned") == "true");
  CHECK(ill.err.find("IllConditioned") != std::string::npos);

  // every kernel entry underflows to zero: no solution
  const Result failed = invoke({"fit", "--cloud", path("sector.csv"), "--kernel", "laplace-r", "--r",
                             "1e300", "--out", path("broken.json")});
  CHECK(failed.code == 3);
  CHECK(failed.err.find("SolveFailed") != std::string::npos);

  CHECK(invoke({"fit", "--cloud", path("missing.csv"), "--out", path("x.json")}).code == 2);
  CHECK(invoke({"fit", "--cloud", path("sector.csv"), "--kernel", "cauchy", "--out", path("x.json")})
            .code == 2);
  CHECK(invoke({"fit", "--cloud", path("sector.csv"), "--delta", "0", "--out", path("x.json")}).code ==
        2);
  CHECK(invoke({"fit", "--cloud", path("sector.csv"), "--alpha", "-1", "--out", path("x.json")})
            .code == 2);
}

TEST_CASE("analyze circle curvature at the data") {
  REQUIRE(invoke({"gen", "circle", "--n", "30", "--out", path("c30.csv")}).code == 0);
  REQUIRE(invoke({"fit", "--cloud", path("c30.csv"), "--out", path("c30.json")}).code == 0);
  const Result r = invoke({"analyze", "--model", path("c30.json"), "--at-data", "--curvature"});
  REQUIRE(r.code == 0);
  const auto cols = read_table(r.out);
  REQUIRE(cols.at("kappa0").size() == 30);
  for (double k : cols.at("kappa0")) {
    CHECK(k >= 0.99);
    CHECK(k <= 1.01);
  }
  CHECK(cols.count("normal1") == 1);
  CHECK(cols.count("grad0") == 1);
}

TEST_CASE("analyze sphere normals against the exact normals") {
  REQUIRE(invoke({"gen", "sphere", "--m", "80", "--seed", "1", "--out", path("sphere.csv")}).code == 0);
  REQUIRE(invoke({"gen", "sphere", "--m", "32", "--seed", "1001", "--out", path("probe.csv")}).code == 0);
  REQUIRE(invoke({"fit", "--cloud", path("sphere.csv"), "--out", path("sphere.json")}).code == 0);
  const Result r = invoke({"analyze", "--model", path("sphere.json"), "--points", path("probe.csv"),
                        "--normals", "--reference-normals", path("probe.csv"), "--out",
                        path("sphere_report.csv")});
  REQUIRE(r.code == 0);
  const auto cols = read_table(slurp(path("sphere_report.csv")));
  REQUIRE(cols.at("normal_angle_deg").size() == 32);
  for (double a : cols.at("normal_angle_deg")) CHECK(a <= 0.1);
}

TEST_CASE("analyze dimension on the folded curve") {
  REQUIRE(invoke({"gen", "folded-curve", "--n", "54", "--out", path("fold.csv")}).code == 0);
  const std::string alpha = io::format_double(bench::model_alpha(1e-10, 54));
  REQUIRE(invoke({"fit", "--cloud", path("fold.csv"), "--delta", "3", "--alpha", alpha, "--out",
               path("fold.json")})
              .code == 0);
  write_points(path("base.csv"), bench::dimension_base_points());
  const Result r = invoke({"analyze", "--model", path("fold.json"), "--points", path("base.csv"),
                        "--dimension", "--probes", "15", "--radius", "0.01", "--threshold", "0.1",
                        "--seed", "5"});
  REQUIRE(r.code == 0);
  const auto cols = read_table(r.out);
  REQUIRE(cols.at("dimension").size() == 4);
  for (double d : cols.at("dimension")) CHECK(d == 1.0);
  CHECK(cols.count("sigma2") == 1);
}

TEST_CASE("analyze errors") {
  REQUIRE(invoke({"gen", "circle", "--n", "30", "--out", path("c30b.csv")}).code == 0);
  REQUIRE(invoke({"fit", "--cloud", path("c30b.csv"), "--out", path("c30b.json")}).code == 0);
  write_points(path("far.csv"), {Vec::Constant(2, 1000.0)});
  const Result singular =
      invoke({"analyze", "--model", path("c30b.json"), "--points", path("far.csv"), "--normals"});
  CHECK(singular.code == 4);
  CHECK(singular.err.find("query point 0") != std::string::npos);
  CHECK(singular.err.find("1000") != std::string::npos);

  CHECK(invoke({"analyze", "--model", path("c30b.json")}).code == 2);
  CHECK(invoke({"analyze", "--model", path("c30b.json"), "--at-data", "--points", path("far.csv")})
            .code == 2);
  write_points(path("wide.csv"), {Vec::Zero(3)});
  CHECK(invoke({"analyze", "--model", path("c30b.json"), "--points", path("wide.csv")}).code == 2);
  CHECK(invoke({"analyze", "--model", path("c30b.json"), "--at-data", "--reference-normals",
             path("far.csv")})
            .code == 2);

  REQUIRE(invoke({"fit", "--cloud", path("c30b.csv"), "--kernel", "laplace", "--out",
               path("lap.json")})
              .code == 0);
  const Result values = invoke({"analyze", "--model", path("lap.json"), "--at-data"});
  CHECK(values.code == 0);
  CHECK(values.out.rfind("index,x0,x1,u\n", 0) == 0);
  CHECK(invoke({"analyze", "--model", path("lap.json"), "--at-data", "--normals"}).code == 2);
}

TEST_CASE("isoline outputs") {
  REQUIRE(invoke({"gen", "circle", "--n", "30", "--out", path("iso.csv")}).code == 0);
  REQUIRE(invoke({"fit", "--cloud", path("iso.csv"), "--out", path("iso.json")}).code == 0);

  const Result r = invoke({"isoline", "--model", path("iso.json"), "--iso", "auto"});
  REQUIRE(r.code == 0);
  const auto cols = read_table(r.out);
  const auto& ids = cols.at("polyline");
  for (double id : ids) CHECK(id == 0.0);
  const auto& x = cols.at("x");
  const auto& y = cols.at("y");
  CHECK(x.front() == x.back());
  CHECK(y.front() == y.back());

  const Result empty = invoke({"isoline", "--model", path("iso.json"), "--iso", "5"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "polyline,x,y\n");

  const Result svg = invoke({"isoline", "--model", path("iso.json"), "--grid", "120", "100",
                          "--normals", "--out", path("iso.svg")});
  CHECK(svg.code == 0);
  const auto kv = key_values(svg.out);
  CHECK(kv.at("polylines") == "1");
  CHECK(kv.at("closed_polylines") == "1");
  const std::string text = slurp(path("iso.svg"));
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);

  CHECK(invoke({"isoline", "--model", path("iso.json"), "--iso", "abc"}).code == 2);
  CHECK(invoke({"isoline", "--model", path("iso.json"), "--grid", "4", "4"}).code == 2);
  REQUIRE(invoke({"gen", "sphere", "--m", "10", "--out", path("s10.csv")}).code == 0);
  REQUIRE(invoke({"fit", "--cloud", path("s10.csv"), "--out", path("s10.json")}).code == 0);
  CHECK(invoke({"isoline", "--model", path("s10.json")}).code == 2);
}

TEST_CASE("bench writes CSV and markdown") {
  const Result r = invoke({"bench", "sector", "--out", path("sector_table.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("| gauss |") != std::string::npos);
  const std::string csv = slurp(path("sector_table.csv"));
  CHECK(csv.rfind("kernel,alpha,N=32,N=64,N=128,N=256\n", 0) == 0);
  CHECK(slurp(path("sector_table.md")) == r.out);
  CHECK(invoke({"bench", "everything"}).code == 2);
}
