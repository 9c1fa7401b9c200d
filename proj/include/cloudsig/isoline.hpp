#pragma once

#include "cloudsig/signature.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cloudsig {

struct Polyline {
  std::vector<std::array<double, 2>> vertices;
  // Closed polylines repeat their first vertex at the end.
  bool closed = false;
};

struct Box2 {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
};

struct IsolineOptions {
  int nx = 200;  // cells along x
  int ny = 200;  // cells along y
  // The box is the cloud's bounding box grown by margin * diameter on every side.
  double margin = 0.2;
  std::optional<Box2> box;  // overrides the automatic box
};

struct IsolineSet {
  double iso_value = 0.0;
  std::vector<Polyline> polylines;
  int nx = 0;
  int ny = 0;
  Box2 box;
  // max |u(v) - iso| over all emitted vertices
  double max_vertex_residual = 0.0;

  double cell_diagonal() const;
};

// Mean of u over the data points.
double auto_iso_value(const SignatureModel& model);

// 1 for interpolating models (alpha = 0), the data mean otherwise.
double default_iso_value(const SignatureModel& model);

// Grid box used by extract_isolines when no explicit box is given.
Box2 isoline_box(const SignatureModel& model, double margin);

// Marching squares on u - iso. Saddle cells are resolved by the sign of u at
// the cell center. Throws DimensionUnsupported unless d == 2.
IsolineSet extract_isolines(const SignatureModel& model, std::optional<double> iso,
                            const IsolineOptions& options = {});

}  // namespace cloudsig
