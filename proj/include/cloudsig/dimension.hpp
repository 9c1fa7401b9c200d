#pragma once

#include "cloudsig/signature.hpp"

#include <cstdint>

namespace cloudsig {

struct DimensionOptions {
  int probes = 15;
  double radius = 0.01;
  // Singular values below threshold * sigma_1 do not count toward the rank.
  double threshold = 0.1;
  std::uint64_t seed = 1;
};

struct DimensionEstimate {
  Vec base_point;
  Vec singular_values;  // descending, length d
  int numerical_rank = 0;
  int estimated_dimension = 0;
  int probes = 0;
  double radius = 0.0;
  double threshold = 0.0;
};

// Local intrinsic dimension d - r, where r is the numerical rank of the
// d x probes matrix whose columns are implied normals at random points
// within `radius` of p.
DimensionEstimate estimate_local_dimension(const SignatureModel& model,
                                           const Eigen::Ref<const Vec>& p,
                                           const DimensionOptions& options = {});

}  // namespace cloudsig
