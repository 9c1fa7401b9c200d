#include "cloudsig/dimension.hpp"

#include "cloudsig/error.hpp"

#include <Eigen/SVD>

#include <random>

namespace cloudsig {

DimensionEstimate estimate_local_dimension(const SignatureModel& model,
                                           const Eigen::Ref<const Vec>& p,
                                           const DimensionOptions& options) {
  const Eigen::Index d = model.dim();
  if (p.size() != d) {
    throw InvalidSpec("base point dimension does not match the model");
  }
  if (options.probes < d) {
    throw InsufficientProbes("need at least " + std::to_string(d) + " probes, got " +
                             std::to_string(options.probes));
  }
  if (!(options.radius > 0.0)) {
    throw InvalidSpec("probe radius must be positive");
  }
  if (!(options.threshold > 0.0 && options.threshold <= 1.0)) {
    throw InvalidSpec("rank threshold must lie in (0, 1]");
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Mat normals(d, options.probes);
  Vec dir(d);
  for (int j = 0; j < options.probes; ++j) {
    do {
      for (Eigen::Index i = 0; i < d; ++i) dir(i) = gauss(rng);
    } while (dir.norm() == 0.0);
    dir.normalize();
    const double rho = options.radius * unit(rng);
    normals.col(j) = model.normal_at(p + rho * dir).normal;
  }

  Eigen::JacobiSVD<Mat> svd(normals);
  DimensionEstimate est;
  est.base_point = p;
  est.singular_values = Vec::Zero(d);
  const Vec& sv = svd.singularValues();
  est.singular_values.head(sv.size()) = sv;
  const double cut = options.threshold * sv(0);
  int rank = 0;
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (sv(j) >= cut) ++rank;
  }
  est.numerical_rank = rank;
  est.estimated_dimension = static_cast<int>(d) - rank;
  est.probes = options.probes;
  est.radius = options.radius;
  est.threshold = options.threshold;
  return est;
}

}  // namespace cloudsig
