#pragma once

#include "cloudsig/density_solver.hpp"
#include "cloudsig/kernels.hpp"
#include "cloudsig/point_cloud.hpp"

#include <cstdint>
#include <optional>

namespace cloudsig {

struct Evaluation {
  double u = 0.0;
  std::optional<Vec> gradient;
  std::optional<Mat> hessian;
  // (1/m) sum_k |lambda_k| |grad K(x - x^k)|, the magnitude of the terms that
  // cancel in the gradient sum. Filled when order >= 1.
  double gradient_term_scale = 0.0;
};

// Where |grad u| is numerically zero the normal is taken at a nearby point
// x + eta w, w uniform on the unit sphere, retrying with eta multiplied by
// offset_growth until the gradient is regular.
//
// A gradient is singular when |g| is below
//   absolute_floor * (1 + diameter),
//   relative_floor * delta * |u(x)|  (small against the natural scale of u), or
//   noise_ratio * gradient_term_scale  (rounding noise of the sum).
// A retry is accepted once its gradient is regular and at least `dominance`
// times the gradient at x, so the degenerate part cannot tilt the normal.
struct SingularPointPolicy {
  double absolute_floor = 1e-12;
  double relative_floor = 1e-5;
  double noise_ratio = 1e-13;
  double dominance = 1e3;
  double initial_offset = 1e-6;  // eta_0 = initial_offset * diameter
  double offset_growth = 10.0;
  int max_retries = 8;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct NormalResult {
  Vec normal;
  // Point the normal was computed at; differs from the query when regularized.
  Vec evaluated_at;
  bool regularized = false;
  double offset = 0.0;
};

struct GeometryReport {
  Vec query;
  Vec evaluated_at;
  double u = 0.0;
  Vec gradient;
  Mat hessian;
  Vec normal;
  // d - 1 principal curvatures, descending by magnitude. Sign convention:
  // +1 on the unit circle with its outer normal.
  Vec curvatures;
  // Jacobian of the normal field, (D2u - D2u nu nu^T) / |grad u|.
  Mat shape_operator;
  bool regularized = false;
  double offset = 0.0;
};

// u(x) = (1/m) sum_k lambda_k K(x - x^k). Immutable; all queries are const
// and safe to run concurrently.
class SignatureModel {
 public:
  // Throws InvalidSpec if lambda does not have one entry per point.
  SignatureModel(PointCloud cloud, KernelSpec spec, DensitySolution density,
                 SingularPointPolicy policy = {});

  static SignatureModel fit(PointCloud cloud, KernelSpec spec, double alpha,
                            const SolverOptions& options = {},
                            SingularPointPolicy policy = {});

  const PointCloud& cloud() const { return cloud_; }
  const KernelSpec& spec() const { return spec_; }
  const DensitySolution& density() const { return density_; }
  const SingularPointPolicy& policy() const { return policy_; }
  Eigen::Index dim() const { return cloud_.dim(); }

  // Same model with a different density; used to probe invariances.
  SignatureModel with_density(DensitySolution density) const;

  Evaluation evaluate(const Eigen::Ref<const Vec>& x, int order) const;
  double value(const Eigen::Ref<const Vec>& x) const { return evaluate(x, 0).u; }

  bool is_singular(const Evaluation& e) const;

  // nu = -grad u / |grad u|. Throws SingularPoint when every retry of the
  // singular-point policy still lands on a singular gradient.
  NormalResult normal_at(const Eigen::Ref<const Vec>& x) const;

  GeometryReport curvatures_at(const Eigen::Ref<const Vec>& x) const;

 private:
  PointCloud cloud_;
  KernelSpec spec_;
  DensitySolution density_;
  SingularPointPolicy policy_;
  double diameter_ = 0.0;
};

// Principal curvatures from the gradient and Hessian at a regular point.
// Exposed separately so the formula can be checked against analytic fields.
Vec principal_curvatures(const Vec& gradient, const Mat& hessian);

// The nonsymmetric shape operator (H - H nu nu^T) / |g|.
Mat normal_jacobian(const Vec& gradient, const Mat& hessian);

}  // namespace cloudsig
