#include "cloudsig/signature.hpp"

#include "cloudsig/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cloudsig {

SignatureModel::SignatureModel(PointCloud cloud, KernelSpec spec, DensitySolution density,
                               SingularPointPolicy policy)
    : cloud_(std::move(cloud)),
      spec_(spec),
      density_(std::move(density)),
      policy_(policy),
      diameter_(cloud_.diameter()) {
  spec_.validate();
  if (density_.lambda.size() != cloud_.size()) {
    throw InvalidSpec("density has " + std::to_string(density_.lambda.size()) +
                      " coefficients for " + std::to_string(cloud_.size()) + " points");
  }
}

SignatureModel SignatureModel::fit(PointCloud cloud, KernelSpec spec, double alpha,
                                   const SolverOptions& options, SingularPointPolicy policy) {
  const Mat kernel = build_kernel_matrix(cloud, spec);
  DensitySolution density = solve_density(kernel, alpha, options);
  return SignatureModel(std::move(cloud), spec, std::move(density), policy);
}

SignatureModel SignatureModel::with_density(DensitySolution density) const {
  return SignatureModel(cloud_, spec_, std::move(density), policy_);
}

Evaluation SignatureModel::evaluate(const Eigen::Ref<const Vec>& x, int order) const {
  if (x.size() != dim()) {
    throw InvalidSpec("query point has dimension " + std::to_string(x.size()) +
                      ", model has " + std::to_string(dim()));
  }
  if (!x.allFinite()) {
    throw InvalidSpec("query point is not finite");
  }
  if (order < 0 || order > 2) {
    throw InvalidSpec("derivative order must be 0, 1 or 2");
  }
  if (order > spec_.max_order()) {
    throw DerivativeUnavailable(
        "the Laplace kernel is not differentiable at the origin; use laplace-r");
  }
  const Eigen::Index d = dim();
  const Eigen::Index m = cloud_.size();
  const double d2 = spec_.delta * spec_.delta;
  const Vec& lambda = density_.lambda;

  double u = 0.0;
  double term_scale = 0.0;
  Vec grad = Vec::Zero(d);
  Mat outer = Mat::Zero(d, d);
  double diag = 0.0;
  Vec v(d);
  for (Eigen::Index k = 0; k < m; ++k) {
    v = x - cloud_.point(k);
    const double s = d2 * v.squaredNorm();
    const RadialProfile p = radial_profile(spec_, s, order);
    u += lambda(k) * p.phi;
    if (order >= 1) {
      const double g = 2.0 * d2 * p.dphi;
      grad.noalias() += (lambda(k) * g) * v;
      term_scale += std::abs(lambda(k) * g) * v.norm();
    }
    if (order >= 2) {
      diag += lambda(k) * 2.0 * d2 * p.dphi;
      outer.noalias() += (lambda(k) * 4.0 * d2 * d2 * p.d2phi) * (v * v.transpose());
    }
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  Evaluation out;
  out.u = u * inv_m;
  if (order >= 1) {
    out.gradient = grad * inv_m;
    out.gradient_term_scale = term_scale * inv_m;
  }
  if (order >= 2) {
    outer.diagonal().array() += diag;
    outer *= inv_m;
    out.hessian = 0.5 * (outer + outer.transpose());
  }
  return out;
}

bool SignatureModel::is_singular(const Evaluation& e) const {
  const double norm = e.gradient->norm();
  return !(norm >= policy_.absolute_floor * (1.0 + diameter_)) ||
         norm < policy_.relative_floor * spec_.delta * std::abs(e.u) ||
         norm < policy_.noise_ratio * e.gradient_term_scale;
}

namespace {

std::string describe(const Eigen::Ref<const Vec>& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
  os << ")";
  return os.str();
}

struct RegularPoint {
  Vec at;
  Evaluation eval;
  bool regularized = false;
  double offset = 0.0;
};

// Shared by normal_at and curvatures_at: returns the evaluation at x, or at
// the first perturbed point whose gradient is regular.
RegularPoint find_regular(const SignatureModel& model, const Eigen::Ref<const Vec>& x,
                          int order, double diameter) {
  RegularPoint rp{x, model.evaluate(x, order)};
  if (!model.is_singular(rp.eval)) return rp;

  const SingularPointPolicy& policy = model.policy();
  const double base = rp.eval.gradient->norm();
  std::mt19937_64 rng(policy.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = diameter > 0.0 ? diameter : 1.0 / model.spec().delta;
  double eta = policy.initial_offset * scale;
  Vec dir(x.size());
  for (int attempt = 0; attempt < policy.max_retries; ++attempt, eta *= policy.offset_growth) {
    do {
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = gauss(rng);
    } while (dir.norm() == 0.0);
    dir.normalize();
    Vec y = x + eta * dir;
    Evaluation e = model.evaluate(y, order);
    if (!model.is_singular(e) && e.gradient->norm() >= policy.dominance * base) {
      return {std::move(y), std::move(e), true, eta};
    }
  }
  throw SingularPoint("gradient of the signature function vanishes at " + describe(x) +
                      " and at every perturbed retry");
}

}  // namespace

NormalResult SignatureModel::normal_at(const Eigen::Ref<const Vec>& x) const {
  RegularPoint rp = find_regular(*this, x, 1, diameter_);
  const Vec& g = *rp.eval.gradient;
  return {-g / g.norm(), std::move(rp.at), rp.regularized, rp.offset};
}

GeometryReport SignatureModel::curvatures_at(const Eigen::Ref<const Vec>& x) const {
  RegularPoint rp = find_regular(*this, x, 2, diameter_);
  GeometryReport report;
  report.query = x;
  report.evaluated_at = rp.at;
  report.u = rp.eval.u;
  report.gradient = *rp.eval.gradient;
  report.hessian = *rp.eval.hessian;
  report.normal = -report.gradient / report.gradient.norm();
  report.curvatures = principal_curvatures(report.gradient, report.hessian);
  report.shape_operator = normal_jacobian(report.gradient, report.hessian);
  report.regularized = rp.regularized;
  report.offset = rp.offset;
  return report;
}

Mat normal_jacobian(const Vec& gradient, const Mat& hessian) {
  const double gnorm = gradient.norm();
  const Vec nu = -gradient / gnorm;
  return (hessian - (hessian * nu) * nu.transpose()) / gnorm;
}

Vec principal_curvatures(const Vec& gradient, const Mat& hessian) {
  const Eigen::Index d = gradient.size();
  const double gnorm = gradient.norm();
  const Vec nu = -gradient / gnorm;
  if (d == 1) return Vec(0);

  // Orthonormal tangent basis: the eigenvectors of I - nu nu^T with
  // eigenvalue 1 (the last d - 1 in ascending order).
  const Mat projector = Mat::Identity(d, d) - nu * nu.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> proj_eig(projector);
  const Mat tangent = proj_eig.eigenvectors().rightCols(d - 1);

  // Restriction of P D2u P / |g| to the tangent space.
  Mat restricted = tangent.transpose() * hessian * tangent / gnorm;
  restricted = 0.5 * (restricted + restricted.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(restricted, Eigen::EigenvaluesOnly);
  // u decreases along the outer normal, so the restricted Hessian is
  // negative on convex shapes; flip to make the unit circle +1.
  Vec kappa = -eig.eigenvalues();
  std::vector<double> sorted(kappa.data(), kappa.data() + kappa.size());
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return a > b;
  });
  return Eigen::Map<Vec>(sorted.data(), static_cast<Eigen::Index>(sorted.size()));
}

}  // namespace cloudsig
