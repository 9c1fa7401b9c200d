#include "cloudsig/density_solver.hpp"

#include "cloudsig/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <string>

namespace cloudsig {

std::string_view to_string(SolverPath path) {
  return path == SolverPath::SPDFactorization ? "spd-factorization" : "truncated-eigen";
}

SolverPath parse_solver_path(std::string_view name) {
  if (name == "spd-factorization") return SolverPath::SPDFactorization;
  if (name == "truncated-eigen") return SolverPath::TruncatedEigen;
  throw ParseError("unknown solver path '" + std::string(name) + "'");
}

Mat build_kernel_matrix(const PointCloud& cloud, const KernelSpec& spec) {
  spec.validate();
  if (cloud.size() > 1 && cloud.min_pairwise_distance() == 0.0) {
    throw DuplicatePoints("kernel matrix of a cloud with coincident points is singular");
  }
  const Eigen::Index m = cloud.size();
  const double d2 = spec.delta * spec.delta;
  Mat kernel(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    kernel(i, i) = spec.peak();
    for (Eigen::Index k = i + 1; k < m; ++k) {
      const double s = d2 * (cloud.point(i) - cloud.point(k)).squaredNorm();
      const double value = radial_profile(spec, s, 0).phi;
      kernel(i, k) = value;
      kernel(k, i) = value;
    }
  }
  return kernel;
}

double residual_tolerance(Eigen::Index m, const Vec& lambda) {
  const double scale = lambda.size() ? std::max(1.0, lambda.lpNorm<Eigen::Infinity>()) : 1.0;
  return 1e-9 * static_cast<double>(m) * scale;
}

DensitySolution solve_density(const Mat& kernel_matrix, double alpha,
                              const SolverOptions& options) {
  const Eigen::Index m = kernel_matrix.rows();
  if (m == 0 || kernel_matrix.cols() != m) {
    throw SolveFailed("kernel matrix must be square and non-empty");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw SolveFailed("regularization alpha must be finite and nonnegative");
  }
  const double md = static_cast<double>(m);
  Mat system = kernel_matrix;
  system.diagonal().array() += md * alpha;
  const Vec rhs = Vec::Constant(m, md);

  Eigen::SelfAdjointEigenSolver<Mat> eig(system);
  if (eig.info() != Eigen::Success) {
    throw SolveFailed("symmetric eigendecomposition did not converge");
  }
  const Vec& ev = eig.eigenvalues();  // ascending
  const double lmax = ev(m - 1);
  const double lmin = ev(0);
  DensitySolution sol;
  sol.alpha = alpha;
  sol.condition_estimate =
      lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  sol.ill_conditioned = sol.condition_estimate > options.ill_conditioned_threshold;

  auto residual_of = [&](const Vec& lambda) {
    return (system * lambda - rhs).lpNorm<Eigen::Infinity>();
  };

  if (!sol.ill_conditioned) {
    Eigen::LLT<Mat> llt(system);
    if (llt.info() == Eigen::Success) {
      Vec lambda = llt.solve(rhs);
      const double res = residual_of(lambda);
      if (lambda.allFinite() && res <= residual_tolerance(m, lambda)) {
        sol.lambda = std::move(lambda);
        sol.residual = res;
        sol.solver_path = SolverPath::SPDFactorization;
        return sol;
      }
    }
  }

  const Mat& basis = eig.eigenvectors();
  const double cutoff = options.truncation * lmax;
  Vec coeff = basis.transpose() * rhs;
  for (Eigen::Index j = 0; j < m; ++j) {
    coeff(j) = ev(j) > cutoff ? coeff(j) / ev(j) : 0.0;
  }
  Vec lambda = basis * coeff;
  const double res = residual_of(lambda);
  if (!lambda.allFinite() || res > residual_tolerance(m, lambda)) {
    throw SolveFailed("truncated eigen solve left residual " + std::to_string(res) +
                      " above tolerance " +
                      std::to_string(residual_tolerance(m, lambda)));
  }
  sol.lambda = std::move(lambda);
  sol.residual = res;
  sol.solver_path = SolverPath::TruncatedEigen;
  return sol;
}

}  // namespace cloudsig
