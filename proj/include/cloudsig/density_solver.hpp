#pragma once

#include "cloudsig/kernels.hpp"
#include "cloudsig/point_cloud.hpp"

#include <string_view>

namespace cloudsig {

enum class SolverPath { SPDFactorization, TruncatedEigen };

std::string_view to_string(SolverPath path);
SolverPath parse_solver_path(std::string_view name);

struct SolverOptions {
  // Condition estimates above this switch to the truncated eigen path and
  // mark the solution ill-conditioned (1e-2 / machine epsilon).
  double ill_conditioned_threshold = 1e-2 / 2.220446049250313e-16;
  // Eigenvalues below truncation * lambda_max are dropped on the fallback path.
  double truncation = 1e-14;
};

// Coefficients of the signature function together with how they were obtained.
struct DensitySolution {
  Vec lambda;
  double alpha = 0.0;
  double condition_estimate = 1.0;
  SolverPath solver_path = SolverPath::SPDFactorization;
  // || (m alpha I + M) lambda - m 1 ||_inf
  double residual = 0.0;
  bool ill_conditioned = false;
};

// M(i, k) = K(x^i - x^k). Throws DuplicatePoints if two points coincide.
Mat build_kernel_matrix(const PointCloud& cloud, const KernelSpec& spec);

// Solves (m alpha I + M) lambda = m 1 with m = M.rows().
//
// The SPD path (Cholesky) is taken when the extreme-eigenvalue condition
// estimate is below the threshold. Otherwise, or when the factorization
// fails, the system is solved through the symmetric eigendecomposition with
// small eigenvalues truncated. Throws SolveFailed if the fallback residual
// still exceeds 1e-9 * m * max(1, |lambda|_inf).
DensitySolution solve_density(const Mat& kernel_matrix, double alpha,
                              const SolverOptions& options = {});

// Residual bound every returned solution satisfies.
double residual_tolerance(Eigen::Index m, const Vec& lambda);

}  // namespace cloudsig
