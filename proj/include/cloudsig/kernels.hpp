#pragma once

#include "cloudsig/point_cloud.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cloudsig {

enum class KernelFamily { Gauss, Laplace, RegularizedLaplace };

std::string_view to_string(KernelFamily family);
// Accepts "gauss", "laplace" and "laplace-r". Throws InvalidSpec otherwise.
KernelFamily parse_kernel_family(std::string_view name);

// Radial kernel K(delta * v) with
//   Gauss               K(x) = exp(-|x|^2)
//   Laplace             K(x) = exp(-|x|)
//   RegularizedLaplace  K(x) = exp(-sqrt(|x|^2 + r))
struct KernelSpec {
  KernelFamily family = KernelFamily::Gauss;
  double r = 1e-6;  // only read for RegularizedLaplace
  double delta = 1.0;

  static KernelSpec gauss(double delta = 1.0) { return {KernelFamily::Gauss, 0.0, delta}; }
  static KernelSpec laplace(double delta = 1.0) { return {KernelFamily::Laplace, 0.0, delta}; }
  static KernelSpec regularized_laplace(double r = 1e-6, double delta = 1.0) {
    return {KernelFamily::RegularizedLaplace, r, delta};
  }

  // Throws InvalidSpec when delta <= 0 or (RegularizedLaplace and r <= 0).
  void validate() const;
  // Highest derivative order available for this family.
  int max_order() const { return family == KernelFamily::Laplace ? 0 : 2; }
  // K(0).
  double peak() const;
};

// The kernel as a function of the squared scaled radius s = |delta v|^2:
// K = phi(s). Derivatives are with respect to s. Only the orders up to the
// one requested are filled.
struct RadialProfile {
  double phi = 0.0;
  double dphi = 0.0;
  double d2phi = 0.0;
};

// No validation; hot path for matrix assembly and model evaluation.
RadialProfile radial_profile(const KernelSpec& spec, double s, int order);

struct KernelValue {
  double value = 0.0;
  std::optional<Vec> gradient;
  std::optional<Mat> hessian;
};

// Value and (for order >= 1) gradient and Hessian of v -> K(delta v).
// Throws InvalidSpec for an invalid spec or order outside [0, 2], and
// DerivativeUnavailable when derivatives of the unregularized Laplace
// kernel are requested.
KernelValue kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Vec>& v, int order);

}  // namespace cloudsig
