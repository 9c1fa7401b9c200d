#include "cloudsig/kernels.hpp"

#include "cloudsig/error.hpp"

#include <cmath>

namespace cloudsig {

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gauss:
      return "gauss";
    case KernelFamily::Laplace:
      return "laplace";
    case KernelFamily::RegularizedLaplace:
      return "laplace-r";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "gauss") return KernelFamily::Gauss;
  if (name == "laplace") return KernelFamily::Laplace;
  if (name == "laplace-r") return KernelFamily::RegularizedLaplace;
  throw InvalidSpec("unknown kernel family '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidSpec("kernel bandwidth delta must be positive");
  }
  if (family == KernelFamily::RegularizedLaplace && (!(r > 0.0) || !std::isfinite(r))) {
    throw InvalidSpec("regularized Laplace kernel needs r > 0");
  }
}

double KernelSpec::peak() const {
  return family == KernelFamily::RegularizedLaplace ? std::exp(-std::sqrt(r)) : 1.0;
}

RadialProfile radial_profile(const KernelSpec& spec, double s, int order) {
  RadialProfile p;
  switch (spec.family) {
    case KernelFamily::Gauss: {
      const double e = std::exp(-s);
      p.phi = e;
      if (order >= 1) p.dphi = -e;
      if (order >= 2) p.d2phi = e;
      break;
    }
    case KernelFamily::Laplace:
      p.phi = std::exp(-std::sqrt(s));
      break;
    case KernelFamily::RegularizedLaplace: {
      // q = sqrt(s + r); d/ds e^{-q} = -e^{-q} / (2q)
      const double q = std::sqrt(s + spec.r);
      const double e = std::exp(-q);
      p.phi = e;
      if (order >= 1) p.dphi = -e / (2.0 * q);
      if (order >= 2) p.d2phi = e * (1.0 / (4.0 * q * q) + 1.0 / (4.0 * q * q * q));
      break;
    }
  }
  return p;
}

KernelValue kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Vec>& v, int order) {
  spec.validate();
  if (order < 0 || order > 2) {
    throw InvalidSpec("derivative order must be 0, 1 or 2");
  }
  if (order > spec.max_order()) {
    throw DerivativeUnavailable(
        "the Laplace kernel is not differentiable at the origin; use laplace-r");
  }
  const double d2 = spec.delta * spec.delta;
  const double s = d2 * v.squaredNorm();
  const RadialProfile p = radial_profile(spec, s, order);

  KernelValue out;
  out.value = p.phi;
  if (order >= 1) {
    // grad_v phi(d^2 |v|^2) = 2 d^2 phi' v
    out.gradient = (2.0 * d2 * p.dphi) * v;
  }
  if (order >= 2) {
    Mat h = (4.0 * d2 * d2 * p.d2phi) * (v * v.transpose());
    h.diagonal().array() += 2.0 * d2 * p.dphi;
    out.hessian = 0.5 * (h + h.transpose());
  }
  return out;
}

}  // namespace cloudsig
