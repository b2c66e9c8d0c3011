#pragma once

#include <string>

namespace vdm {

enum class KernelKind { epanechnikov, gaussian_truncated };

/// Compactly supported kernel on [0,1): positive, C^2 on [0,1), monotone
/// decreasing, zero outside.
struct KernelSpec {
  KernelKind kind = KernelKind::gaussian_truncated;
  double a = 5.0; // exponent of the truncated gaussian exp(-a u^2)

  double operator()(double u) const;

  static KernelSpec epanechnikov() { return {KernelKind::epanechnikov, 0.0}; }
  static KernelSpec gaussian(double a = 5.0) {
    return {KernelKind::gaussian_truncated, a};
  }

  /// Parses "epanechnikov", "gaussian" or "gaussian:<a>".
  static KernelSpec parse(const std::string& name);
  std::string name() const;
};

} // namespace vdm
