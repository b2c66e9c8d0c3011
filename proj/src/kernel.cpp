#include "vdm/kernel.hpp"

#include <cmath>
#include <sstream>

#include "vdm/errors.hpp"

namespace vdm {

double KernelSpec::operator()(double u) const {
  if (u < 0.0 || u >= 1.0) return 0.0;
  switch (kind) {
    case KernelKind::epanechnikov: return 1.0 - u * u;
    case KernelKind::gaussian_truncated: return std::exp(-a * u * u);
  }
  return 0.0;
}

KernelSpec KernelSpec::parse(const std::string& name) {
  if (name == "epanechnikov") return epanechnikov();
  if (name == "gaussian") return gaussian();
  const std::string prefix = "gaussian:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string arg = name.substr(prefix.size());
    try {
      const double a = std::stod(arg);
      if (!(a > 0.0)) throw DataError("kernel exponent must be positive: " + name);
      return gaussian(a);
    } catch (const std::invalid_argument&) {
      throw DataError("cannot parse kernel exponent: " + name);
    }
  }
  throw DataError("unknown kernel: " + name);
}

std::string KernelSpec::name() const {
  if (kind == KernelKind::epanechnikov) return "epanechnikov";
  std::ostringstream out;
  out << "gaussian:" << a;
  return out.str();
}

} // namespace vdm
