#include "sdwave/params.hpp"

#include <cmath>

namespace sdwave {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InvalidArgument(std::string(what) + " must be finite");
  }
}

DampingParams DampingParams::make(double nu, int dim, std::vector<double> a) {
  DampingParams p;
  p.nu = nu;
  p.dim = dim;
  p.a = a.empty() ? std::vector<double>(dim > 0 ? dim : 0, 0.0) : std::move(a);
  p.validate();
  return p;
}

void DampingParams::validate() const {
  require_finite(nu, "nu");
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  if (dim < kMinDim || dim > kMaxDim) {
    throw InvalidArgument("dimension out of supported range 1..5");
  }
  if (static_cast<int>(a.size()) != dim) {
    throw InvalidArgument("convection vector a must have exactly dim entries");
  }
  for (double ai : a) require_finite(ai, "convection vector entry");
}

}  // namespace sdwave
