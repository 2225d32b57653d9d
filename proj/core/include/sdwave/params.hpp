#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sdwave {

/// Raised for invalid arguments or configuration values.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical setup of u_tt - Δu + ν(-Δ)²u_t = a·∇f(u, u_t) in R^n.
struct DampingParams {
  double nu = 1.0;
  std::vector<double> a;  // convection direction, one entry per dimension
  int dim = 1;

  /// Validated construction. An empty `a` means the zero vector.
  static DampingParams make(double nu, int dim, std::vector<double> a = {});

  void validate() const;
};

inline constexpr int kMinDim = 1;
inline constexpr int kMaxDim = 5;

/// Throws InvalidArgument unless x is finite.
void require_finite(double x, const char* what);

}  // namespace sdwave
