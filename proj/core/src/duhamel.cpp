#include <cmath>
#include <complex>

#include "mode_roots.hpp"
#include "sdwave/symbol.hpp"

namespace sdwave {

namespace {

constexpr double kWeightSeriesSwitch = 0.5;

// φ₁(z) = (e^z - 1)/z and φ₂(z) = (e^z - 1 - z)/z², Re z <= 0.
template <typename T>
T phi1(T z) {
  if (std::abs(z) < 1.0) {
    T sum = 1.0;
    T term = 1.0;
    for (int k = 1; k < 30; ++k) {
      term *= z / static_cast<double>(k + 1);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

template <typename T>
T phi2(T z) {
  if (std::abs(z) < 1.0) {
    T sum = 0.5;
    T term = 0.5;
    for (int k = 1; k < 30; ++k) {
      term *= z / static_cast<double>(k + 2);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(z) - 1.0 - z) / (z * z);
}

}  // namespace

double exp_moment(int j, double x) {
  if (j < 0) throw InvalidArgument("exp_moment requires j >= 0");
  if (x > 0.0) throw InvalidArgument("exp_moment requires x <= 0");
  const double y = -x;
  if (y <= 50.0) {
    // e^{-y} Σ_n y^n / ((j+1)(j+2)...(j+1+n)): positive terms only.
    double term = 1.0 / (j + 1.0);
    double sum = term;
    for (int n = 1; n < 1000; ++n) {
      term *= y / (j + 1.0 + n);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::exp(-y) * sum;
  }
  // j!/y^{j+1} (1 - e^{-y} Σ_{k<=j} y^k/k!); the correction is tiny here.
  double partial = 0.0;
  double term = 1.0;
  double factorial = 1.0;
  for (int k = 0; k <= j; ++k) {
    if (k > 0) {
      term *= y / k;
      factorial *= k;
    }
    partial += term;
  }
  return factorial / std::pow(y, j + 1) * (1.0 - std::exp(-y) * partial);
}

DuhamelWeights duhamel_weights(double nu, double h, double r, const SymbolTolerances& tol) {
  require_finite(nu, "nu");
  require_finite(h, "h");
  require_finite(r, "xi_mag");
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  if (h < 0.0) throw InvalidArgument("step must be nonnegative");
  if (r < 0.0) throw InvalidArgument("xi_mag must be nonnegative");

  DuhamelWeights w;
  if (h == 0.0) return w;
  if (r == 0.0) {
    w.first = 0.5 * h * h;
    w.second = h * h * h / 6.0;
    return w;
  }

  const auto roots = detail::mode_roots(nu, r, tol);
  const double dh = roots.delta * h;

  // The closed forms divide a difference of φ values by 2δ and lose about
  // |m|/δ ulps, so the series (which converges for any δh) takes over well
  // beyond the propagator's switch.
  if (roots.regime == RootRegime::double_root || dh < kWeightSeriesSwitch) {
    // Divided difference f[m+δ, m-δ] = Σ_k δ^{2k}/(2k+1)! f^{(2k+1)}(m).
    const double x = roots.m * h;
    const double d = roots.delta2 * h * h;
    double coef = 1.0;  // d^k / (2k+1)!
    double s1 = 0.0;
    double s2 = 0.0;
    for (int k = 0; k < 30; ++k) {
      if (k > 0) coef *= d / ((2.0 * k) * (2.0 * k + 1.0));
      const double a = exp_moment(2 * k + 1, x);
      const double b = exp_moment(2 * k + 2, x);
      const double t1 = coef * a;
      const double t2 = coef * (a - b);
      s1 += t1;
      s2 += t2;
      if (std::abs(t1) <= 1e-18 * std::abs(s1) && std::abs(t2) <= 1e-18 * std::abs(s2)) break;
    }
    w.first = h * h * s1;
    w.second = h * h * h * s2;
  } else if (roots.regime == RootRegime::complex_pair) {
    const std::complex<double> z(roots.m * h, roots.delta * h);
    w.first = h * phi1(z).imag() / roots.delta;
    w.second = h * h * phi2(z).imag() / roots.delta;
  } else {
    const double zp = roots.lambda_plus * h;
    const double zm = roots.lambda_minus * h;
    const double two_delta = 2.0 * roots.delta;
    w.first = h * (phi1(zp) - phi1(zm)) / two_delta;
    w.second = h * h * (phi2(zp) - phi2(zm)) / two_delta;
  }
  return w;
}

}  // namespace sdwave
