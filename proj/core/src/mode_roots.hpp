#pragma once

#include <cmath>

#include "sdwave/symbol.hpp"

namespace sdwave::detail {

// Roots of λ² + ν r⁴ λ + r² = 0 written as λ± = m ± δ with m = -ν r⁴/2 and
// δ² = (ν² r⁸ - 4 r²)/4 real. In the real regime λ₊ is recovered from
// λ₊ λ₋ = r² to avoid cancellation in m + δ.
struct ModeRoots {
  double r2 = 0.0;
  double m = 0.0;
  double delta2 = 0.0;
  double delta = 0.0;  // sqrt|δ²|: δ (real pair) or ω (complex pair)
  double lambda_plus = 0.0;   // real regime only
  double lambda_minus = 0.0;  // real regime only
  RootRegime regime = RootRegime::zero;
};

inline ModeRoots mode_roots(double nu, double r, const SymbolTolerances& tol) {
  ModeRoots out;
  if (r == 0.0) return out;
  const double r2 = r * r;
  const double r4 = r2 * r2;
  const double b = nu * r4;
  const double nu_r3 = nu * r2 * r;
  const double inner = nu_r3 * nu_r3 - 4.0;  // disc / r²
  out.r2 = r2;
  out.m = -0.5 * b;
  out.delta2 = 0.25 * r2 * inner;
  const double disc = r2 * inner;
  if (std::abs(disc) <= tol.disc * std::max(1.0, b * b)) {
    out.regime = RootRegime::double_root;
    out.delta = std::sqrt(std::abs(out.delta2));
    out.lambda_plus = out.lambda_minus = out.m;
  } else if (inner < 0.0) {
    out.regime = RootRegime::complex_pair;
    out.delta = 0.5 * r * std::sqrt(-inner);
  } else {
    out.regime = RootRegime::real_pair;
    out.delta = 0.5 * r * std::sqrt(inner);
    out.lambda_minus = out.m - out.delta;
    out.lambda_plus = r2 / out.lambda_minus;
  }
  return out;
}

// cosh(δt) and sinh(δt)/(δt) as power series in x = δ² t² (x may be negative).
inline void confluent_series(double x, double& ch, double& shc) {
  double term_c = 1.0;
  double term_s = 1.0;
  ch = 1.0;
  shc = 1.0;
  for (int k = 1; k < 60; ++k) {
    term_c *= x / ((2.0 * k - 1.0) * (2.0 * k));
    term_s *= x / ((2.0 * k) * (2.0 * k + 1.0));
    ch += term_c;
    shc += term_s;
    if (std::abs(term_c) <= 1e-18 * std::abs(ch) &&
        std::abs(term_s) <= 1e-18 * std::abs(shc)) {
      break;
    }
  }
}

}  // namespace sdwave::detail
