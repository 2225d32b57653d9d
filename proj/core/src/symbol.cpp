#include "sdwave/symbol.hpp"

#include <cmath>

#include "mode_roots.hpp"

namespace sdwave {

namespace {

void check_inputs(double nu, double t, double r) {
  require_finite(nu, "nu");
  require_finite(t, "t");
  require_finite(r, "xi_mag");
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  if (t < 0.0) throw InvalidArgument("t must be nonnegative");
  if (r < 0.0) throw InvalidArgument("xi_mag must be nonnegative");
}

}  // namespace

const char* to_string(RootRegime regime) {
  switch (regime) {
    case RootRegime::zero: return "zero";
    case RootRegime::complex_pair: return "complex-pair";
    case RootRegime::double_root: return "double";
    case RootRegime::real_pair: return "real-pair";
  }
  return "unknown";
}

CharRoots characteristic_roots(const DampingParams& params, double xi_mag) {
  return characteristic_roots(params.nu, xi_mag);
}

CharRoots characteristic_roots(double nu, double xi_mag, const SymbolTolerances& tol) {
  check_inputs(nu, 0.0, xi_mag);
  const auto roots = detail::mode_roots(nu, xi_mag, tol);
  CharRoots out;
  out.regime = roots.regime;
  switch (roots.regime) {
    case RootRegime::zero:
      break;
    case RootRegime::double_root:
      out.lambda_plus = out.lambda_minus = roots.m;
      break;
    case RootRegime::complex_pair:
      out.lambda_plus = {roots.m, roots.delta};
      out.lambda_minus = {roots.m, -roots.delta};
      break;
    case RootRegime::real_pair:
      out.lambda_plus = roots.lambda_plus;
      out.lambda_minus = roots.lambda_minus;
      break;
  }
  return out;
}

PropagatorValue propagator(const DampingParams& params, double t, double xi_mag) {
  return propagator(params.nu, t, xi_mag);
}

PropagatorValue propagator(double nu, double t, double xi_mag, const SymbolTolerances& tol) {
  check_inputs(nu, t, xi_mag);
  PropagatorValue out;
  if (xi_mag == 0.0) {
    out.k1 = t;
    return out;
  }
  if (t == 0.0) return out;

  const auto roots = detail::mode_roots(nu, xi_mag, tol);
  const double m = roots.m;
  const double dt = roots.delta * t;

  if (roots.regime == RootRegime::double_root || dt < tol.series_switch) {
    double ch = 1.0;
    double shc = 1.0;
    detail::confluent_series(roots.delta2 * t * t, ch, shc);
    const double e = std::exp(m * t);
    out.k1 = e * t * shc;
    out.k0 = e * (ch - m * t * shc);
    out.dk1 = e * (ch + m * t * shc);
  } else if (roots.regime == RootRegime::complex_pair) {
    const double omega = roots.delta;
    const double e = std::exp(m * t);
    const double s = std::sin(omega * t) / omega;
    const double c = std::cos(omega * t);
    out.k1 = e * s;
    out.k0 = e * (c - m * s);
    out.dk1 = e * (c + m * s);
  } else {
    const double lp = roots.lambda_plus;
    const double lm = roots.lambda_minus;
    const double two_delta = 2.0 * roots.delta;
    const double ep = std::exp(lp * t);
    const double em = std::exp(lm * t);
    const double gap = std::expm1(-two_delta * t);  // e^{(λ₋-λ₊)t} - 1
    out.k1 = ep * (-gap) / two_delta;
    out.k0 = ep * (1.0 + lp * gap / two_delta);
    out.dk1 = (lp * ep - lm * em) / two_delta;
  }
  out.dk0 = -roots.r2 * out.k1;
  return out;
}

double max_cutoff_scale(double nu) {
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  return 0.5 * std::cbrt(2.0 / nu);
}

double default_cutoff_scale(double nu) { return 0.9 * max_cutoff_scale(nu); }

double double_root_radius(double nu) {
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  return std::cbrt(2.0 / nu);
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double f = std::exp(-1.0 / x);
  const double g = std::exp(-1.0 / (1.0 - x));
  return f / (f + g);
}

BandCutoffs::BandCutoffs(double nu, double rho) : nu_(nu), rho_(rho) {
  require_finite(rho, "rho");
  if (!(rho > 0.0)) throw InvalidArgument("cutoff scale rho must be positive");
  if (!(rho < max_cutoff_scale(nu))) {
    throw InvalidArgument("cutoff scale rho must satisfy rho < (1/2)(2/nu)^(1/3)");
  }
}

BandCutoffs BandCutoffs::with_default_scale(double nu) {
  return BandCutoffs(nu, default_cutoff_scale(nu));
}

BandWeights BandCutoffs::weights(double r) const {
  require_finite(r, "xi_mag");
  if (r < 0.0) throw InvalidArgument("xi_mag must be nonnegative");
  BandWeights w;
  const double half = 0.5 * rho_;
  w.low = 1.0 - smooth_step((r - half) / half);
  w.high = smooth_step((r - 2.0 * rho_) / (2.0 * rho_));
  w.mid = 1.0 - w.low - w.high;
  return w;
}

BandWeights band_weights(const BandCutoffs& cutoffs, double xi_mag) {
  return cutoffs.weights(xi_mag);
}

ProfileSymbols profile_symbol(const DampingParams& params, double t, double xi_mag,
                              ProfileConvention convention) {
  return profile_symbol(params.nu, t, xi_mag, convention);
}

ProfileSymbols profile_symbol(double nu, double t, double r, ProfileConvention convention) {
  check_inputs(nu, t, r);
  if (!(t > 0.0)) throw InvalidArgument("profile symbols require t > 0");
  const double kappa = convention == ProfileConvention::with_nu ? nu : 1.0;
  const double r2 = r * r;
  const double damp = std::exp(-0.5 * kappa * t * r2 * r2);
  const double tr = t * r;
  ProfileSymbols out;
  out.h0 = damp * std::cos(tr);
  if (tr < 1e-4) {
    out.h1 = damp * t * (1.0 - tr * tr / 6.0);
  } else {
    out.h1 = damp * std::sin(tr) / r;
  }
  return out;
}

}  // namespace sdwave
