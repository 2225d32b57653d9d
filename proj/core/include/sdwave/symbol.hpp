#pragma once

// Frequency-side objects for the per-mode equation
//
//   û_tt + ν r⁴ û_t + r² û = 0,   r = |ξ|,
//
// whose characteristic roots are λ± = ½(-ν r⁴ ± sqrt(ν² r⁸ - 4 r²)).
// Every function here is pure and may be called concurrently.

#include <complex>

#include "sdwave/params.hpp"

namespace sdwave {

enum class RootRegime { zero, complex_pair, double_root, real_pair };

const char* to_string(RootRegime regime);

struct CharRoots {
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  RootRegime regime = RootRegime::zero;
};

/// Values of the evolution multipliers K̂₀(t, r), K̂₁(t, r) and their time
/// derivatives. The multipliers are real for real (ν, t, r); they are stored
/// as doubles.
struct PropagatorValue {
  double k0 = 1.0;
  double k1 = 0.0;
  double dk0 = 0.0;
  double dk1 = 1.0;
};

struct SymbolTolerances {
  /// Relative discriminant threshold below which the roots count as double.
  double disc = 1e-10;
  /// Below |λ₊ - λ₋| t < series_switch the confluent series is used.
  double series_switch = 1e-4;
};

CharRoots characteristic_roots(const DampingParams& params, double xi_mag);
CharRoots characteristic_roots(double nu, double xi_mag,
                               const SymbolTolerances& tol = {});

PropagatorValue propagator(const DampingParams& params, double t, double xi_mag);
PropagatorValue propagator(double nu, double t, double xi_mag,
                           const SymbolTolerances& tol = {});

/// Largest admissible cutoff scale: ρ must stay strictly below ½(2/ν)^{1/3}.
double max_cutoff_scale(double nu);
/// 0.9 of the admissible bound.
double default_cutoff_scale(double nu);
/// Radius of the double root, (2/ν)^{1/3}.
double double_root_radius(double nu);

struct BandWeights {
  double low = 0.0;
  double mid = 0.0;
  double high = 0.0;
};

/// Smooth radial partition of unity with plateaus χ_L = 1 on r <= ρ/2,
/// χ_L = 0 on r >= ρ, χ_H = 0 on r <= 2ρ and χ_H = 1 on r >= 4ρ. The
/// transitions use the exp(-1/x) C^∞ step.
class BandCutoffs {
 public:
  BandCutoffs(double nu, double rho);
  static BandCutoffs with_default_scale(double nu);

  double rho() const { return rho_; }
  double nu() const { return nu_; }

  BandWeights weights(double xi_mag) const;

 private:
  double nu_;
  double rho_;
};

BandWeights band_weights(const BandCutoffs& cutoffs, double xi_mag);

/// C^∞ step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);

/// Diffusion-wave profile symbols Ĥ₀ = e^{-κ t r⁴/2} cos(t r) and
/// Ĥ₁ = e^{-κ t r⁴/2} sin(t r)/r with κ = ν (default) or κ = 1 (literal form).
struct ProfileSymbols {
  double h0 = 1.0;
  double h1 = 0.0;
};

enum class ProfileConvention { with_nu, literal };

ProfileSymbols profile_symbol(const DampingParams& params, double t, double xi_mag,
                              ProfileConvention convention = ProfileConvention::with_nu);
ProfileSymbols profile_symbol(double nu, double t, double xi_mag,
                              ProfileConvention convention = ProfileConvention::with_nu);

/// Exact integrals of K̂₁ used by the exponential integrators:
///   first  = ∫₀^h K̂₁(s) ds,
///   second = ∫₀^h (h - s) K̂₁(s) ds.
/// Evaluated in closed form from the roots; confluent-safe.
struct DuhamelWeights {
  double first = 0.0;
  double second = 0.0;
};

DuhamelWeights duhamel_weights(double nu, double h, double xi_mag,
                               const SymbolTolerances& tol = {});

/// ∫₀¹ u^j e^{x u} du for x <= 0, accurate to a few ulps for all x.
double exp_moment(int j, double x);

}  // namespace sdwave
