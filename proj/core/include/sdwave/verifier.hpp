#pragma once
// Numerical certification of the inequality toolbox.
//
// A check samples both sides of an inequality, reports the largest observed
// ratio |lhs| / |rhs| (the "measured constant"), and repeats the measurement
// on a twice-as-fine sample. The ratio between the two sups is the
// refinement growth. A check passes when the growth is at most 1.05, the
// ratio shows no upward trend at late times, and any check-specific gate
// holds. Finite sampling cannot prove that a constant exists; this stability
// test is the practical substitute.
//
// Checks are addressed by selectors of the form  id[:key=value,...], e.g.
//   integral-power:alpha=1,beta=1
//   band-decay:kernel=1,band=low,n=2,j=0,alpha=0

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdwave/grid.hpp"

namespace sdwave {

struct BoundCheckReport {
  std::string id;
  /// Parameters as (key, JSON literal) pairs, in selector order.
  std::vector<std::pair<std::string, std::string>> params;
  std::string sample;
  double measured = 0.0;
  double refinement_ratio = 1.0;
  bool pass = false;
  bool unsupported = false;
  /// Failure reasons, offending samples, or notes.
  std::string detail;
  /// Calibrated constants, fitted slopes and other diagnostics.
  std::vector<std::pair<std::string, double>> extras;

  std::string param_json() const;
};

struct VerifierOptions {
  std::uint64_t seed = 1;
  int jobs = 1;
  double growth_limit = 1.05;
  double tau_limit = 0.3;
  double late_slope_limit = 0.02;
};

// --------------------------------------------------------- typed checks --

enum class Band { low, mid, high };
const char* to_string(Band band);

/// Pointwise multiplier bounds. `band` low compares with e^{-c t r⁴} r^{s+j-k};
/// high covers χ_M + χ_H against the two-term bounds with the r^{-2}
/// exponential; mid fits the exponential decay rate at fixed radii.
struct PointwiseCase {
  Band band = Band::low;
  int kernel = 0;  // K̂₀ or K̂₁
  int j = 0;       // time derivative
  double s = 0.0;
  double nu = 1.0;
  double t_min = 0.1;
  double t_max = 1e3;
  int per_decade = 40;
};

BoundCheckReport check_pointwise(const PointwiseCase& c, const VerifierOptions& opt = {});

/// L² gains of the band-restricted evolution operators on Gaussian data.
struct BandDecayCase {
  int kernel = 0;
  Band band = Band::low;  // low, or high for χ_M + χ_H
  int dim = 3;
  int j = 0;
  double alpha = 0.0;
  double lebesgue = 1.0;  // r in [1, 2]
  double beta1 = 0.0;
  double beta2 = 0.0;
  double nu = 1.0;
  double t_min = 1.0;
  double t_max = 1e4;
  int per_decade = 10;
};

enum class BandDecayBranch { power, sqrt_log, growth };

/// Rate of the bound for the low band; `exponent` is for (1+t) (power) or
/// t (growth).
struct BandDecayRate {
  BandDecayBranch branch = BandDecayBranch::power;
  double exponent = 0.0;
};
BandDecayRate band_decay_rate(const BandDecayCase& c);

BoundCheckReport check_band_decay(const BandDecayCase& c, const VerifierOptions& opt = {});

enum class IntegralRegime { above_one, equal_one, below_one };
const char* to_string(IntegralRegime regime);

/// (α, β) of the convolution integrals, and c for the exponential kernel.
struct IntegralLemmaCase {
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
  double t_min = 1.0;
  double t_max = 1e4;
  int per_decade = 10;

  /// Classification by max{α, β}.
  IntegralRegime regime() const;
};

/// ∫₀ᵗ (1+t-τ)^{-α} (1+τ)^{-β} dτ.
double integral_power(double alpha, double beta, double t);
/// ∫₀ᵗ e^{-c(t-τ)} (t-τ)^{-α} (1+τ)^{-β} dτ, 0 <= α < 1.
double integral_exp(double c, double alpha, double beta, double t);
/// The claimed bound without constant.
double integral_power_bound(double alpha, double beta, double t);

BoundCheckReport check_integral_power(const IntegralLemmaCase& c, const VerifierOptions& opt = {});
BoundCheckReport check_integral_exp(const IntegralLemmaCase& c, const VerifierOptions& opt = {});

/// Homogeneous Sobolev ratio ‖v‖_{Ḣ^s_r} / (‖v‖_{L^{r0}}^{1-θ} ‖v‖_{Ḣ^σ_{r1}}^θ).
/// r = r0 = r1 = 2 is evaluated exactly in Fourier space; other exponents use
/// physical-grid quadrature and are approximate.
struct GagliardoNirenbergCase {
  int dim = 2;
  double s = 1.0;
  double sigma = 1.1;
  double r = 2.0;
  double r0 = 2.0;
  double r1 = 2.0;
  int fields = 50;
  int points = 64;
  double half_width = 8.0;

  double theta() const;
  /// Throws InvalidArgument unless 1 < r, r0, r1 < ∞, σ > 0, 0 <= s < σ and
  /// s/σ <= θ <= 1.
  void validate() const;
};

struct SobolevCase {
  int dim = 2;
  double eps = 0.1;
  int fields = 50;
  int points = 64;
  double half_width = 8.0;

  double theta() const { return (dim / 2.0) / (dim / 2.0 + eps); }
};

/// Ratio of one field; NaN for the zero field.
double gagliardo_nirenberg_ratio(const PeriodicGrid& grid, std::span<const double> field,
                                 const GagliardoNirenbergCase& c);

struct SobolevSplit {
  double ratio = 0.0;      // ‖v‖_∞ / (‖v‖^{1-θ} ‖∇^{n/2+ε}v‖^θ)
  double radius = 0.0;     // R = (‖∇^{n/2+ε}v‖ / ‖v‖)^{1/(n/2+ε)}
  double a1_constant = 0.0;  // A₁ / (R^{n/2} ‖v‖)
  double a2_constant = 0.0;  // A₂ / (R^{-ε} ‖∇^{n/2+ε}v‖)
  bool trivial = false;    // zero field
};
SobolevSplit sobolev_split(const PeriodicGrid& grid, std::span<const double> field, double eps);

/// The deterministic test suite: `count` random band-limited mean-zero
/// fields followed by three Gaussians, sampled on `grid`.
std::vector<std::vector<double>> test_fields(const PeriodicGrid& grid, int count,
                                             std::uint64_t seed);

BoundCheckReport check_gagliardo_nirenberg(const GagliardoNirenbergCase& c,
                                           const VerifierOptions& opt = {});
BoundCheckReport check_sobolev_embedding(const SobolevCase& c, const VerifierOptions& opt = {});

// ------------------------------------------------------------ selectors --

struct CheckSelector {
  std::string id;
  std::vector<std::pair<std::string, std::string>> options;
  std::string text;
};

/// Known check ids.
const std::vector<std::string>& check_ids();

/// Parses "id[:key=value,...]". Throws InvalidArgument naming the offending
/// id or key; values are validated when the check is built.
CheckSelector parse_selector(const std::string& text);

std::vector<CheckSelector> default_suite();

/// A validated check, ready to run.
using PreparedCheck = std::function<BoundCheckReport(const VerifierOptions&)>;

/// Builds the typed check without running it. Throws InvalidArgument for
/// unknown keys or malformed or out-of-range values (the message names the
/// key).
PreparedCheck prepare_check(const CheckSelector& selector);

/// Runs one check. Throws InvalidArgument for unknown keys or malformed
/// values (the message names the key).
BoundCheckReport run_check(const CheckSelector& selector, const VerifierOptions& opt = {});

/// Runs the checks on `opt.jobs` threads; reports keep the selector order.
std::vector<BoundCheckReport> run_checks(const std::vector<CheckSelector>& selectors,
                                         const VerifierOptions& opt = {});

}  // namespace sdwave
