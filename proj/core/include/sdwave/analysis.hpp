#pragma once
// Post-processing of norm time series: decay-exponent fits, the table of
// theoretical rates, the time-weighted solution-space norms and the
// admissible growth orders of the semilinear problems.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sdwave/series.hpp"

namespace sdwave {

// ---------------------------------------------------------------- rates --

/// Which estimate family a rate comes from.
///   linear     — the linear problem, data in L¹ ∩ (Sobolev) (r = 1 branch);
///   power      — a·∇|u|^p   (and the mixed j = 0 problem), n = 2..5;
///   derivative — a·∇|u_t|^p (and the mixed j = 1 problem), n = 2..4.
enum class RateSource { linear, power, derivative };

const char* to_string(RateSource source);
RateSource rate_source_from_string(const std::string& name);

enum class RateKind {
  power,        // (1+t)^exponent
  sqrt_log,     // √log(t+e) growth
  unsupported,  // no estimate applies
};

/// Exponent as an affine function c + c_s·s + c_ε·ε, so entries that depend
/// on the Sobolev order or on ε are stored exactly.
struct RateEntry {
  RateKind kind = RateKind::unsupported;
  double constant = 0.0;
  double s_coefficient = 0.0;
  double eps_coefficient = 0.0;
  /// Human-readable form, e.g. "(1+t)^{-n/8+1/4}" or "sqrt(log(t+e))".
  std::string formula;
  /// Why the entry is unsupported (empty otherwise).
  std::string reason;

  bool supported() const { return kind != RateKind::unsupported; }
  double exponent(double s, double eps) const {
    return constant + s_coefficient * s + eps_coefficient * eps;
  }
};

/// Data class of a linear run: which datum is nonzero and how many Sobolev
/// derivatives it has. Infinite ℓ means smooth data (Gaussian families).
struct DataClass {
  enum class Datum { u0, u1 } datum = Datum::u0;
  double ell1 = std::numeric_limits<double>::infinity();
  double ell2 = std::numeric_limits<double>::infinity();
};

/// Rate for ‖∂_t^j u‖_{Ḣ^s} (s = 0 is L²).
///
/// For the linear source, s ranges over the admissible window of the
/// estimate (‖u‖: s = 0 or 1 <= s <= min{ℓ₁+6, ℓ₂+4}; ‖u_t‖: 0 <= s <=
/// min{ℓ₁+2, ℓ₂}) and the returned exponent is the slowest of the L¹ and
/// Sobolev terms. For the nonlinear sources only s = 0 and s = n/2+ε exist.
RateEntry theoretical_rate(RateSource source, int dim, Field field, double s, double eps,
                           const DataClass& data = {});

struct RateTableRow {
  RateSource source;
  int dim;
  Field field;
  /// "L2", "top" (order n/2+ε) or "s" (generic order, linear only).
  std::string order;
  DataClass::Datum datum;  // meaningful for the linear rows only
  RateEntry entry;
};

/// Every estimate, one row each: the linear L¹-term rates for n = 1..5 and
/// the nonlinear decay rates of both convection problems.
std::vector<RateTableRow> rate_table();

// ----------------------------------------------------------------- fits --

enum class FitModel { power, sqrt_log, log };

const char* to_string(FitModel model);
FitModel fit_model_from_string(const std::string& name);

struct FitWindow {
  double t_a = 0.0;
  double t_b = 0.0;
};

struct FitResult {
  FitModel model = FitModel::power;
  FitWindow window;
  std::size_t samples = 0;
  /// power: d log v / d log(1+t); log: d log v / d log log(t+e); sqrt_log: ½.
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  /// max/min of v/√log(t+e) over the window (sqrt_log only, else 0).
  double band = 0.0;
};

/// Last decade of trusted times: [t_last/10, t_last].
FitWindow default_window(const std::vector<double>& times, const std::vector<bool>& contaminated);

/// Least-squares fit over the samples with t_a <= t <= t_b. Requires at
/// least 8 samples, all values positive, and no contaminated sample in the
/// window.
FitResult fit_decay(const std::vector<double>& times, const std::vector<double>& values,
                    const std::vector<bool>& contaminated, FitModel model, FitWindow window);
FitResult fit_decay(const NormSeries& series, const std::string& column, FitModel model,
                    std::optional<FitWindow> window = std::nullopt);

/// Kendall's τ_a of the values against their order.
double kendall_tau(const std::vector<double>& values);

/// Observed-versus-theoretical gate for one quantity.
struct RateComparison {
  std::string quantity;
  RateEntry theory;
  /// Theoretical exponent at the requested (s, ε); NaN unless power-gated.
  double expected = std::numeric_limits<double>::quiet_NaN();
  FitResult fit;
  double tolerance = 0.0;
  /// False when the series is identically zero or no estimate applies; such
  /// comparisons pass vacuously.
  bool gated = true;
  bool pass = false;
  std::string detail;
};

/// Power entries: |slope - exponent| <= tolerance. √log entries: band <=
/// band_limit under the sqrt_log model.
RateComparison compare_rate(const std::string& quantity, const RateEntry& theory,
                            const NormSeries& series, double eps, double s, double tolerance,
                            double band_limit = 1.5, std::optional<FitWindow> window = {});

/// Gate on the profile residual of a linear run: the fitted power slope of
/// the residual over the window is at most -n/8 + margin, and
/// residual·t^{n/8-1/4} decreases strictly across the window, i.e. the
/// residual is o(leading profile scale).
struct ProfileGate {
  bool gated = true;  // false for an identically zero residual
  FitResult fit;
  double slope_limit = 0.0;
  bool slope_ok = false;
  bool decreasing = false;
  bool pass = false;
  std::string detail;
};

ProfileGate profile_gate(const ProfileResidualSeries& series, int dim, double margin = 0.1,
                         std::optional<FitWindow> window = std::nullopt);

// -------------------------------------------------- solution-space norms --

enum class SpaceKind { X1, X2, Y };

const char* to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

/// The space used by the existence argument: X1 (j = 0, n <= 4), X2 (j = 0,
/// n = 5) or Y (j = 1).
SpaceKind solution_space_for(int dim, int j);

struct SolutionSpaceNorm {
  SpaceKind kind = SpaceKind::X1;
  double value = 0.0;
  /// Time attaining the supremum (NaN for an empty trajectory).
  double sup_time = std::numeric_limits<double>::quiet_NaN();
  /// Column name and sup of each weighted term.
  std::vector<std::pair<std::string, double>> term_sups;
};

/// Weight on ‖u‖ in X1 and Y: log^{-1/2}(τ+e) for n = 2, (1+τ)^{n/8-1/4} for
/// n = 3, 4.
double ell_weight(int dim, double tau);

/// sup over the trusted samples of the weighted combination. Needs columns
/// u_L2, u_H{n/2+ε}, ut_L2 (and ut_H{n/2+ε} for Y).
SolutionSpaceNorm solution_space_norm(const NormSeries& trajectory, SpaceKind kind, int dim,
                                      double eps);

/// Interpolation exponents of the n = 5 argument and the smallest admissible
/// ε₂ = 13ε / (4(5+2ε)).
double theta0_n5(double eps);
double theta1_n5(double eps);
double epsilon2_n5(double eps);

// ------------------------------------------------- admissible exponents --

struct Threshold {
  char symbol = 'p';
  double value = 0.0;
  bool strict = false;
  /// "p > 5 (strict)" / "p ≥ 3".
  std::string describe() const;
  bool admits(double x) const { return strict ? x > value : x >= value; }
};

struct AdmissibleExponent {
  bool supported = false;
  int dim = 0;
  int j = 0;
  bool mixed = false;
  /// Problem family and its dimension range, e.g. "a·∇|u|^p, n = 2..5".
  std::string family;
  std::vector<Threshold> thresholds;  // p, then q for the mixed problems
  /// Set when unsupported.
  std::string message;

  /// True when every threshold admits the given exponents.
  bool admits(double p, std::optional<double> q = std::nullopt) const;
  std::string describe() const;
};

AdmissibleExponent admissible_exponent(int dim, int j, bool mixed);

}  // namespace sdwave
