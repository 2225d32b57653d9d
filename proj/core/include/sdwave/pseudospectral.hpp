#pragma once

// Semilinear evolution on a periodic box:
//
//   u_tt - Δu + ν(-Δ)² u_t = a·∇|∂_t^j u|^q  (+ |∂_t^j u|^p for the mixed problem)
//
// The linear part is propagated exactly per mode; the Duhamel integral is
// approximated by exponential time differencing with exact mode-wise weights.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sdwave/grid.hpp"
#include "sdwave/params.hpp"
#include "sdwave/radial.hpp"
#include "sdwave/series.hpp"
#include "sdwave/symbol.hpp"

namespace sdwave {

struct GridState {
  double time = 0.0;
  std::vector<cplx> u_hat;
  std::vector<cplx> v_hat;  // spectrum of u_t
};

/// Pure convection a·∇|∂_t^j u|^p, or, when `q` is set, the mixed form
/// |∂_t^j u|^p + a·∇|∂_t^j u|^q. A zero `a` without a source is the linear
/// problem.
struct NonlinearitySpec {
  int j = 0;
  double p = 2.0;
  std::optional<double> q;
  std::vector<double> a;

  bool mixed() const { return q.has_value(); }
  double convection_exponent() const { return q ? *q : p; }
  bool has_convection() const;
  /// Throws InvalidArgument on j ∉ {0,1}, p <= 1, q <= 1 or |a| != dim.
  void validate(int dim) const;
};

enum class Scheme { etd1, etd2 };

const char* to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct StepperConfig {
  double dt = 0.0;
  Scheme scheme = Scheme::etd2;
  bool dealias = true;
  double t_end = 0.0;
  /// Time between recorded samples; a multiple of dt (rounded to steps).
  double output_interval = 0.0;

  void validate() const;
};

/// Max |field| above which a run is declared to have left the small-data
/// regime.
inline constexpr double kBlowUpThreshold = 1e8;

/// A spectral right-hand side; returns false when it detects blow-up.
using SpectralForcing = std::function<bool(const GridState&, std::vector<cplx>&)>;

enum class RunStatus { completed, blow_up, non_finite };

const char* to_string(RunStatus status);

struct RunResult {
  RunStatus status = RunStatus::completed;
  double last_valid_time = 0.0;
  std::size_t steps = 0;
  NormSeries norms;
  GridState final_state;
};

class PseudospectralSolver {
 public:
  PseudospectralSolver(PeriodicGrid grid, double nu, NonlinearitySpec nonlinearity,
                       StepperConfig stepper);

  const PeriodicGrid& grid() const { return grid_; }
  double nu() const { return nu_; }
  const NonlinearitySpec& nonlinearity() const { return nl_; }
  const StepperConfig& stepper() const { return cfg_; }
  /// Fractional order used for ∇^{n/2+ε} norms.
  double epsilon() const { return epsilon_; }
  void set_epsilon(double eps);

  GridState initial_state(std::span<const double> u0, std::span<const double> u1);
  /// Samples radial closed-form data at the grid points.
  GridState initial_state(const RadialProfile& u0, const RadialProfile& u1);

  /// Exact linear flow by dt (any dt >= 0).
  GridState linear_step(const GridState& state, double dt) const;

  /// N̂ for the configured nonlinearity. Returns false on blow-up
  /// (max |∂_t^j u| > kBlowUpThreshold); `out` is then unspecified.
  bool nonlinear_rhs(const GridState& state, std::vector<cplx>& out);

  /// One ETD step of size stepper().dt with the configured nonlinearity.
  RunStatus etd_step(GridState& state);
  /// Same step with an arbitrary spectral forcing (manufactured solutions).
  RunStatus etd_step(GridState& state, const SpectralForcing& forcing);

  /// Columns u_L2, u_H{n/2+ε}, ut_L2, ut_H{n/2+ε} at the current state.
  std::vector<double> norms(const GridState& state) const;
  std::vector<std::string> norm_names() const;

  /// Advances to t_end; samples at t = 0 and every output interval. Samples
  /// after `trusted_until` are flagged as boundary-contaminated. The
  /// callback, if set, sees every sampled state.
  RunResult run(GridState state, double trusted_until = INFINITY,
                const std::function<void(const GridState&)>& on_sample = {});

  /// Physical values of u (or u_t) for snapshot output.
  std::vector<double> physical(const std::vector<cplx>& spectral);

 private:
  void build_step_tables();

  PeriodicGrid grid_;
  double nu_;
  NonlinearitySpec nl_;
  StepperConfig cfg_;
  double epsilon_ = 0.1;
  SpectralTransform transform_;
  std::vector<PropagatorValue> step_k_;
  std::vector<DuhamelWeights> step_w_;
  std::vector<double> a_dot_xi_;
  GridState predicted_;
  std::vector<double> work_phys_;
  std::vector<double> work_phys2_;
  std::vector<cplx> work_spec_;
  std::vector<cplx> n0_;
  std::vector<cplx> n1_;
};

/// Validity window of a periodic run: unit wave speed, so images arrive
/// after L - (support radius).
double trusted_time(const PeriodicGrid& grid, double support_radius);

}  // namespace sdwave
