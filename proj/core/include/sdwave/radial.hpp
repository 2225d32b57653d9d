#pragma once

// Linear evolution of radially symmetric data in R^n, n = 1..5, by direct
// evaluation of the Fourier multipliers on a radial quadrature grid.
//
// Fourier convention: f̂(ξ) = ∫ f(x) e^{-i x·ξ} dx, so that
//   ‖f‖²_{L²} = (2π)^{-n} ∫ |f̂(ξ)|² dξ  and  ∫ f dx = f̂(0).

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sdwave/series.hpp"
#include "sdwave/symbol.hpp"

namespace sdwave {

enum class ProfileKind { zero, gaussian, laplacian_gaussian };

/// Closed-form radial data. gaussian: A e^{-|x|²/(2σ²)};
/// laplacian_gaussian: Δ of that Gaussian (mean zero).
struct RadialProfile {
  ProfileKind kind = ProfileKind::zero;
  double amplitude = 0.0;
  double width = 1.0;

  static RadialProfile zero() { return {}; }
  static RadialProfile gaussian(double amplitude, double width);
  /// Gaussian scaled to unit mass in dimension `dim`.
  static RadialProfile unit_mass_gaussian(int dim, double width);
  static RadialProfile laplacian_gaussian(double amplitude, double width);

  bool is_zero() const { return kind == ProfileKind::zero || amplitude == 0.0; }
  double fourier(int dim, double r) const;
  double physical(int dim, double x2) const;
  /// ∫ f dx.
  double mass(int dim) const { return fourier(dim, 0.0); }
  /// Radius beyond which |f| < 1e-16 max|f|.
  double support_radius() const;
  void validate() const;
};

const char* to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Surface area of the unit sphere S^{n-1}.
double unit_sphere_area(int dim);

struct QuadratureOptions {
  double r_min = 1e-6;
  double r_max = 12.0;
  int panels_per_decade = 48;
  /// When positive, panels are narrowed so that cos(r t) is resolved for all
  /// t up to this value wherever e^{-ν r⁴ t} is not negligible.
  double oscillation_t_max = 0.0;
  double nu = 1.0;
  double periods_per_panel = 1.0;
  /// Every panel is split into this many equal sub-panels.
  int refinement = 1;
};

/// Composite 16-point Gauss-Legendre rule on [0, r_max]: one panel on
/// [0, r_min], log-spaced panels above. Weights include ω_{n-1} r^{n-1}.
class RadialQuadrature {
 public:
  static RadialQuadrature build(int dim, const QuadratureOptions& options);

  int dim() const { return dim_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  const QuadratureOptions& options() const { return options_; }

  /// Σ w_k f_k, i.e. ∫_{|ξ| <= r_max} f(|ξ|) dξ.
  double integrate(std::span<const double> values) const;
  /// Same options with twice as many nodes.
  RadialQuadrature refined() const;

 private:
  int dim_ = 1;
  QuadratureOptions options_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// û and û_t at the quadrature nodes. For radial real data all values are real.
struct RadialSpectrum {
  std::shared_ptr<const RadialQuadrature> quadrature;
  std::vector<double> u_hat;
  std::vector<double> ut_hat;
  double time = 0.0;
  RadialProfile u0;
  RadialProfile u1;
};

RadialSpectrum initial_spectrum(std::shared_ptr<const RadialQuadrature> quadrature,
                                const RadialProfile& u0, const RadialProfile& u1);

/// Advances the spectrum by `dt` (from state.time to state.time + dt). Exact
/// per node: (û, û_t) ← [[K̂₀, K̂₁], [∂K̂₀, ∂K̂₁]](dt) (û, û_t).
RadialSpectrum evolve_linear(double nu, const RadialSpectrum& state, double dt);

/// Mode-wise flow on arbitrary radii. Output spans must match `radii` in size.
void evolve_modes(double nu, std::span<const double> radii, std::span<const double> u0,
                  std::span<const double> u1, double t, std::span<double> u_out,
                  std::span<double> ut_out);

struct NormValue {
  double value = 0.0;
  bool tail_warning = false;
};

/// ‖·‖_{Ḣ^s} of u or u_t via Plancherel on the radial grid; s = 0 is L².
NormValue l2_norm(const RadialSpectrum& spec, Field which, double s);

struct Moments {
  double p0 = 0.0;
  double p1 = 0.0;
};

Moments moments(const RadialProfile& u0, const RadialProfile& u1, int dim);

/// ‖u(t) - P₀H₀(t) - P₁H₁(t)‖_{L²}.
NormValue profile_residual(double nu, const RadialSpectrum& spec, const Moments& m,
                           ProfileConvention convention = ProfileConvention::with_nu);

struct LinearRunConfig {
  int dim = 3;
  double nu = 1.0;
  RadialProfile u0;
  RadialProfile u1;
  double t_min = 1.0;
  double t_max = 1e4;
  int points_per_decade = 40;
  std::vector<double> u_orders{0.0};
  std::vector<double> ut_orders{0.0};
  bool profile = true;
  ProfileConvention convention = ProfileConvention::with_nu;
  /// Base quadrature settings; r_max <= 0 selects it from the data.
  QuadratureOptions quadrature{.r_max = 0.0};
  int jobs = 1;

  void validate() const;
};

struct LinearRunReport {
  NormSeries norms;
  ProfileResidualSeries profile;
  Moments moments;
  std::vector<std::string> warnings;
  std::size_t node_count = 0;
  double r_max = 0.0;
};

/// r_max such that the t = 0 integrand of every requested norm has a tail
/// below 1e-14 of its peak.
double select_r_max(int dim, const RadialProfile& u0, const RadialProfile& u1, double s_max);

LinearRunReport linear_decay_run(const LinearRunConfig& config);

}  // namespace sdwave
