#include "sdwave/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdwave/parallel.hpp"

namespace sdwave {

namespace {

constexpr int kGaussOrder = 16;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Modes with e^{-ν r⁴ t} below e^{-40} no longer matter for oscillation
// resolution.
double effective_time(double nu, double r, double t_max) {
  const double r4 = r * r * r * r;
  if (r4 == 0.0) return t_max;
  return std::min(t_max, 40.0 / (nu * r4));
}

double plancherel_factor(int dim) { return std::pow(kTwoPi, -dim); }

void check_same_size(const RadialSpectrum& spec) {
  if (!spec.quadrature) throw InvalidArgument("spectrum has no quadrature");
  const auto n = spec.quadrature->size();
  if (spec.u_hat.size() != n || spec.ut_hat.size() != n) {
    throw InvalidArgument("spectrum size does not match its quadrature");
  }
}

NormValue finish_norm(const RadialQuadrature& quad, const std::vector<double>& integrand) {
  const double total = quad.integrate(integrand);
  NormValue out;
  out.value = std::sqrt(std::max(0.0, total) * plancherel_factor(quad.dim()));
  const double last = quad.weights().back() * integrand.back();
  out.tail_warning = total > 0.0 && std::abs(last) > 1e-12 * total;
  return out;
}

}  // namespace

RadialProfile RadialProfile::gaussian(double amplitude, double width) {
  RadialProfile p{ProfileKind::gaussian, amplitude, width};
  p.validate();
  return p;
}

RadialProfile RadialProfile::unit_mass_gaussian(int dim, double width) {
  const double mass = std::pow(kTwoPi * width * width, 0.5 * dim);
  return gaussian(1.0 / mass, width);
}

RadialProfile RadialProfile::laplacian_gaussian(double amplitude, double width) {
  RadialProfile p{ProfileKind::laplacian_gaussian, amplitude, width};
  p.validate();
  return p;
}

void RadialProfile::validate() const {
  require_finite(amplitude, "profile amplitude");
  require_finite(width, "profile width");
  if (kind != ProfileKind::zero && !(width > 0.0)) {
    throw InvalidArgument("profile width must be positive");
  }
}

double RadialProfile::fourier(int dim, double r) const {
  if (is_zero()) return 0.0;
  const double s2 = width * width;
  const double g = amplitude * std::pow(kTwoPi * s2, 0.5 * dim) * std::exp(-0.5 * s2 * r * r);
  return kind == ProfileKind::gaussian ? g : -r * r * g;
}

double RadialProfile::physical(int dim, double x2) const {
  if (is_zero()) return 0.0;
  const double s2 = width * width;
  const double g = amplitude * std::exp(-0.5 * x2 / s2);
  if (kind == ProfileKind::gaussian) return g;
  return g * (x2 / (s2 * s2) - dim / s2);
}

double RadialProfile::support_radius() const {
  if (is_zero()) return 0.0;
  // e^{-R²/(2σ²)} = 1e-16 gives R ≈ 8.58σ; the Laplacian's quadratic factor
  // pushes the cut out a little.
  const double base = std::sqrt(2.0 * std::log(1e16));
  return width * (kind == ProfileKind::gaussian ? base : base + 1.0);
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::zero: return "zero";
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::laplacian_gaussian: return "laplacian-gaussian";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "zero") return ProfileKind::zero;
  if (name == "gaussian") return ProfileKind::gaussian;
  if (name == "laplacian-gaussian") return ProfileKind::laplacian_gaussian;
  throw InvalidArgument("unknown data family '" + name +
                        "' (expected zero, gaussian, laplacian-gaussian)");
}

double unit_sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw InvalidArgument("Gauss-Legendre order must be >= 1");
  nodes.assign(static_cast<std::size_t>(order), 0.0);
  weights.assign(static_cast<std::size_t>(order), 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(order - 1 - i)] = w;
  }
}

RadialQuadrature RadialQuadrature::build(int dim, const QuadratureOptions& options) {
  if (dim < kMinDim || dim > kMaxDim) {
    throw InvalidArgument("dimension out of supported range 1..5");
  }
  require_finite(options.r_min, "r_min");
  require_finite(options.r_max, "r_max");
  if (!(options.r_min > 0.0) || !(options.r_max > options.r_min)) {
    throw InvalidArgument("quadrature needs 0 < r_min < r_max");
  }
  if (options.panels_per_decade < 1 || options.refinement < 1) {
    throw InvalidArgument("panels_per_decade and refinement must be >= 1");
  }
  if (options.oscillation_t_max > 0.0 &&
      (!(options.nu > 0.0) || !(options.periods_per_panel > 0.0))) {
    throw InvalidArgument("oscillation capping needs nu > 0 and periods_per_panel > 0");
  }

  std::vector<double> edges{0.0, options.r_min};
  const double decades = std::log10(options.r_max / options.r_min);
  const int log_panels =
      std::max(1, static_cast<int>(std::ceil(decades * options.panels_per_decade)));
  for (int k = 1; k <= log_panels; ++k) {
    const double b = k == log_panels
                         ? options.r_max
                         : options.r_min * std::pow(10.0, decades * k / log_panels);
    const double a = edges.back();
    int pieces = 1;
    if (options.oscillation_t_max > 0.0) {
      const double t_eff = effective_time(options.nu, a, options.oscillation_t_max);
      const double cap = options.periods_per_panel * kTwoPi / t_eff;
      pieces = std::max(1, static_cast<int>(std::ceil((b - a) / cap)));
    }
    for (int j = 1; j <= pieces; ++j) {
      edges.push_back(j == pieces ? b : a + (b - a) * j / pieces);
    }
  }

  std::vector<double> gx;
  std::vector<double> gw;
  gauss_legendre(kGaussOrder, gx, gw);

  RadialQuadrature quad;
  quad.dim_ = dim;
  quad.options_ = options;
  const double area = unit_sphere_area(dim);
  const std::size_t panels = (edges.size() - 1) * static_cast<std::size_t>(options.refinement);
  quad.nodes_.reserve(panels * kGaussOrder);
  quad.weights_.reserve(panels * kGaussOrder);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    for (int sub = 0; sub < options.refinement; ++sub) {
      const double a = edges[p] + (edges[p + 1] - edges[p]) * sub / options.refinement;
      const double b = edges[p] + (edges[p + 1] - edges[p]) * (sub + 1) / options.refinement;
      const double mid = 0.5 * (a + b);
      const double half = 0.5 * (b - a);
      for (int i = 0; i < kGaussOrder; ++i) {
        const double r = mid + half * gx[static_cast<std::size_t>(i)];
        quad.nodes_.push_back(r);
        quad.weights_.push_back(half * gw[static_cast<std::size_t>(i)] * area *
                                std::pow(r, dim - 1));
      }
    }
  }
  return quad;
}

double RadialQuadrature::integrate(std::span<const double> values) const {
  if (values.size() != nodes_.size()) {
    throw InvalidArgument("integrand size does not match quadrature");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) sum += weights_[k] * values[k];
  return sum;
}

RadialQuadrature RadialQuadrature::refined() const {
  auto opts = options_;
  opts.refinement *= 2;
  return build(dim_, opts);
}

RadialSpectrum initial_spectrum(std::shared_ptr<const RadialQuadrature> quadrature,
                                const RadialProfile& u0, const RadialProfile& u1) {
  if (!quadrature) throw InvalidArgument("quadrature must not be null");
  u0.validate();
  u1.validate();
  RadialSpectrum spec;
  const int dim = quadrature->dim();
  const auto& nodes = quadrature->nodes();
  spec.u_hat.resize(nodes.size());
  spec.ut_hat.resize(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    spec.u_hat[k] = u0.fourier(dim, nodes[k]);
    spec.ut_hat[k] = u1.fourier(dim, nodes[k]);
  }
  spec.quadrature = std::move(quadrature);
  spec.u0 = u0;
  spec.u1 = u1;
  return spec;
}

void evolve_modes(double nu, std::span<const double> radii, std::span<const double> u0,
                  std::span<const double> u1, double t, std::span<double> u_out,
                  std::span<double> ut_out) {
  const auto n = radii.size();
  if (u0.size() != n || u1.size() != n || u_out.size() != n || ut_out.size() != n) {
    throw InvalidArgument("evolve_modes: span sizes differ");
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto K = propagator(nu, t, radii[k]);
    const double a = u0[k];
    const double b = u1[k];
    u_out[k] = K.k0 * a + K.k1 * b;
    ut_out[k] = K.dk0 * a + K.dk1 * b;
  }
}

RadialSpectrum evolve_linear(double nu, const RadialSpectrum& state, double dt) {
  require_finite(dt, "t");
  if (dt < 0.0) throw InvalidArgument("t must be nonnegative");
  check_same_size(state);
  RadialSpectrum out = state;
  evolve_modes(nu, state.quadrature->nodes(), state.u_hat, state.ut_hat, dt, out.u_hat,
               out.ut_hat);
  out.time = state.time + dt;
  return out;
}

NormValue l2_norm(const RadialSpectrum& spec, Field which, double s) {
  require_finite(s, "s");
  if (s < 0.0) throw InvalidArgument("Sobolev order s must be nonnegative");
  check_same_size(spec);
  const auto& quad = *spec.quadrature;
  const auto& nodes = quad.nodes();
  const auto& f = which == Field::u ? spec.u_hat : spec.ut_hat;
  std::vector<double> integrand(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double weight = s == 0.0 ? 1.0 : std::pow(nodes[k], 2.0 * s);
    integrand[k] = weight * f[k] * f[k];
  }
  return finish_norm(quad, integrand);
}

Moments moments(const RadialProfile& u0, const RadialProfile& u1, int dim) {
  return {u0.mass(dim), u1.mass(dim)};
}

NormValue profile_residual(double nu, const RadialSpectrum& spec, const Moments& m,
                           ProfileConvention convention) {
  if (!(spec.time > 0.0)) throw InvalidArgument("profile residual needs t > 0");
  check_same_size(spec);
  const auto& quad = *spec.quadrature;
  const auto& nodes = quad.nodes();
  std::vector<double> integrand(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto H = profile_symbol(nu, spec.time, nodes[k], convention);
    const double diff = spec.u_hat[k] - m.p0 * H.h0 - m.p1 * H.h1;
    integrand[k] = diff * diff;
  }
  return finish_norm(quad, integrand);
}

double select_r_max(int dim, const RadialProfile& u0, const RadialProfile& u1, double s_max) {
  if (u0.is_zero() && u1.is_zero()) return 12.0;
  const double power = dim - 1 + 2.0 * s_max + 4.0;
  auto integrand = [&](double r) {
    const double a = u0.fourier(dim, r);
    const double b = u1.fourier(dim, r);
    return std::pow(r, dim - 1) * (1.0 + std::pow(r, power - (dim - 1))) * (a * a + b * b);
  };
  double peak = 0.0;
  double r_peak = 0.0;
  for (double r = 1e-3; r < 1e4; r *= 1.02) {
    const double v = integrand(r);
    if (v > peak) {
      peak = v;
      r_peak = r;
    } else if (r > r_peak && v < 1e-14 * peak) {
      return r;
    }
  }
  throw InvalidArgument("initial data do not decay fast enough for the radial quadrature");
}

void LinearRunConfig::validate() const {
  if (dim < kMinDim || dim > kMaxDim) {
    throw InvalidArgument("dimension out of supported range 1..5");
  }
  require_finite(nu, "nu");
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  u0.validate();
  u1.validate();
  if (!(t_min > 0.0) || !(t_max >= t_min)) {
    throw InvalidArgument("time ladder needs 0 < t_min <= t_max");
  }
  if (points_per_decade < 1) throw InvalidArgument("points_per_decade must be >= 1");
  for (double s : u_orders) {
    if (!(s >= 0.0)) throw InvalidArgument("Sobolev orders must be nonnegative");
  }
  for (double s : ut_orders) {
    if (!(s >= 0.0)) throw InvalidArgument("Sobolev orders must be nonnegative");
  }
  if (jobs < 1) throw InvalidArgument("jobs must be >= 1");
}

LinearRunReport linear_decay_run(const LinearRunConfig& config) {
  config.validate();
  LinearRunReport report;
  report.moments = moments(config.u0, config.u1, config.dim);

  double s_max = 0.0;
  for (double s : config.u_orders) s_max = std::max(s_max, s);
  for (double s : config.ut_orders) s_max = std::max(s_max, s + 2.0);

  auto opts = config.quadrature;
  if (!(opts.r_max > 0.0)) opts.r_max = select_r_max(config.dim, config.u0, config.u1, s_max);
  opts.nu = config.nu;
  opts.oscillation_t_max = std::max(opts.oscillation_t_max, config.t_max);
  auto quad = std::make_shared<const RadialQuadrature>(RadialQuadrature::build(config.dim, opts));
  report.node_count = quad->size();
  report.r_max = opts.r_max;

  if (config.u0.is_zero() && config.u1.is_zero()) {
    report.warnings.push_back("initial data are identically zero; every norm is zero");
  }

  const auto base = initial_spectrum(quad, config.u0, config.u1);
  const auto times = geometric_ladder(config.t_min, config.t_max, config.points_per_decade);
  const std::size_t nt = times.size();
  const std::size_t nu_cols = config.u_orders.size();
  const std::size_t ncols = nu_cols + config.ut_orders.size();

  std::vector<std::vector<double>> values(ncols, std::vector<double>(nt, 0.0));
  std::vector<std::vector<char>> tails(ncols + 1, std::vector<char>(nt, 0));
  std::vector<double> residual(nt, 0.0);

  parallel_for(nt, config.jobs, [&](std::size_t i) {
    const auto spec = evolve_linear(config.nu, base, times[i]);
    for (std::size_t c = 0; c < ncols; ++c) {
      const bool is_u = c < nu_cols;
      const double s = is_u ? config.u_orders[c] : config.ut_orders[c - nu_cols];
      const auto norm = l2_norm(spec, is_u ? Field::u : Field::ut, s);
      values[c][i] = norm.value;
      tails[c][i] = norm.tail_warning;
    }
    if (config.profile) {
      const auto res = profile_residual(config.nu, spec, report.moments, config.convention);
      residual[i] = res.value;
      tails[ncols][i] = res.tail_warning;
    }
  });

  for (std::size_t i = 0; i < nt; ++i) report.norms.push_time(times[i]);
  for (std::size_t c = 0; c < ncols; ++c) {
    const bool is_u = c < nu_cols;
    const double s = is_u ? config.u_orders[c] : config.ut_orders[c - nu_cols];
    const auto name = norm_quantity(is_u ? Field::u : Field::ut, s);
    report.norms.add_column(name) = values[c];
    const auto flagged = std::count(tails[c].begin(), tails[c].end(), 1);
    if (flagged > 0) {
      report.warnings.push_back("quadrature tail above 1e-12 for " + name + " at " +
                                std::to_string(flagged) + " time(s)");
    }
  }
  if (config.profile) {
    report.profile.times = times;
    report.profile.residual = std::move(residual);
    report.profile.leading.reserve(nt);
    for (double t : times) {
      report.profile.leading.push_back(std::pow(1.0 + t, -config.dim / 8.0 + 0.25));
    }
    if (std::count(tails[ncols].begin(), tails[ncols].end(), 1) > 0) {
      report.warnings.push_back("quadrature tail above 1e-12 for the profile residual");
    }
  }
  return report;
}

}  // namespace sdwave
