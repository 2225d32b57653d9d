#include "sdwave/verifier.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "sdwave/analysis.hpp"
#include "sdwave/parallel.hpp"
#include "sdwave/radial.hpp"
#include "sdwave/symbol.hpp"

namespace sdwave {

namespace {

constexpr double kTiny = 1e-290;

std::string num(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

double multiplier(const PropagatorValue& K, int kernel, int j) {
  if (kernel == 0) return j == 0 ? K.k0 : K.dk0;
  return j == 0 ? K.k1 : K.dk1;
}

// Late-time trend of a ratio series over its last decade: Kendall τ and the
// log-log slope. Either one below its limit means "no upward trend".
struct Trend {
  double tau = 0.0;
  double slope = 0.0;
  bool ok = true;
};

Trend late_trend(const std::vector<double>& t, const std::vector<double>& v,
                 const VerifierOptions& opt) {
  Trend tr;
  if (t.empty()) return tr;
  const double t_end = t.back();
  std::vector<double> xs, ys, vals;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_end / 10.0 * (1 - 1e-12)) continue;
    vals.push_back(v[i]);
    if (v[i] > 0.0 && std::isfinite(v[i])) {
      xs.push_back(std::log(t[i]));
      ys.push_back(std::log(v[i]));
    }
  }
  tr.tau = kendall_tau(vals);
  if (xs.size() >= 3) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    tr.slope = sxx > 0 ? sxy / sxx : 0.0;
  }
  tr.ok = tr.tau <= opt.tau_limit || tr.slope <= opt.late_slope_limit;
  return tr;
}

// Common gate: refinement growth, late trend, plus a check-specific flag.
void finish(BoundCheckReport& rep, double coarse_sup, double fine_sup, const Trend& trend,
            bool specific_ok, const VerifierOptions& opt) {
  rep.measured = fine_sup;
  rep.refinement_ratio = coarse_sup > 0.0 ? fine_sup / coarse_sup : (fine_sup > 0.0 ? INFINITY : 1.0);
  rep.extras.emplace_back("coarse_sup", coarse_sup);
  rep.extras.emplace_back("late_kendall_tau", trend.tau);
  rep.extras.emplace_back("late_log_slope", trend.slope);
  const bool finite = std::isfinite(fine_sup);
  const bool stable = rep.refinement_ratio <= opt.growth_limit;
  rep.pass = finite && stable && trend.ok && specific_ok;
  auto add = [&](const std::string& s) { rep.detail += (rep.detail.empty() ? "" : "; ") + s; };
  if (!finite) add("non-finite ratio");
  if (!stable) add("refinement growth " + num(rep.refinement_ratio) + " exceeds " + num(opt.growth_limit));
  if (!trend.ok) add("upward late trend (tau " + num(trend.tau) + ", slope " + num(trend.slope) + ")");
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

// ------------------------------------------------------------ pointwise --

struct SupSample {
  double sup = 0.0;
  double t = 0.0;
  double r = 0.0;
  std::vector<double> times;
  std::vector<double> per_time_sup;
};

SupSample pointwise_sup(const PointwiseCase& c, const BandCutoffs& cut, int per_decade) {
  const double rho = cut.rho();
  const double c4 = 0.9 * c.nu / 2.0;
  const double c2 = 0.9 / c.nu;
  SupSample out;
  out.times = geometric_ladder(c.t_min, c.t_max, per_decade);
  const auto radii = c.band == Band::low ? geometric_ladder(1e-3, rho, per_decade)
                                         : geometric_ladder(rho / 2.0, 1e3, per_decade);
  for (double t : out.times) {
    double row = 0.0;
    for (double r : radii) {
      const auto w = cut.weights(r);
      const double chi = c.band == Band::low ? w.low : w.mid + w.high;
      if (chi == 0.0) continue;
      const double rs = std::pow(r, c.s);
      const double lhs = rs * chi * std::abs(multiplier(propagator(c.nu, t, r), c.kernel, c.j));
      double rhs;
      if (c.band == Band::low) {
        rhs = std::exp(-c4 * t * std::pow(r, 4)) * std::pow(r, c.s + c.j - c.kernel);
      } else if (c.kernel == 0) {
        rhs = rs * (std::pow(r, -2.0 * c.j) * std::exp(-c2 * t / (r * r)) +
                    std::pow(r, -6.0 + 4.0 * c.j) * std::exp(-c4 * t * std::pow(r, 4)));
      } else {
        rhs = std::pow(r, c.s - 4.0) * (std::pow(r, -2.0 * c.j) * std::exp(-c2 * t / (r * r)) +
                                        std::pow(r, 4.0 * c.j) * std::exp(-c4 * t * std::pow(r, 4)));
      }
      double ratio;
      if (rhs < kTiny) {
        if (lhs < kTiny) continue;
        ratio = INFINITY;
      } else {
        ratio = lhs / rhs;
      }
      row = std::max(row, ratio);
      if (ratio > out.sup) {
        out.sup = ratio;
        out.t = t;
        out.r = r;
      }
    }
    out.per_time_sup.push_back(row);
  }
  return out;
}

// Fitted log-energy decay rate at fixed radius over t ∈ [0, t_end].
double mode_decay_slope(const PointwiseCase& c, double r, int samples, double t_end) {
  std::vector<double> x, y;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_end * i / samples;
    const auto K = propagator(c.nu, t, r);
    const double u = c.kernel == 0 ? K.k0 : K.k1;
    const double v = c.kernel == 0 ? K.dk0 : K.dk1;
    x.push_back(t);
    y.push_back(0.5 * std::log(v * v + r * r * u * u));
  }
  return ols_slope(x, y);
}

BoundCheckReport middle_band_decay(const PointwiseCase& c, const BandCutoffs& cut,
                                   BoundCheckReport rep, const VerifierOptions& opt) {
  const double rho = cut.rho();
  const double t_end = 50.0;
  double worst_coarse = -INFINITY, worst_fine = -INFINITY, worst_r = 0.0;
  double growth = 1.0;
  for (int i = 0; i < 8; ++i) {
    const double r = rho / 2.0 * std::pow(8.0, i / 7.0);
    const double coarse = mode_decay_slope(c, r, 50, t_end);
    const double fine = mode_decay_slope(c, r, 100, t_end);
    growth = std::max(growth, std::max(fine / coarse, coarse / fine));
    worst_coarse = std::max(worst_coarse, coarse);
    if (fine > worst_fine) {
      worst_fine = fine;
      worst_r = r;
    }
  }
  rep.sample = "8 radii in [rho/2, 4 rho], t in [0, 50]";
  rep.measured = worst_fine;
  rep.refinement_ratio = growth;
  rep.extras.emplace_back("slowest_rate_radius", worst_r);
  rep.extras.emplace_back("coarse_slowest_rate", worst_coarse);
  rep.pass = worst_fine < 0.0 && growth <= opt.growth_limit;
  if (!(worst_fine < 0.0)) rep.detail = "no exponential decay at r = " + num(worst_r);
  if (growth > opt.growth_limit) rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("unstable fitted rate");
  return rep;
}

// --------------------------------------------------------- band decay --

double gaussian_lebesgue_norm(int dim, double r) {
  // Unit-mass Gaussian of width 1: (2π)^{-n/2} e^{-|x|²/2}.
  return std::pow(2.0 * std::numbers::pi, -dim / 2.0) *
         std::pow(2.0 * std::numbers::pi / r, dim / (2.0 * r));
}

double gaussian_sobolev_norm(int dim, double beta) {
  // (2π)^{-n} ∫ |ξ|^{2β} e^{-|ξ|²} dξ = (2π)^{-n} ω_{n-1} Γ(β + n/2) / 2.
  return std::sqrt(std::pow(2.0 * std::numbers::pi, -dim) * unit_sphere_area(dim) *
                   std::tgamma(beta + dim / 2.0) / 2.0);
}

struct BandSeries {
  std::vector<double> times;
  std::vector<double> norm;
  std::vector<double> bound;
};

double band_decay_high_c(const BandDecayCase& c, const BandCutoffs& cut) {
  return 0.9 * c.nu / 2.0 * std::pow(cut.rho() / 2.0, 4);
}

BandSeries band_series(const BandDecayCase& c, const BandCutoffs& cut, int per_decade,
                       int refinement) {
  const auto g = RadialProfile::unit_mass_gaussian(c.dim, 1.0);
  QuadratureOptions q;
  q.nu = c.nu;
  q.oscillation_t_max = c.t_max;
  q.refinement = refinement;
  q.r_max = c.band == Band::low ? cut.rho()
                                : select_r_max(c.dim, g, RadialProfile::zero(), c.alpha + 1.0);
  const auto quad = RadialQuadrature::build(c.dim, q);
  const auto& nodes = quad.nodes();
  std::vector<double> pre(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto w = cut.weights(nodes[k]);
    const double chi = c.band == Band::low ? w.low : w.mid + w.high;
    pre[k] = chi * std::pow(nodes[k], c.alpha) * g.fourier(c.dim, nodes[k]);
  }
  const double norm_const = std::pow(2.0 * std::numbers::pi, -c.dim);

  BandSeries out;
  out.times = geometric_ladder(c.t_min, c.t_max, per_decade);
  std::vector<double> vals(nodes.size());
  const auto rate = band_decay_rate(c);
  const double ch = band_decay_high_c(c, cut);
  for (double t : out.times) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double m = pre[k] == 0.0 ? 0.0 : pre[k] * multiplier(propagator(c.nu, t, nodes[k]), c.kernel, c.j);
      vals[k] = m * m;
    }
    out.norm.push_back(std::sqrt(norm_const * quad.integrate(vals)));

    double b;
    if (c.band == Band::low) {
      const double gn = gaussian_lebesgue_norm(c.dim, c.lebesgue);
      switch (rate.branch) {
        case BandDecayBranch::growth: b = std::pow(t, rate.exponent) * gn; break;
        case BandDecayBranch::sqrt_log: b = std::sqrt(std::log(t + std::numbers::e)) * gn; break;
        default: b = std::pow(1.0 + t, rate.exponent) * gn; break;
      }
    } else {
      const double shift = c.kernel == 0 ? -6.0 : -4.0;
      const double gamma = c.dim / 4.0 * (1.0 / c.lebesgue - 0.5) + (c.alpha + shift + 4.0 * c.j - c.beta1) / 4.0;
      const double first_norm = c.lebesgue == 1.0 ? 1.0 : gaussian_sobolev_norm(c.dim, c.beta1);
      const double order = std::max(c.kernel == 0 ? c.alpha - 2.0 * c.j + c.beta2
                                                  : c.alpha - 4.0 - 2.0 * c.j + c.beta2,
                                    0.0);
      b = std::exp(-ch * t) * std::pow(t, -gamma) * first_norm +
          std::pow(1.0 + t, -c.beta2 / 2.0) * gaussian_sobolev_norm(c.dim, order);
    }
    out.bound.push_back(b);
  }
  return out;
}

// -------------------------------------------------------------- fields --

double sobolev_norm(const PeriodicGrid& grid, std::span<const cplx> spec, double s) {
  const auto& xi = grid.xi_magnitudes();
  const auto& w = grid.parseval_weights();
  double sum = 0.0;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const double f = s == 0.0 ? 1.0 : (xi[m] == 0.0 ? 0.0 : std::pow(xi[m], 2.0 * s));
    sum += w[m] * f * std::norm(spec[m]);
  }
  return std::sqrt(grid.volume() * sum);
}

// ‖F^{-1}(|ξ|^s ĉ)‖_{L^r} by physical-grid quadrature.
double sobolev_lebesgue_norm(const PeriodicGrid& grid, SpectralTransform& tr,
                             std::span<const cplx> spec, double s, double r) {
  if (r == 2.0) return sobolev_norm(grid, spec, s);
  const auto& xi = grid.xi_magnitudes();
  std::vector<cplx> scaled(spec.begin(), spec.end());
  if (s != 0.0) {
    for (std::size_t m = 0; m < scaled.size(); ++m) {
      scaled[m] *= xi[m] == 0.0 ? 0.0 : std::pow(xi[m], s);
    }
  }
  std::vector<double> phys(grid.physical_size());
  tr.inverse(scaled, phys);
  double sum = 0.0;
  for (double v : phys) sum += std::pow(std::abs(v), r);
  return std::pow(sum * std::pow(grid.spacing(), grid.dim()), 1.0 / r);
}

std::vector<cplx> to_spectrum(const PeriodicGrid& grid, SpectralTransform& tr,
                              std::span<const double> field) {
  std::vector<cplx> spec(grid.spectral_size());
  tr.forward(field, spec);
  return spec;
}

double gn_ratio_impl(const PeriodicGrid& grid, SpectralTransform& tr, std::span<const double> field,
                     const GagliardoNirenbergCase& c) {
  const auto spec = to_spectrum(grid, tr, field);
  const double lhs = sobolev_lebesgue_norm(grid, tr, spec, c.s, c.r);
  const double low = sobolev_lebesgue_norm(grid, tr, spec, 0.0, c.r0);
  const double high = sobolev_lebesgue_norm(grid, tr, spec, c.sigma, c.r1);
  if (low == 0.0 || high == 0.0) return std::nan("");
  const double th = c.theta();
  return lhs / (std::pow(low, 1.0 - th) * std::pow(high, th));
}

SobolevSplit sobolev_split_impl(const PeriodicGrid& grid, SpectralTransform& tr,
                                std::span<const double> field, double eps) {
  SobolevSplit out;
  const auto spec = to_spectrum(grid, tr, field);
  const int n = grid.dim();
  const double sigma = n / 2.0 + eps;
  const double l2 = sobolev_norm(grid, spec, 0.0);
  const double top = sobolev_norm(grid, spec, sigma);
  if (l2 == 0.0) {
    out.trivial = true;
    return out;
  }
  double vmax = 0.0;
  for (double v : field) vmax = std::max(vmax, std::abs(v));
  const double theta = (n / 2.0) / sigma;
  out.ratio = vmax / (std::pow(l2, 1.0 - theta) * std::pow(top, theta));
  out.radius = std::pow(top / l2, 1.0 / sigma);
  const auto& xi = grid.xi_magnitudes();
  const auto& w = grid.parseval_weights();
  double a1 = 0.0, a2 = 0.0;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    (xi[m] <= out.radius ? a1 : a2) += w[m] * std::abs(spec[m]);
  }
  out.a1_constant = a1 / (std::pow(out.radius, n / 2.0) * l2);
  out.a2_constant = top > 0.0 ? a2 / (std::pow(out.radius, -eps) * top) : 0.0;
  return out;
}

// ------------------------------------------------------------ selectors --

class OptionReader {
 public:
  explicit OptionReader(const CheckSelector& sel) : sel_(sel) {}

  double real(const std::string& key, double fallback) {
    const std::string* v = find(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const double x = std::stod(*v, &pos);
      if (pos != v->size() || !std::isfinite(x)) throw std::invalid_argument(key);
      return x;
    } catch (const std::exception&) {
      throw InvalidArgument("malformed value for key '" + key + "' in selector '" + sel_.text + "'");
    }
  }

  int integer(const std::string& key, int fallback) {
    const double x = real(key, fallback);
    if (x != std::floor(x) || std::abs(x) > 1e9) {
      throw InvalidArgument("key '" + key + "' must be an integer in selector '" + sel_.text + "'");
    }
    return static_cast<int>(x);
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const std::string* v = find(key);
    return v ? *v : fallback;
  }

  void finish() const {
    for (const auto& [k, _] : sel_.options) {
      if (!used_.count(k)) {
        throw InvalidArgument("unknown key '" + k + "' for check '" + sel_.id + "'");
      }
    }
  }

 private:
  const std::string* find(const std::string& key) {
    used_.insert(key);
    for (const auto& [k, v] : sel_.options) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  const CheckSelector& sel_;
  std::set<std::string> used_;
};

Band band_from_string(const std::string& s, const std::string& selector) {
  if (s == "low") return Band::low;
  if (s == "mid") return Band::mid;
  if (s == "high") return Band::high;
  throw InvalidArgument("malformed value for key 'band' in selector '" + selector + "'");
}

// Coarse resolution of the field suite; the fine pass doubles it. 3-D grids
// stay at 32³/64³ so the suite fits its runtime budget.
int default_points(int dim) { return dim >= 3 ? 32 : 64; }

void require_choice(bool ok, const std::string& key, const std::string& selector) {
  if (!ok) throw InvalidArgument("invalid value for key '" + key + "' in selector '" + selector + "'");
}

}  // namespace

// ------------------------------------------------------------------------

std::string BoundCheckReport::param_json() const {
  std::string out = "{";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ",";
    out += quoted(params[i].first) + ":" + params[i].second;
  }
  return out + "}";
}

const char* to_string(Band band) {
  switch (band) {
    case Band::low: return "low";
    case Band::mid: return "mid";
    case Band::high: return "high";
  }
  return "?";
}

BoundCheckReport check_pointwise(const PointwiseCase& c, const VerifierOptions& opt) {
  if (c.kernel < 0 || c.kernel > 1 || c.j < 0 || c.j > 1) throw InvalidArgument("kernel and j must be 0 or 1");
  if (!(c.s >= 0.0)) throw InvalidArgument("s must be >= 0");
  if (!(c.nu > 0.0)) throw InvalidArgument("nu must be positive");
  if (!(c.t_min > 0.0) || !(c.t_max > c.t_min)) throw InvalidArgument("need 0 < t_min < t_max");
  BoundCheckReport rep;
  rep.id = "pointwise";
  rep.params = {{"band", quoted(to_string(c.band))}, {"kernel", num(c.kernel)}, {"j", num(c.j)},
                {"s", num(c.s)}, {"nu", num(c.nu)}, {"t_min", num(c.t_min)},
                {"t_max", num(c.t_max)}, {"per_decade", num(c.per_decade)}};
  const auto cut = BandCutoffs::with_default_scale(c.nu);
  rep.extras.emplace_back("rho", cut.rho());
  if (c.band == Band::mid) return middle_band_decay(c, cut, rep, opt);

  rep.extras.emplace_back("c_quartic", 0.9 * c.nu / 2.0);
  if (c.band == Band::high) rep.extras.emplace_back("c_inverse_square", 0.9 / c.nu);
  rep.sample = c.band == Band::low ? "log-spaced t x r, r in [1e-3, rho]"
                                   : "log-spaced t x r, r in [rho/2, 1e3]";
  const auto coarse = pointwise_sup(c, cut, c.per_decade);
  const auto fine = pointwise_sup(c, cut, 2 * c.per_decade);
  const auto trend = late_trend(fine.times, fine.per_time_sup, opt);
  finish(rep, coarse.sup, fine.sup, trend, true, opt);
  rep.extras.emplace_back("argmax_t", fine.t);
  rep.extras.emplace_back("argmax_r", fine.r);
  if (!rep.pass) rep.detail += " at (t, r) = (" + num(fine.t) + ", " + num(fine.r) + ")";
  return rep;
}

BandDecayRate band_decay_rate(const BandDecayCase& c) {
  const double n = c.dim;
  const double l1_part = n / 4.0 * (1.0 / c.lebesgue - 0.5);
  if (c.kernel == 0) return {BandDecayBranch::power, -l1_part - (c.alpha + c.j) / 4.0};
  if (c.dim == 1 && c.j == 0 && c.alpha < 0.5) return {BandDecayBranch::growth, 0.5 - c.alpha};
  if ((c.dim == 1 && c.j == 0 && c.alpha == 0.5) || (c.dim == 2 && c.j == 0 && c.alpha == 0.0)) {
    return {BandDecayBranch::sqrt_log, 0.0};
  }
  return {BandDecayBranch::power, -l1_part - (c.alpha + c.j - 1.0) / 4.0};
}

BoundCheckReport check_band_decay(const BandDecayCase& c, const VerifierOptions& opt) {
  BoundCheckReport rep;
  rep.id = "band-decay";
  rep.params = {{"kernel", num(c.kernel)}, {"band", quoted(to_string(c.band))}, {"n", num(c.dim)},
                {"j", num(c.j)}, {"alpha", num(c.alpha)}, {"r", num(c.lebesgue)},
                {"beta1", num(c.beta1)}, {"beta2", num(c.beta2)}, {"nu", num(c.nu)},
                {"t_min", num(c.t_min)}, {"t_max", num(c.t_max)}, {"per_decade", num(c.per_decade)}};
  if (c.kernel < 0 || c.kernel > 1 || c.j < 0 || c.j > 1) throw InvalidArgument("kernel and j must be 0 or 1");
  if (c.dim < kMinDim || c.dim > kMaxDim) throw InvalidArgument("dimension out of supported range 1..5");
  if (!(c.nu > 0.0) || !(c.t_min > 0.0) || !(c.t_max > c.t_min)) {
    throw InvalidArgument("need nu > 0 and 0 < t_min < t_max");
  }

  // Hypotheses; anything else gets the unsupported marker.
  std::string why;
  const auto rate = band_decay_rate(c);
  if (!(c.alpha >= 0.0)) why = "alpha must be >= 0";
  else if (!(c.lebesgue >= 1.0 && c.lebesgue <= 2.0)) why = "r must lie in [1, 2]";
  else if (c.band == Band::mid) why = "band must be low or high";
  else if (c.band == Band::low && c.kernel == 1 && rate.branch != BandDecayBranch::power && c.lebesgue != 1.0)
    why = "the growth and sqrt-log branches are stated for r = 1";
  else if (c.band == Band::high && !((c.beta1 == 0.0 || c.beta1 == 1.0) && (c.beta2 == 0.0 || c.beta2 == 3.0)))
    why = "only beta1 in {0, 1} and beta2 in {0, 3} are checked";
  else if (c.band == Band::high && c.lebesgue != 1.0 && c.lebesgue != 2.0)
    why = "the high band is checked for r = 1 and r = 2";
  else if (c.band == Band::high && c.lebesgue == 1.0 && c.beta1 != 0.0)
    why = "r = 1 with beta1 > 0 needs a fractional L1 norm of the data";
  if (!why.empty()) {
    rep.unsupported = true;
    rep.pass = false;
    rep.detail = "unsupported: " + why;
    return rep;
  }

  const auto cut = BandCutoffs::with_default_scale(c.nu);
  rep.sample = std::string(c.band == Band::low ? "low" : "middle+high") +
               " band, unit-mass Gaussian data, t ladder in [" + num(c.t_min) + ", " + num(c.t_max) + "]";
  rep.extras.emplace_back("rho", cut.rho());
  if (c.band == Band::high) rep.extras.emplace_back("c_exponential", band_decay_high_c(c, cut));

  const auto coarse = band_series(c, cut, c.per_decade, 1);
  const auto fine = band_series(c, cut, 2 * c.per_decade, 2);
  auto sup_ratio = [](const BandSeries& s, std::vector<double>* out) {
    double sup = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      const double r = s.norm[i] / s.bound[i];
      if (out) out->push_back(r);
      sup = std::max(sup, r);
    }
    return sup;
  };
  std::vector<double> ratios;
  const double coarse_sup = sup_ratio(coarse, nullptr);
  const double fine_sup = sup_ratio(fine, &ratios);
  const auto trend = late_trend(fine.times, ratios, opt);

  bool specific = true;
  if (c.band == Band::low) {
    const double t_end = fine.times.back();
    std::vector<double> x, y, band_vals;
    for (std::size_t i = 0; i < fine.times.size(); ++i) {
      const double t = fine.times[i];
      if (t >= t_end / 100.0 * (1 - 1e-12)) {
        band_vals.push_back(fine.norm[i] / std::sqrt(std::log(t + std::numbers::e)));
      }
      if (t < t_end / 10.0 * (1 - 1e-12)) continue;
      x.push_back(rate.branch == BandDecayBranch::growth ? std::log(t) : std::log1p(t));
      y.push_back(std::log(fine.norm[i]));
    }
    if (rate.branch == BandDecayBranch::sqrt_log) {
      const auto [lo, hi] = std::minmax_element(band_vals.begin(), band_vals.end());
      const double band = *hi / *lo;
      rep.extras.emplace_back("sqrt_log_band", band);
      specific = band <= 1.5;
      if (!specific) rep.detail = "sqrt-log band " + num(band) + " exceeds 1.5";
    } else {
      const double slope = ols_slope(x, y);
      rep.extras.emplace_back("fitted_slope", slope);
      rep.extras.emplace_back("expected_slope", rate.exponent);
      // With unit-mass data the L¹ rate is attained, so the slope is gated.
      if (c.lebesgue == 1.0) {
        specific = std::abs(slope - rate.exponent) <= 0.05;
        if (!specific) rep.detail = "slope " + num(slope) + " vs " + num(rate.exponent) + " ± 0.05";
      }
    }
  }
  finish(rep, coarse_sup, fine_sup, trend, specific, opt);
  return rep;
}

const char* to_string(IntegralRegime regime) {
  switch (regime) {
    case IntegralRegime::above_one: return "max>1";
    case IntegralRegime::equal_one: return "max=1";
    case IntegralRegime::below_one: return "max<1";
  }
  return "?";
}

IntegralRegime IntegralLemmaCase::regime() const {
  const double m = std::max(alpha, beta);
  if (m > 1.0) return IntegralRegime::above_one;
  if (m == 1.0) return IntegralRegime::equal_one;
  return IntegralRegime::below_one;
}

namespace {

using boost::math::quadrature::gauss_kronrod;

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
void accumulate(Quadrature& q, F&& f, double a, double b) {
  if (!(b > a)) return;
  double err = 0.0;
  q.value += gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13, &err);
  q.error += err;
}

Quadrature integral_power_q(double alpha, double beta, double t) {
  Quadrature q;
  if (t <= 0.0) return q;
  auto f = [&](double tau) { return std::pow(1.0 + t - tau, -alpha) * std::pow(1.0 + tau, -beta); };
  // Geometric cuts away from both ends resolve the O(1) boundary layers.
  std::vector<double> cuts{0.0};
  for (double x = 1.0; x < t / 2.0; x *= 2.0) cuts.push_back(x);
  cuts.push_back(t / 2.0);
  const std::size_t half = cuts.size();
  for (std::size_t i = half - 1; i-- > 0;) cuts.push_back(t - cuts[i]);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) accumulate(q, f, cuts[i], cuts[i + 1]);
  return q;
}

Quadrature integral_exp_q(double c, double alpha, double beta, double t) {
  Quadrature q;
  if (t <= 0.0) return q;
  // In s = t - τ the kernel is e^{-cs} s^{-α}. On [0, min(t, 1)] the
  // substitution s = w^{1/(1-α)} removes the endpoint singularity.
  const double head = std::min(t, 1.0);
  const double k = 1.0 / (1.0 - alpha);
  auto g = [&](double w) {
    const double s = std::pow(w, k);
    return k * std::exp(-c * s) * std::pow(1.0 + t - s, -beta);
  };
  accumulate(q, g, 0.0, std::pow(head, 1.0 - alpha));
  auto f = [&](double s) {
    return std::exp(-c * s) * std::pow(s, -alpha) * std::pow(1.0 + t - s, -beta);
  };
  double a = head;
  const double step = 5.0 / c;
  while (a < t) {
    const double b = std::min(t, std::max(a + step, 2.0 * a));
    accumulate(q, f, a, b);
    a = b;
  }
  return q;
}

template <typename Eval, typename Bound>
BoundCheckReport ladder_check(BoundCheckReport rep, const IntegralLemmaCase& c,
                              const VerifierOptions& opt, Eval&& eval, Bound&& bound) {
  auto run = [&](int per_decade, std::vector<double>& times, std::vector<double>& ratios,
                 double& worst_err) {
    times = geometric_ladder(c.t_min, c.t_max, per_decade);
    double sup = 0.0;
    for (double t : times) {
      const auto q = eval(t);
      worst_err = std::max(worst_err, q.error / std::max(std::abs(q.value), 1e-300));
      const double r = q.value / bound(t);
      ratios.push_back(r);
      sup = std::max(sup, r);
    }
    return sup;
  };
  std::vector<double> tc, rc, tf, rf;
  double err = 0.0;
  const double coarse = run(c.per_decade, tc, rc, err);
  const double fine = run(2 * c.per_decade, tf, rf, err);
  const auto trend = late_trend(tf, rf, opt);
  rep.extras.emplace_back("max_relative_quadrature_error", err);
  const bool quad_ok = err <= 1e-8;
  finish(rep, coarse, fine, trend, quad_ok, opt);
  if (!quad_ok) rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("quadrature failure");
  return rep;
}

}  // namespace

double integral_power(double alpha, double beta, double t) {
  return integral_power_q(alpha, beta, t).value;
}

double integral_exp(double c, double alpha, double beta, double t) {
  if (!(c > 0.0) || !(alpha >= 0.0 && alpha < 1.0)) {
    throw InvalidArgument("integral_exp needs c > 0 and 0 <= alpha < 1");
  }
  return integral_exp_q(c, alpha, beta, t).value;
}

double integral_power_bound(double alpha, double beta, double t) {
  const double m = std::max(alpha, beta);
  const double lo = std::min(alpha, beta);
  if (m > 1.0) return std::pow(1.0 + t, -lo);
  if (m == 1.0) return std::pow(1.0 + t, -lo) * std::log(std::numbers::e + t);
  return std::pow(1.0 + t, 1.0 - alpha - beta);
}

BoundCheckReport check_integral_power(const IntegralLemmaCase& c, const VerifierOptions& opt) {
  require_finite(c.alpha, "alpha");
  require_finite(c.beta, "beta");
  if (!(c.t_min > 0.0) || !(c.t_max > c.t_min)) throw InvalidArgument("need 0 < t_min < t_max");
  BoundCheckReport rep;
  rep.id = "integral-power";
  rep.params = {{"alpha", num(c.alpha)}, {"beta", num(c.beta)}, {"t_min", num(c.t_min)},
                {"t_max", num(c.t_max)}, {"per_decade", num(c.per_decade)}};
  rep.sample = std::string("regime ") + to_string(c.regime()) + ", t ladder in [" + num(c.t_min) +
               ", " + num(c.t_max) + "]";
  return ladder_check(
      rep, c, opt, [&](double t) { return integral_power_q(c.alpha, c.beta, t); },
      [&](double t) { return integral_power_bound(c.alpha, c.beta, t); });
}

BoundCheckReport check_integral_exp(const IntegralLemmaCase& c, const VerifierOptions& opt) {
  if (!(c.c > 0.0)) throw InvalidArgument("c must be positive");
  if (!(c.alpha >= 0.0 && c.alpha < 1.0)) throw InvalidArgument("alpha must lie in [0, 1)");
  require_finite(c.beta, "beta");
  if (!(c.t_min > 0.0) || !(c.t_max > c.t_min)) throw InvalidArgument("need 0 < t_min < t_max");
  BoundCheckReport rep;
  rep.id = "integral-exp";
  rep.params = {{"c", num(c.c)}, {"alpha", num(c.alpha)}, {"beta", num(c.beta)},
                {"t_min", num(c.t_min)}, {"t_max", num(c.t_max)}, {"per_decade", num(c.per_decade)}};
  rep.sample = "t ladder in [" + num(c.t_min) + ", " + num(c.t_max) + "], graded near tau = t";
  return ladder_check(
      rep, c, opt, [&](double t) { return integral_exp_q(c.c, c.alpha, c.beta, t); },
      [&](double t) { return std::pow(1.0 + t, -c.beta); });
}

// ----------------------------------------------------- interpolation --

double GagliardoNirenbergCase::theta() const {
  return (1.0 / r0 - 1.0 / r + s / dim) / (1.0 / r0 - 1.0 / r1 + sigma / dim);
}

void GagliardoNirenbergCase::validate() const {
  if (dim < 1 || dim > 3) throw InvalidArgument("interpolation checks run on grids with n = 1..3");
  for (double x : {r, r0, r1}) {
    if (!(x > 1.0) || !std::isfinite(x)) throw InvalidArgument("Lebesgue exponents must satisfy 1 < r < inf");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (!(s >= 0.0 && s < sigma)) throw InvalidArgument("s must lie in [0, sigma)");
  const double th = theta();
  if (!(th >= s / sigma - 1e-14 && th <= 1.0 + 1e-14)) {
    throw InvalidArgument("theta = " + num(th) + " violates s/sigma <= theta <= 1");
  }
  if (fields < 0 || points < 8 || !(half_width > 0.0)) throw InvalidArgument("invalid field suite");
}

std::vector<std::vector<double>> test_fields(const PeriodicGrid& grid, int count,
                                             std::uint64_t seed) {
  const int n = grid.dim();
  const int N = grid.points();
  const double L = grid.half_width();
  const int kmax = 3;
  const int modes = 12;
  const auto size = grid.physical_size();

  // e^{iπ k x_j / L} per wavenumber and grid index; every mode is then a
  // product of n table entries, which keeps 3-D synthesis cheap.
  std::vector<cplx> phase_table(static_cast<std::size_t>((2 * kmax + 1) * N));
  for (int k = -kmax; k <= kmax; ++k) {
    for (int j = 0; j < N; ++j) {
      phase_table[static_cast<std::size_t>((k + kmax) * N + j)] =
          std::polar(1.0, std::numbers::pi / L * k * grid.coordinate(j));
    }
  }
  auto table = [&](int k, std::size_t j) { return phase_table[static_cast<std::size_t>((k + kmax) * N) + j]; };

  std::vector<std::vector<double>> out;
  for (int f = 0; f < count; ++f) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(f), std::uint64_t{0x5eed}};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> kd(-kmax, kmax);
    std::normal_distribution<double> amp;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<std::array<int, 3>> ks;
    std::vector<cplx> coef;
    while (static_cast<int>(ks.size()) < modes) {
      std::array<int, 3> k{0, 0, 0};
      bool nonzero = false;
      for (int d = 0; d < n; ++d) {
        k[static_cast<std::size_t>(d)] = kd(rng);
        nonzero = nonzero || k[static_cast<std::size_t>(d)] != 0;
      }
      if (!nonzero) continue;
      ks.push_back(k);
      const double a = amp(rng);
      coef.push_back(std::polar(a, phase(rng)));
    }
    std::vector<double> v(size);
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (std::size_t flat = 0; flat < size; ++flat) {
      std::size_t rest = flat;
      for (int d = n - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = rest % static_cast<std::size_t>(N);
        rest /= static_cast<std::size_t>(N);
      }
      double sum = 0.0;
      for (std::size_t m = 0; m < ks.size(); ++m) {
        cplx z = coef[m];
        for (int d = 0; d < n; ++d) z *= table(ks[m][static_cast<std::size_t>(d)], idx[static_cast<std::size_t>(d)]);
        sum += z.real();
      }
      v[flat] = sum;
    }
    out.push_back(std::move(v));
  }
  for (double width : {0.7, 1.0, 1.5}) {
    std::vector<double> v(size);
    for (std::size_t flat = 0; flat < size; ++flat) {
      std::size_t rest = flat;
      double r2 = 0.0;
      for (int d = 0; d < n; ++d) {
        const double xd = grid.coordinate(static_cast<int>(rest % static_cast<std::size_t>(N)));
        rest /= static_cast<std::size_t>(N);
        r2 += xd * xd;
      }
      v[flat] = std::exp(-r2 / (2.0 * width * width));
    }
    out.push_back(std::move(v));
  }
  return out;
}

double gagliardo_nirenberg_ratio(const PeriodicGrid& grid, std::span<const double> field,
                                 const GagliardoNirenbergCase& c) {
  c.validate();
  SpectralTransform tr(grid);
  return gn_ratio_impl(grid, tr, field, c);
}

SobolevSplit sobolev_split(const PeriodicGrid& grid, std::span<const double> field, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  SpectralTransform tr(grid);
  return sobolev_split_impl(grid, tr, field, eps);
}

BoundCheckReport check_gagliardo_nirenberg(const GagliardoNirenbergCase& c,
                                           const VerifierOptions& opt) {
  c.validate();
  BoundCheckReport rep;
  rep.id = "gagliardo-nirenberg";
  rep.params = {{"n", num(c.dim)}, {"s", num(c.s)}, {"sigma", num(c.sigma)}, {"r", num(c.r)},
                {"r0", num(c.r0)}, {"r1", num(c.r1)}, {"fields", num(c.fields)},
                {"N", num(c.points)}, {"L", num(c.half_width)}, {"seed", num(static_cast<double>(opt.seed))}};
  const bool exact = c.r == 2.0 && c.r0 == 2.0 && c.r1 == 2.0;
  rep.sample = std::to_string(c.fields) + " random band-limited fields + 3 Gaussians; " +
               (exact ? "exact Fourier norms" : "physical-grid quadrature (approximate)");
  rep.extras.emplace_back("theta", c.theta());

  auto suite_sup = [&](int points, std::vector<double>* gaussian) {
    const PeriodicGrid grid(c.dim, points, c.half_width);
    SpectralTransform tr(grid);
    const auto fields = test_fields(grid, c.fields, opt.seed);
    double sup = 0.0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const double r = gn_ratio_impl(grid, tr, fields[i], c);
      if (std::isnan(r)) continue;
      sup = std::max(sup, r);
      if (gaussian && i >= static_cast<std::size_t>(c.fields)) gaussian->push_back(r);
    }
    return sup;
  };
  std::vector<double> gauss;
  const double coarse = suite_sup(c.points, nullptr);
  const double fine = suite_sup(2 * c.points, &gauss);
  if (!gauss.empty()) {
    const auto [lo, hi] = std::minmax_element(gauss.begin(), gauss.end());
    rep.extras.emplace_back("gaussian_dilation_spread", *hi / *lo - 1.0);
  }
  finish(rep, coarse, fine, Trend{}, true, opt);
  return rep;
}

BoundCheckReport check_sobolev_embedding(const SobolevCase& c, const VerifierOptions& opt) {
  if (c.dim < 1 || c.dim > 3) throw InvalidArgument("interpolation checks run on grids with n = 1..3");
  if (!(c.eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (c.fields < 0 || c.points < 8 || !(c.half_width > 0.0)) throw InvalidArgument("invalid field suite");
  BoundCheckReport rep;
  rep.id = "sobolev-embedding";
  rep.params = {{"n", num(c.dim)}, {"eps", num(c.eps)}, {"fields", num(c.fields)},
                {"N", num(c.points)}, {"L", num(c.half_width)}, {"seed", num(static_cast<double>(opt.seed))}};
  rep.sample = std::to_string(c.fields) + " random band-limited fields + 3 Gaussians";
  rep.extras.emplace_back("theta", c.theta());

  double a1 = 0.0, a2 = 0.0;
  auto suite_sup = [&](int points, bool record) {
    const PeriodicGrid grid(c.dim, points, c.half_width);
    SpectralTransform tr(grid);
    double sup = 0.0;
    for (const auto& f : test_fields(grid, c.fields, opt.seed)) {
      const auto split = sobolev_split_impl(grid, tr, f, c.eps);
      if (split.trivial) continue;
      sup = std::max(sup, split.ratio);
      if (record) {
        a1 = std::max(a1, split.a1_constant);
        a2 = std::max(a2, split.a2_constant);
      }
    }
    return sup;
  };
  const double coarse = suite_sup(c.points, false);
  const double fine = suite_sup(2 * c.points, true);
  rep.extras.emplace_back("A1_constant", a1);
  rep.extras.emplace_back("A2_constant", a2);
  finish(rep, coarse, fine, Trend{}, true, opt);
  return rep;
}

// ------------------------------------------------------------ selectors --

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"pointwise",    "band-decay",          "integral-power",
                                            "integral-exp", "gagliardo-nirenberg", "sobolev-embedding"};
  return ids;
}

CheckSelector parse_selector(const std::string& text) {
  CheckSelector sel;
  sel.text = text;
  const auto colon = text.find(':');
  sel.id = text.substr(0, colon);
  const auto& ids = check_ids();
  if (std::find(ids.begin(), ids.end(), sel.id) == ids.end()) {
    throw InvalidArgument("unknown check id '" + sel.id + "' in selector '" + text + "'");
  }
  if (colon == std::string::npos) return sel;
  const std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto eq = item.find('=');
    if (item.empty() || eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw InvalidArgument("malformed selector entry '" + item + "' in '" + text + "' (expected key=value)");
    }
    const std::string key = item.substr(0, eq);
    for (const auto& [k, _] : sel.options) {
      if (k == key) throw InvalidArgument("duplicate key '" + key + "' in selector '" + text + "'");
    }
    sel.options.emplace_back(key, item.substr(eq + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return sel;
}

std::vector<CheckSelector> default_suite() {
  static const char* const entries[] = {
      "pointwise:band=low,kernel=0,j=0",
      "pointwise:band=low,kernel=0,j=1",
      "pointwise:band=low,kernel=1,j=0",
      "pointwise:band=low,kernel=1,j=1",
      "pointwise:band=high,kernel=0,j=0",
      "pointwise:band=high,kernel=0,j=1",
      "pointwise:band=high,kernel=1,j=0",
      "pointwise:band=high,kernel=1,j=1",
      "pointwise:band=mid,kernel=0,j=0",
      "pointwise:band=mid,kernel=1,j=0",
      "band-decay:kernel=0,band=low,n=3,j=0,alpha=0,r=1",
      "band-decay:kernel=0,band=low,n=2,j=1,alpha=1,r=1",
      "band-decay:kernel=0,band=low,n=3,j=0,alpha=0,r=2",
      "band-decay:kernel=1,band=low,n=3,j=0,alpha=0,r=1",
      "band-decay:kernel=1,band=low,n=4,j=1,alpha=0,r=1",
      "band-decay:kernel=1,band=low,n=2,j=0,alpha=0,r=1",
      "band-decay:kernel=1,band=low,n=1,j=0,alpha=0.5,r=1",
      "band-decay:kernel=1,band=low,n=1,j=0,alpha=0.25,r=1",
      "band-decay:kernel=0,band=high,n=3,j=0,alpha=0,r=2,beta1=0,beta2=0",
      "band-decay:kernel=0,band=high,n=3,j=1,alpha=1,r=2,beta1=1,beta2=3,t_max=1e3",
      "band-decay:kernel=1,band=high,n=2,j=0,alpha=1,r=1,beta1=0,beta2=3,t_max=1e3",
      "band-decay:kernel=1,band=high,n=3,j=1,alpha=0,r=2,beta1=0,beta2=0,t_max=1e3",
      "integral-power:alpha=2,beta=3",
      "integral-power:alpha=1,beta=1",
      "integral-power:alpha=0.25,beta=0.25",
      "integral-power:alpha=1.5,beta=0.5",
      "integral-power:alpha=0.5,beta=1",
      "integral-exp:c=1,alpha=0,beta=2",
      "integral-exp:c=1,alpha=0.5,beta=0",
      "integral-exp:c=0.5,alpha=0.9,beta=1.5",
      "integral-exp:c=2,alpha=0.3,beta=-1",
      "gagliardo-nirenberg:n=2,s=1,sigma=1.1",
      "gagliardo-nirenberg:n=3,s=1,sigma=1.6",
      "gagliardo-nirenberg:n=2,s=0.5,sigma=2",
      "sobolev-embedding:n=2,eps=0.1",
      "sobolev-embedding:n=3,eps=0.1",
      "sobolev-embedding:n=1,eps=0.2",
  };
  std::vector<CheckSelector> out;
  for (const char* e : entries) out.push_back(parse_selector(e));
  return out;
}

PreparedCheck prepare_check(const CheckSelector& sel) {
  OptionReader in(sel);
  if (sel.id == "pointwise") {
    PointwiseCase c;
    c.band = band_from_string(in.text("band", "low"), sel.text);
    c.kernel = in.integer("kernel", 0);
    c.j = in.integer("j", 0);
    c.s = in.real("s", 0.0);
    c.nu = in.real("nu", 1.0);
    c.t_min = in.real("t_min", c.t_min);
    c.t_max = in.real("t_max", c.t_max);
    c.per_decade = in.integer("per_decade", c.per_decade);
    in.finish();
    require_choice(c.kernel == 0 || c.kernel == 1, "kernel", sel.text);
    require_choice(c.j == 0 || c.j == 1, "j", sel.text);
    require_choice(c.per_decade >= 1, "per_decade", sel.text);
    require_choice(c.s >= 0.0, "s", sel.text);
    require_choice(c.nu > 0.0, "nu", sel.text);
    require_choice(c.t_min > 0.0 && c.t_max > c.t_min, "t_max", sel.text);
    return [c](const VerifierOptions& o) { return check_pointwise(c, o); };
  }
  if (sel.id == "band-decay") {
    BandDecayCase c;
    c.kernel = in.integer("kernel", 0);
    c.band = band_from_string(in.text("band", "low"), sel.text);
    c.dim = in.integer("n", 3);
    c.j = in.integer("j", 0);
    c.alpha = in.real("alpha", 0.0);
    c.lebesgue = in.real("r", 1.0);
    c.beta1 = in.real("beta1", 0.0);
    c.beta2 = in.real("beta2", 0.0);
    c.nu = in.real("nu", 1.0);
    c.t_min = in.real("t_min", c.t_min);
    c.t_max = in.real("t_max", c.t_max);
    c.per_decade = in.integer("per_decade", c.per_decade);
    in.finish();
    require_choice(c.kernel == 0 || c.kernel == 1, "kernel", sel.text);
    require_choice(c.j == 0 || c.j == 1, "j", sel.text);
    require_choice(c.dim >= kMinDim && c.dim <= kMaxDim, "n", sel.text);
    require_choice(c.per_decade >= 1, "per_decade", sel.text);
    require_choice(c.nu > 0.0, "nu", sel.text);
    require_choice(c.t_min > 0.0 && c.t_max > c.t_min, "t_max", sel.text);
    return [c](const VerifierOptions& o) { return check_band_decay(c, o); };
  }
  if (sel.id == "integral-power" || sel.id == "integral-exp") {
    IntegralLemmaCase c;
    const bool exp_kernel = sel.id == "integral-exp";
    if (exp_kernel) {
      c.t_min = 0.1;
      c.t_max = 1e3;
      c.c = in.real("c", 1.0);
    }
    c.alpha = in.real("alpha", 0.0);
    c.beta = in.real("beta", 0.0);
    c.t_min = in.real("t_min", c.t_min);
    c.t_max = in.real("t_max", c.t_max);
    c.per_decade = in.integer("per_decade", c.per_decade);
    in.finish();
    require_choice(c.per_decade >= 1, "per_decade", sel.text);
    require_choice(c.t_min > 0.0 && c.t_max > c.t_min, "t_max", sel.text);
    if (exp_kernel) {
      require_choice(c.c > 0.0, "c", sel.text);
      require_choice(c.alpha >= 0.0 && c.alpha < 1.0, "alpha", sel.text);
      return [c](const VerifierOptions& o) { return check_integral_exp(c, o); };
    }
    return [c](const VerifierOptions& o) { return check_integral_power(c, o); };
  }
  if (sel.id == "gagliardo-nirenberg") {
    GagliardoNirenbergCase c;
    c.dim = in.integer("n", 2);
    c.sigma = in.real("sigma", c.dim / 2.0 + 0.1);
    c.s = in.real("s", 1.0);
    c.r = in.real("r", 2.0);
    c.r0 = in.real("r0", 2.0);
    c.r1 = in.real("r1", 2.0);
    c.fields = in.integer("fields", 50);
    c.points = in.integer("N", default_points(c.dim));
    c.half_width = in.real("L", 8.0);
    in.finish();
    c.validate();
    return [c](const VerifierOptions& o) { return check_gagliardo_nirenberg(c, o); };
  }
  SobolevCase c;
  c.dim = in.integer("n", 2);
  c.eps = in.real("eps", 0.1);
  c.fields = in.integer("fields", 50);
  c.points = in.integer("N", default_points(c.dim));
  c.half_width = in.real("L", 8.0);
  in.finish();
  require_choice(c.dim >= 1 && c.dim <= 3, "n", sel.text);
  require_choice(c.eps > 0.0, "eps", sel.text);
  require_choice(c.fields >= 0 && c.points >= 8 && c.half_width > 0.0, "fields", sel.text);
  return [c](const VerifierOptions& o) { return check_sobolev_embedding(c, o); };
}

BoundCheckReport run_check(const CheckSelector& sel, const VerifierOptions& opt) {
  return prepare_check(sel)(opt);
}

std::vector<BoundCheckReport> run_checks(const std::vector<CheckSelector>& selectors,
                                         const VerifierOptions& opt) {
  // Validate every selector before spending time on any of them.
  std::vector<PreparedCheck> prepared;
  for (const auto& sel : selectors) prepared.push_back(prepare_check(sel));
  std::vector<BoundCheckReport> out(selectors.size());
  VerifierOptions inner = opt;
  inner.jobs = 1;
  parallel_for(selectors.size(), opt.jobs, [&](std::size_t i) { out[i] = prepared[i](inner); });
  return out;
}

}  // namespace sdwave
