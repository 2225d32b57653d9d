#include "sdwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "sdwave/params.hpp"

namespace sdwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

RateEntry unsupported(std::string reason) {
  RateEntry e;
  e.kind = RateKind::unsupported;
  e.reason = std::move(reason);
  return e;
}

RateEntry power_entry(double constant, double s_coef, double eps_coef, std::string formula) {
  RateEntry e;
  e.kind = RateKind::power;
  e.constant = constant;
  e.s_coefficient = s_coef;
  e.eps_coefficient = eps_coef;
  e.formula = std::move(formula);
  return e;
}

RateEntry sqrt_log_entry() {
  RateEntry e;
  e.kind = RateKind::sqrt_log;
  e.formula = "sqrt(log(t+e))";
  return e;
}

// L¹-term rate of the linear problem with smooth data. `generic_s` selects
// the Ḣ^s line for u (s >= 1); the u_t line always carries s.
RateEntry linear_l1_entry(int n, Field field, bool generic_s, DataClass::Datum datum) {
  const double base = -n / 8.0;
  const bool from_u0 = datum == DataClass::Datum::u0;
  if (field == Field::ut) {
    return from_u0 ? power_entry(base - 0.25, -0.25, 0.0, "(1+t)^{-n/8-(s+1)/4}")
                   : power_entry(base, -0.25, 0.0, "(1+t)^{-n/8-s/4}");
  }
  if (generic_s) {
    return from_u0 ? power_entry(base, -0.25, 0.0, "(1+t)^{-n/8-s/4}")
                   : power_entry(base + 0.25, -0.25, 0.0, "(1+t)^{-n/8-(s-1)/4}");
  }
  if (from_u0) return power_entry(base, 0.0, 0.0, "(1+t)^{-n/8}");
  if (n == 1) return power_entry(0.5, 0.0, 0.0, "t^{1/2}");
  if (n == 2) return sqrt_log_entry();
  return power_entry(base + 0.25, 0.0, 0.0, "(1+t)^{-n/8+1/4}");
}

// The slower of the L¹ term and the Sobolev term (1+t)^{-(ℓ-s)/2-shift}.
RateEntry with_sobolev_term(RateEntry l1, double ell, double s, double shift) {
  if (!std::isfinite(ell) || l1.kind != RateKind::power) return l1;
  const double sobolev = -(ell - s) / 2.0 - shift;
  if (sobolev <= l1.exponent(s, 0.0)) return l1;
  return power_entry(-ell / 2.0 - shift, 0.5, 0.0,
                     "(1+t)^{-(l-s)/2-" + fmt_num(shift) + "} (Sobolev term, l = " +
                         fmt_num(ell) + ")");
}

RateEntry linear_rate(int n, Field field, double s, const DataClass& data) {
  if (n < kMinDim || n > kMaxDim) return unsupported("linear estimates cover n = 1..5");
  if (s < 0.0 || !std::isfinite(s)) return unsupported("Sobolev order must be finite and >= 0");
  const bool from_u0 = data.datum == DataClass::Datum::u0;
  if (field == Field::u) {
    if (s == 0.0) {
      auto e = linear_l1_entry(n, field, false, data.datum);
      return from_u0 ? with_sobolev_term(e, data.ell1, 0.0, 0.0)
                     : with_sobolev_term(e, data.ell2, 0.0, 2.0);
    }
    const double upper = std::min(data.ell1 + 6.0, data.ell2 + 4.0);
    if (s < 1.0 || s > upper) {
      return unsupported("Sobolev order outside 1 <= s <= min{l1+6, l2+4} = " + fmt_num(upper));
    }
    auto e = linear_l1_entry(n, field, true, data.datum);
    return from_u0 ? with_sobolev_term(e, data.ell1, s, 0.0)
                   : with_sobolev_term(e, data.ell2, s, 2.0);
  }
  const double upper = std::min(data.ell1 + 2.0, data.ell2);
  if (s > upper) {
    return unsupported("Sobolev order outside 0 <= s <= min{l1+2, l2} = " + fmt_num(upper));
  }
  auto e = linear_l1_entry(n, field, true, data.datum);
  return from_u0 ? with_sobolev_term(e, data.ell1, s, 1.0) : with_sobolev_term(e, data.ell2, s, 3.0);
}

// Nonlinear decay rates; `top` selects the order n/2+ε.
RateEntry nonlinear_rate(RateSource source, int n, Field field, bool top) {
  const bool derivative = source == RateSource::derivative;
  if (derivative ? (n < 2 || n > 4) : (n < 2 || n > 5)) {
    return unsupported(derivative ? "derivative convection estimates cover n = 2..4"
                                  : "power convection estimates cover n = 2..5");
  }
  if (field == Field::u && !top) {
    return n == 2 ? sqrt_log_entry() : power_entry(-n / 8.0 + 0.25, 0, 0, "(1+t)^{-n/8+1/4}");
  }
  if (field == Field::u) {
    if (n == 5) return power_entry(-0.75, 0, 0.5, "(1+t)^{-3/4+eps/2}");
    return power_entry(-(n - 1) / 4.0, 0, -0.25, "(1+t)^{-(n-1+eps)/4}");
  }
  if (!top) return power_entry(-n / 8.0, 0, 0, "(1+t)^{-n/8}");
  if (!derivative) return unsupported("no estimate of the top-order norm of u_t for power convection");
  return power_entry(-n / 4.0, 0, -0.25, "(1+t)^{-(n+eps)/4}");
}

}  // namespace

const char* to_string(RateSource source) {
  switch (source) {
    case RateSource::linear: return "linear";
    case RateSource::power: return "power";
    case RateSource::derivative: return "derivative";
  }
  return "?";
}

RateSource rate_source_from_string(const std::string& name) {
  if (name == "linear") return RateSource::linear;
  if (name == "power") return RateSource::power;
  if (name == "derivative") return RateSource::derivative;
  throw InvalidArgument("unknown rate source: " + name);
}

RateEntry theoretical_rate(RateSource source, int dim, Field field, double s, double eps,
                           const DataClass& data) {
  if (source == RateSource::linear) return linear_rate(dim, field, s, data);
  if (!(eps > 0.0)) return unsupported("eps must be positive");
  const double top = dim / 2.0 + eps;
  if (s == 0.0) return nonlinear_rate(source, dim, field, false);
  if (std::abs(s - top) <= 1e-12 * top) return nonlinear_rate(source, dim, field, true);
  return unsupported("nonlinear estimates exist only for L2 and order n/2+eps");
}

std::vector<RateTableRow> rate_table() {
  using D = DataClass::Datum;
  std::vector<RateTableRow> rows;
  for (int n = 1; n <= 5; ++n) {
    for (D d : {D::u0, D::u1}) {
      rows.push_back({RateSource::linear, n, Field::u, "L2", d, linear_l1_entry(n, Field::u, false, d)});
      rows.push_back({RateSource::linear, n, Field::u, "s", d, linear_l1_entry(n, Field::u, true, d)});
      rows.push_back({RateSource::linear, n, Field::ut, "s", d, linear_l1_entry(n, Field::ut, true, d)});
    }
  }
  for (RateSource src : {RateSource::power, RateSource::derivative}) {
    const int n_max = src == RateSource::power ? 5 : 4;
    for (int n = 2; n <= n_max; ++n) {
      rows.push_back({src, n, Field::u, "L2", D::u0, nonlinear_rate(src, n, Field::u, false)});
      rows.push_back({src, n, Field::u, "top", D::u0, nonlinear_rate(src, n, Field::u, true)});
      rows.push_back({src, n, Field::ut, "L2", D::u0, nonlinear_rate(src, n, Field::ut, false)});
      if (src == RateSource::derivative) {
        rows.push_back({src, n, Field::ut, "top", D::u0, nonlinear_rate(src, n, Field::ut, true)});
      }
    }
  }
  return rows;
}

// ------------------------------------------------------------------ fits --

const char* to_string(FitModel model) {
  switch (model) {
    case FitModel::power: return "power";
    case FitModel::sqrt_log: return "sqrt-log";
    case FitModel::log: return "log";
  }
  return "?";
}

FitModel fit_model_from_string(const std::string& name) {
  if (name == "power") return FitModel::power;
  if (name == "sqrt-log") return FitModel::sqrt_log;
  if (name == "log") return FitModel::log;
  throw InvalidArgument("unknown fit model: " + name);
}

FitWindow default_window(const std::vector<double>& times, const std::vector<bool>& contaminated) {
  double last = -kInf;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const bool bad = i < contaminated.size() && contaminated[i];
    if (!bad) last = std::max(last, times[i]);
  }
  if (!(last > 0.0)) throw InvalidArgument("no trusted positive times to fit");
  return {last / 10.0, last};
}

FitResult fit_decay(const std::vector<double>& times, const std::vector<double>& values,
                    const std::vector<bool>& contaminated, FitModel model, FitWindow window) {
  if (times.size() != values.size()) throw InvalidArgument("fit: times/values size mismatch");
  if (!(window.t_a < window.t_b)) throw InvalidArgument("fit window needs t_a < t_b");

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> ratio;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t < window.t_a || t > window.t_b) continue;
    if (i < contaminated.size() && contaminated[i]) {
      throw InvalidArgument("fit window [" + fmt_num(window.t_a) + ", " + fmt_num(window.t_b) +
                            "] contains boundary-contaminated samples");
    }
    const double v = values[i];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("fit needs positive finite values; got " + fmt_num(v) + " at t = " +
                            fmt_num(t));
    }
    const double loglog = std::log(std::log(t + std::numbers::e));
    xs.push_back(model == FitModel::power ? std::log1p(t) : loglog);
    ys.push_back(std::log(v));
    ratio.push_back(v / std::sqrt(std::log(t + std::numbers::e)));
  }
  if (xs.size() < 8) {
    throw InvalidArgument("fit needs at least 8 samples in the window, got " +
                          std::to_string(xs.size()));
  }

  FitResult r;
  r.model = model;
  r.window = window;
  r.samples = xs.size();
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  if (model == FitModel::sqrt_log) {
    r.slope = 0.5;
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    r.band = *hi / *lo;
  } else {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidArgument("fit window has no spread in time");
    r.slope = sxy / sxx;
  }
  r.intercept = my - r.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (r.intercept + r.slope * xs[i]);
    ss += e * e;
  }
  r.residual_rms = std::sqrt(ss / m);
  return r;
}

FitResult fit_decay(const NormSeries& series, const std::string& column, FitModel model,
                    std::optional<FitWindow> window) {
  const auto& values = series.column(column);
  const FitWindow w = window ? *window : default_window(series.times, series.contaminated);
  return fit_decay(series.times, values, series.contaminated, model, w);
}

double kendall_tau(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  long long score = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (values[k] > values[i]) ++score;
      else if (values[k] < values[i]) --score;
    }
  }
  return static_cast<double>(score) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

RateComparison compare_rate(const std::string& quantity, const RateEntry& theory,
                            const NormSeries& series, double eps, double s, double tolerance,
                            double band_limit, std::optional<FitWindow> window) {
  RateComparison c;
  c.quantity = quantity;
  c.theory = theory;
  c.tolerance = tolerance;
  const auto& values = series.column(quantity);
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
    c.gated = false;
    c.pass = true;
    c.detail = "identically zero series; gate vacuous";
    return c;
  }
  if (!theory.supported()) {
    c.gated = false;
    c.pass = true;
    c.detail = "no theoretical rate: " + theory.reason;
    return c;
  }
  if (theory.kind == RateKind::sqrt_log) {
    c.fit = fit_decay(series, quantity, FitModel::sqrt_log, window);
    c.pass = c.fit.band <= band_limit;
    c.tolerance = band_limit;
    c.detail = "sqrt-log band " + fmt_num(c.fit.band) + " (limit " + fmt_num(band_limit) + ")";
    return c;
  }
  c.fit = fit_decay(series, quantity, FitModel::power, window);
  const double expected = theory.exponent(s, eps);
  c.expected = expected;
  c.pass = std::abs(c.fit.slope - expected) <= tolerance;
  c.detail = "slope " + fmt_num(c.fit.slope) + " vs " + fmt_num(expected) + " ± " +
             fmt_num(tolerance);
  return c;
}

ProfileGate profile_gate(const ProfileResidualSeries& series, int dim, double margin,
                         std::optional<FitWindow> window) {
  ProfileGate g;
  g.slope_limit = -dim / 8.0 + margin;
  const auto& r = series.residual;
  if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) {
    g.gated = false;
    g.pass = true;
    g.slope_ok = g.decreasing = true;
    g.detail = "identically zero residual; gate vacuous";
    return g;
  }
  const std::vector<bool> clean(series.times.size(), false);
  const FitWindow w = window ? *window : default_window(series.times, clean);
  g.fit = fit_decay(series.times, r, clean, FitModel::power, w);
  g.slope_ok = g.fit.slope <= g.slope_limit;

  g.decreasing = true;
  double previous = INFINITY;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t < w.t_a || t > w.t_b) continue;
    const double scaled = r[i] * std::pow(t, dim / 8.0 - 0.25);
    if (!(scaled < previous)) g.decreasing = false;
    previous = scaled;
  }
  g.pass = g.slope_ok && g.decreasing;
  g.detail = "residual slope " + fmt_num(g.fit.slope) + " (limit " + fmt_num(g.slope_limit) + ")" +
             (g.decreasing ? "" : "; residual·t^{n/8-1/4} not strictly decreasing");
  return g;
}

// -------------------------------------------------- solution-space norms --

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::X1: return "X1";
    case SpaceKind::X2: return "X2";
    case SpaceKind::Y: return "Y";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& name) {
  if (name == "X1") return SpaceKind::X1;
  if (name == "X2") return SpaceKind::X2;
  if (name == "Y") return SpaceKind::Y;
  throw InvalidArgument("unknown solution space: " + name);
}

SpaceKind solution_space_for(int dim, int j) {
  if (j == 1) return SpaceKind::Y;
  return dim == 5 ? SpaceKind::X2 : SpaceKind::X1;
}

double ell_weight(int dim, double tau) {
  if (dim == 2) return 1.0 / std::sqrt(std::log(tau + std::numbers::e));
  if (dim == 3 || dim == 4) return std::pow(1.0 + tau, dim / 8.0 - 0.25);
  throw InvalidArgument("weight l(tau) is defined for n = 2, 3, 4");
}

SolutionSpaceNorm solution_space_norm(const NormSeries& trajectory, SpaceKind kind, int dim,
                                      double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (kind == SpaceKind::X2 ? dim != 5 : (dim < 2 || dim > 4)) {
    throw InvalidArgument(std::string("space ") + to_string(kind) + " is not defined for n = " +
                          std::to_string(dim));
  }
  const double top = dim / 2.0 + eps;

  struct Term {
    std::string column;
    std::function<double(double)> weight;
  };
  std::vector<Term> terms;
  if (kind == SpaceKind::X2) {
    terms = {{norm_quantity(Field::u, 0.0), [](double t) { return std::pow(1 + t, 0.375); }},
             {norm_quantity(Field::u, top),
              [eps](double t) { return std::pow(1 + t, 0.75 - eps / 2); }},
             {norm_quantity(Field::ut, 0.0), [](double t) { return std::pow(1 + t, 0.625); }}};
  } else {
    terms = {{norm_quantity(Field::u, 0.0), [dim](double t) { return ell_weight(dim, t); }},
             {norm_quantity(Field::u, top),
              [dim, eps](double t) { return std::pow(1 + t, (dim - 1 + eps) / 4); }},
             {norm_quantity(Field::ut, 0.0), [dim](double t) { return std::pow(1 + t, dim / 8.0); }}};
    if (kind == SpaceKind::Y) {
      terms.push_back({norm_quantity(Field::ut, top),
                       [dim, eps](double t) { return std::pow(1 + t, (dim + eps) / 4); }});
    }
  }

  std::vector<const std::vector<double>*> cols;
  for (const auto& term : terms) cols.push_back(&trajectory.column(term.column));

  SolutionSpaceNorm out;
  out.kind = kind;
  for (const auto& term : terms) out.term_sups.emplace_back(term.column, 0.0);
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    if (i < trajectory.contaminated.size() && trajectory.contaminated[i]) continue;
    const double t = trajectory.times[i];
    double total = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const double v = terms[k].weight(t) * (*cols[k])[i];
      total += v;
      out.term_sups[k].second = std::max(out.term_sups[k].second, v);
    }
    if (std::isnan(out.sup_time) || total >= out.value) {
      out.value = total;
      out.sup_time = t;
    }
  }
  return out;
}

double theta0_n5(double eps) { return 2.5 / (2.5 + eps); }
double theta1_n5(double eps) { return 1.0 / (2.5 + eps); }
double epsilon2_n5(double eps) { return 13.0 * eps / (4.0 * (5.0 + 2.0 * eps)); }

// ------------------------------------------------- admissible exponents --

std::string Threshold::describe() const {
  std::string s(1, symbol);
  return strict ? s + " > " + fmt_num(value) + " (strict)" : s + " ≥ " + fmt_num(value);
}

bool AdmissibleExponent::admits(double p, std::optional<double> q) const {
  if (!supported) return false;
  for (const auto& t : thresholds) {
    if (t.symbol == 'p' && !t.admits(p)) return false;
    if (t.symbol == 'q' && (!q || !t.admits(*q))) return false;
  }
  return true;
}

std::string AdmissibleExponent::describe() const {
  if (!supported) return message;
  std::string out;
  for (const auto& t : thresholds) {
    if (!out.empty()) out += ", ";
    out += t.describe();
  }
  return out;
}

AdmissibleExponent admissible_exponent(int dim, int j, bool mixed) {
  AdmissibleExponent a;
  a.dim = dim;
  a.j = j;
  a.mixed = mixed;
  if (j != 0 && j != 1) {
    a.message = "unsupported: j must be 0 or 1";
    return a;
  }
  const int n_max = j == 0 ? 5 : 4;
  if (mixed) {
    a.family = j == 0 ? "|u|^p + a·∇|u|^q, n = 2..5" : "|u_t|^p + a·∇|u_t|^q, n = 2..4";
  } else {
    a.family = j == 0 ? "a·∇|u|^p, n = 2..5" : "a·∇|u_t|^p, n = 2..4";
  }
  if (dim < 2 || dim > n_max) {
    a.message = "unsupported: " + a.family + " (no result for n = " + std::to_string(dim) + ")";
    return a;
  }
  a.supported = true;
  // Each threshold is one rounded division, so 7/3 compares equal to 7.0 / 3.
  const double n = dim;
  const double derivative_bound = std::max((n + 3.0) / n, 2.0);
  if (!mixed && j == 0) {
    a.thresholds = {dim == 2 ? Threshold{'p', 5.0, true} : Threshold{'p', (n + 3.0) / (n - 1), false}};
  } else if (!mixed) {
    a.thresholds = {Threshold{'p', derivative_bound, false}};
  } else if (j == 0) {
    if (dim == 2) {
      a.thresholds = {Threshold{'p', 6.0, true}, Threshold{'q', 5.0, true}};
    } else {
      a.thresholds = {Threshold{'p', (n + 4.0) / (n - 1), true},
                      Threshold{'q', (n + 3.0) / (n - 1), false}};
    }
  } else {
    a.thresholds = {Threshold{'p', (n + 4.0) / n, true}, Threshold{'q', derivative_bound, false}};
  }
  return a;
}

}  // namespace sdwave
