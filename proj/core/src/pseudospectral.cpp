#include "sdwave/pseudospectral.hpp"

#include <algorithm>
#include <cmath>

namespace sdwave {

namespace {

// |w|^p with a multiplication fast path for small integer exponents, which
// keeps p = 2 exactly alias-free under the 2/3 rule.
void abs_power(std::span<const double> w, double p, std::span<double> out) {
  const double rounded = std::round(p);
  if (rounded == p && p >= 1.0 && p <= 16.0) {
    const int k = static_cast<int>(rounded);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double a = std::abs(w[i]);
      double v = a;
      for (int e = 1; e < k; ++e) v *= a;
      out[i] = v;
    }
    return;
  }
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::pow(std::abs(w[i]), p);
}

bool all_finite(const std::vector<cplx>& v) {
  return std::all_of(v.begin(), v.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

}  // namespace

bool NonlinearitySpec::has_convection() const {
  return std::any_of(a.begin(), a.end(), [](double x) { return x != 0.0; });
}

void NonlinearitySpec::validate(int dim) const {
  if (j != 0 && j != 1) throw InvalidArgument("nonlinearity order j must be 0 or 1");
  require_finite(p, "p");
  if (!(p > 1.0)) throw InvalidArgument("exponent p must exceed 1");
  if (q) {
    require_finite(*q, "q");
    if (!(*q > 1.0)) throw InvalidArgument("exponent q must exceed 1");
  }
  if (!a.empty() && static_cast<int>(a.size()) != dim) {
    throw InvalidArgument("convection vector a must have one entry per dimension");
  }
  for (double x : a) require_finite(x, "a");
}

const char* to_string(Scheme scheme) { return scheme == Scheme::etd1 ? "etd1" : "etd2"; }

Scheme scheme_from_string(const std::string& name) {
  if (name == "etd1") return Scheme::etd1;
  if (name == "etd2") return Scheme::etd2;
  throw InvalidArgument("unknown scheme '" + name + "' (expected etd1 or etd2)");
}

void StepperConfig::validate() const {
  require_finite(dt, "dt");
  require_finite(t_end, "t_end");
  require_finite(output_interval, "output_interval");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (t_end < 0.0) throw InvalidArgument("t_end must be nonnegative");
  if (output_interval < 0.0) throw InvalidArgument("output_interval must be nonnegative");
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blow_up: return "blow-up";
    case RunStatus::non_finite: return "non-finite";
  }
  return "unknown";
}

double trusted_time(const PeriodicGrid& grid, double support_radius) {
  return std::max(0.0, grid.half_width() - support_radius);
}

PseudospectralSolver::PseudospectralSolver(PeriodicGrid grid, double nu,
                                           NonlinearitySpec nonlinearity, StepperConfig stepper)
    : grid_(std::move(grid)),
      nu_(nu),
      nl_(std::move(nonlinearity)),
      cfg_(stepper),
      transform_(grid_) {
  require_finite(nu, "nu");
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  nl_.validate(grid_.dim());
  if (nl_.a.empty()) nl_.a.assign(static_cast<std::size_t>(grid_.dim()), 0.0);
  cfg_.validate();

  const std::size_t ns = grid_.spectral_size();
  a_dot_xi_.assign(ns, 0.0);
  for (int d = 0; d < grid_.dim(); ++d) {
    const auto& dxi = grid_.derivative_wavenumbers(d);
    for (std::size_t m = 0; m < ns; ++m) a_dot_xi_[m] += nl_.a[static_cast<std::size_t>(d)] * dxi[m];
  }
  work_phys_.resize(grid_.physical_size());
  work_phys2_.resize(grid_.physical_size());
  work_spec_.resize(ns);
  n0_.resize(ns);
  n1_.resize(ns);
  build_step_tables();
}

void PseudospectralSolver::set_epsilon(double eps) {
  require_finite(eps, "epsilon");
  if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
  epsilon_ = eps;
}

void PseudospectralSolver::build_step_tables() {
  const auto& xi = grid_.xi_magnitudes();
  step_k_.resize(xi.size());
  step_w_.resize(xi.size());
  for (std::size_t m = 0; m < xi.size(); ++m) {
    step_k_[m] = propagator(nu_, cfg_.dt, xi[m]);
    step_w_[m] = duhamel_weights(nu_, cfg_.dt, xi[m]);
  }
}

GridState PseudospectralSolver::initial_state(std::span<const double> u0,
                                              std::span<const double> u1) {
  GridState s;
  s.u_hat.resize(grid_.spectral_size());
  s.v_hat.resize(grid_.spectral_size());
  transform_.forward(u0, s.u_hat);
  transform_.forward(u1, s.v_hat);
  return s;
}

GridState PseudospectralSolver::initial_state(const RadialProfile& u0, const RadialProfile& u1) {
  const int n = grid_.points();
  const int dim = grid_.dim();
  std::vector<double> a(grid_.physical_size());
  std::vector<double> b(grid_.physical_size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t rest = i;
    double x2 = 0.0;
    for (int d = 0; d < dim; ++d) {
      const double x = grid_.coordinate(static_cast<int>(rest % static_cast<std::size_t>(n)));
      rest /= static_cast<std::size_t>(n);
      x2 += x * x;
    }
    a[i] = u0.physical(dim, x2);
    b[i] = u1.physical(dim, x2);
  }
  return initial_state(a, b);
}

GridState PseudospectralSolver::linear_step(const GridState& state, double dt) const {
  require_finite(dt, "dt");
  if (dt < 0.0) throw InvalidArgument("dt must be nonnegative");
  GridState out = state;
  const auto& xi = grid_.xi_magnitudes();
  for (std::size_t m = 0; m < xi.size(); ++m) {
    const auto K = propagator(nu_, dt, xi[m]);
    const cplx u = state.u_hat[m];
    const cplx v = state.v_hat[m];
    out.u_hat[m] = K.k0 * u + K.k1 * v;
    out.v_hat[m] = K.dk0 * u + K.dk1 * v;
  }
  out.time = state.time + dt;
  return out;
}

bool PseudospectralSolver::nonlinear_rhs(const GridState& state, std::vector<cplx>& out) {
  const std::size_t ns = grid_.spectral_size();
  out.assign(ns, cplx(0.0, 0.0));
  const bool convect = nl_.has_convection();
  if (!convect && !nl_.mixed()) return true;

  transform_.inverse(nl_.j == 0 ? state.u_hat : state.v_hat, work_phys_);
  double peak = 0.0;
  for (double w : work_phys_) peak = std::max(peak, std::abs(w));
  if (!(peak <= kBlowUpThreshold)) return false;

  if (convect) {
    abs_power(work_phys_, nl_.convection_exponent(), work_phys2_);
    transform_.forward(work_phys2_, work_spec_);
    for (std::size_t m = 0; m < ns; ++m) out[m] = cplx(0.0, a_dot_xi_[m]) * work_spec_[m];
  }
  if (nl_.mixed()) {
    abs_power(work_phys_, nl_.p, work_phys2_);
    transform_.forward(work_phys2_, work_spec_);
    for (std::size_t m = 0; m < ns; ++m) out[m] += work_spec_[m];
  }
  if (cfg_.dealias) {
    const auto& mask = grid_.dealias_mask();
    for (std::size_t m = 0; m < ns; ++m) {
      if (!mask[m]) out[m] = 0.0;
    }
  }
  return true;
}

RunStatus PseudospectralSolver::etd_step(GridState& state) {
  return etd_step(state, [this](const GridState& s, std::vector<cplx>& out) {
    return nonlinear_rhs(s, out);
  });
}

RunStatus PseudospectralSolver::etd_step(GridState& state, const SpectralForcing& forcing) {
  const std::size_t ns = grid_.spectral_size();
  const double h = cfg_.dt;
  if (!forcing(state, n0_)) return RunStatus::blow_up;

  predicted_.time = state.time + h;
  predicted_.u_hat.resize(ns);
  predicted_.v_hat.resize(ns);
  for (std::size_t m = 0; m < ns; ++m) {
    const auto& K = step_k_[m];
    const cplx u = state.u_hat[m];
    const cplx v = state.v_hat[m];
    predicted_.u_hat[m] = K.k0 * u + K.k1 * v + step_w_[m].first * n0_[m];
    predicted_.v_hat[m] = K.dk0 * u + K.dk1 * v + K.k1 * n0_[m];
  }

  if (cfg_.scheme == Scheme::etd2) {
    if (!forcing(predicted_, n1_)) return RunStatus::blow_up;
    const double inv_h = 1.0 / h;
    for (std::size_t m = 0; m < ns; ++m) {
      const cplx dn = n1_[m] - n0_[m];
      predicted_.u_hat[m] += step_w_[m].second * inv_h * dn;
      predicted_.v_hat[m] += step_w_[m].first * inv_h * dn;
    }
  }
  if (!all_finite(predicted_.u_hat) || !all_finite(predicted_.v_hat)) {
    return RunStatus::non_finite;
  }
  std::swap(state, predicted_);
  return RunStatus::completed;
}

std::vector<std::string> PseudospectralSolver::norm_names() const {
  const double s = 0.5 * grid_.dim() + epsilon_;
  return {norm_quantity(Field::u, 0.0), norm_quantity(Field::u, s), norm_quantity(Field::ut, 0.0),
          norm_quantity(Field::ut, s)};
}

std::vector<double> PseudospectralSolver::norms(const GridState& state) const {
  const double s = 0.5 * grid_.dim() + epsilon_;
  const auto& xi = grid_.xi_magnitudes();
  const auto& w = grid_.parseval_weights();
  double u0 = 0.0, us = 0.0, v0 = 0.0, vs = 0.0;
  for (std::size_t m = 0; m < xi.size(); ++m) {
    const double a = std::norm(state.u_hat[m]) * w[m];
    const double b = std::norm(state.v_hat[m]) * w[m];
    const double weight = xi[m] > 0.0 ? std::pow(xi[m], 2.0 * s) : 0.0;
    u0 += a;
    v0 += b;
    us += weight * a;
    vs += weight * b;
  }
  const double vol = grid_.volume();
  return {std::sqrt(vol * u0), std::sqrt(vol * us), std::sqrt(vol * v0), std::sqrt(vol * vs)};
}

RunResult PseudospectralSolver::run(GridState state, double trusted_until,
                                    const std::function<void(const GridState&)>& on_sample) {
  RunResult result;
  const auto names = norm_names();
  for (const auto& name : names) result.norms.add_column(name);
  const long long total = std::llround(cfg_.t_end / cfg_.dt);
  const long long every =
      cfg_.output_interval > 0.0 ? std::max(1LL, std::llround(cfg_.output_interval / cfg_.dt)) : 1;
  const double t0 = state.time;

  auto sample = [&] {
    result.norms.push_time(state.time, state.time > trusted_until * (1.0 + 1e-12));
    const auto values = norms(state);
    for (std::size_t c = 0; c < values.size(); ++c) result.norms.columns[c].second.push_back(values[c]);
    if (on_sample) on_sample(state);
  };

  sample();
  result.last_valid_time = state.time;
  for (long long step = 1; step <= total; ++step) {
    const auto status = etd_step(state);
    if (status != RunStatus::completed) {
      result.status = status;
      break;
    }
    state.time = t0 + static_cast<double>(step) * cfg_.dt;
    result.last_valid_time = state.time;
    result.steps = static_cast<std::size_t>(step);
    if (step % every == 0 || step == total) sample();
  }
  result.final_state = std::move(state);
  return result;
}

std::vector<double> PseudospectralSolver::physical(const std::vector<cplx>& spectral) {
  std::vector<double> out(grid_.physical_size());
  transform_.inverse(spectral, out);
  return out;
}

}  // namespace sdwave
