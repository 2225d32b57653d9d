#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "sdwave/analysis.hpp"
#include "sdwave/io.hpp"
#include "sdwave/pseudospectral.hpp"
#include "sdwave/radial.hpp"
#include "sdwave/verifier.hpp"

namespace sdwave::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Context {
  std::string command;
  json config;
  fs::path out_dir;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool strict = false;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> warnings;

  fs::path file(const std::string& key) const { return out_dir / get_string(config, key); }

  void warn(const std::string& message) {
    warnings.push_back(message);
    err << "warning: " << message << '\n';
  }
};

/// One writer per path: files are written whole, in one place.
void write_file(const fs::path& path, const std::string& content, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

template <typename Writer>
void write_stream(const fs::path& path, Writer&& writer) {
  std::ostringstream s;
  writer(s);
  write_file(path, s.str());
}

void write_manifest(const Context& ctx) {
  const json manifest = {
      {"command", ctx.command}, {"version", kVersion}, {"seed", ctx.seed},
      {"jobs", ctx.jobs},       {"strict", ctx.strict}, {"config", ctx.config},
  };
  write_file(ctx.out_dir / "manifest.json", manifest.dump(2) + "\n");
}

/// Applies --strict to an otherwise passing verdict.
int finish(Context& ctx, int code) {
  if (code == kPass && ctx.strict && !ctx.warnings.empty()) {
    ctx.err << fmt::format("strict mode: {} warning(s) treated as failures\n", ctx.warnings.size());
    return kGateFailure;
  }
  return code;
}

int dimension(const json& config, int max_dim = kMaxDim) {
  const int n = get_int(config, "problem.n");
  if (n < kMinDim || n > kMaxDim) throw ConfigError("dimension out of supported range 1..5");
  if (n > max_dim) {
    throw ConfigError(fmt::format("this command supports n = 1..{} (got n = {})", max_dim, n));
  }
  return n;
}

RadialProfile datum(const json& config, const std::string& key, int dim) {
  const auto kind = profile_kind_from_string(get_string(config, key + ".family"));
  const double amplitude = get_number(config, key + ".amplitude");
  const double width = get_number(config, key + ".width");
  const bool unit_mass = get_bool(config, key + ".unit_mass");
  if (kind == ProfileKind::zero) return RadialProfile::zero();
  if (kind == ProfileKind::laplacian_gaussian) {
    if (unit_mass) throw ConfigError("key '" + key + ".unit_mass' applies to the gaussian family only");
    return RadialProfile::laplacian_gaussian(amplitude, width);
  }
  if (!unit_mass) return RadialProfile::gaussian(amplitude, width);
  auto p = RadialProfile::unit_mass_gaussian(dim, width);
  p.amplitude *= amplitude;
  return p;
}

std::optional<FitWindow> fit_window(const json& config, const std::string& key) {
  const json& w = at(config, key);
  if (w.is_null()) return std::nullopt;
  const auto v = get_numbers(config, key);
  if (v.size() != 2 || !(v[0] > 0.0) || !(v[1] > v[0])) {
    throw ConfigError("key '" + key + "' expects [t_a, t_b] with 0 < t_a < t_b");
  }
  return FitWindow{v[0], v[1]};
}

LinearRunConfig radial_run(const Context& ctx, int dim) {
  const json& c = ctx.config;
  LinearRunConfig cfg;
  cfg.dim = dim;
  cfg.nu = get_number(c, "problem.nu");
  cfg.u0 = datum(c, "data.u0", dim);
  cfg.u1 = datum(c, "data.u1", dim);
  cfg.t_min = get_number(c, "discretization.t_min");
  cfg.t_max = get_number(c, "discretization.t_max");
  cfg.points_per_decade = get_int(c, "discretization.points_per_decade");
  cfg.quadrature.r_min = get_number(c, "discretization.r_min");
  cfg.quadrature.r_max = get_number(c, "discretization.r_max");
  cfg.quadrature.panels_per_decade = get_int(c, "discretization.panels_per_decade");
  cfg.quadrature.refinement = get_int(c, "discretization.refinement");
  cfg.jobs = ctx.jobs;
  return cfg;
}

/// Slower of the two data contributions; with both data present the
/// estimate is the sum of the two.
RateEntry linear_rate(int dim, Field field, double s, double eps, const LinearRunConfig& cfg) {
  std::vector<RateEntry> parts;
  if (!cfg.u0.is_zero()) parts.push_back(theoretical_rate(RateSource::linear, dim, field, s, eps, {DataClass::Datum::u0}));
  if (!cfg.u1.is_zero()) parts.push_back(theoretical_rate(RateSource::linear, dim, field, s, eps, {DataClass::Datum::u1}));
  if (parts.empty()) return theoretical_rate(RateSource::linear, dim, field, s, eps, {});
  RateEntry best = parts.front();
  for (const auto& p : parts) {
    if (!p.supported()) return p;
    if (p.kind == RateKind::sqrt_log) best = p;
    else if (best.kind == RateKind::power && p.exponent(s, eps) > best.exponent(s, eps)) best = p;
  }
  return best;
}

double last_value(const NormSeries& s, const std::string& column) {
  const auto& v = s.column(column);
  for (std::size_t i = v.size(); i-- > 0;) {
    if (!s.contaminated[i] && v[i] > 0.0) return v[i];
  }
  return 0.0;
}

// ----------------------------------------------------------- linear-decay --

int cmd_linear_decay(Context& ctx) {
  const json& c = ctx.config;
  const int dim = dimension(c);
  auto cfg = radial_run(ctx, dim);
  cfg.u_orders = get_numbers(c, "analysis.u_orders");
  cfg.ut_orders = get_numbers(c, "analysis.ut_orders");
  cfg.profile = false;
  const double eps = get_number(c, "analysis.epsilon");
  const double tolerance = get_number(c, "analysis.tolerance");
  const double band_limit = get_number(c, "analysis.band_limit");
  const auto window = fit_window(c, "analysis.fit_window");
  cfg.validate();

  fs::create_directories(ctx.out_dir);
  write_manifest(ctx);

  const auto report = linear_decay_run(cfg);
  for (const auto& w : report.warnings) ctx.warn(w);
  write_stream(ctx.file("output.norms"), [&](std::ostream& o) { write_norm_csv(o, report.norms); });

  std::vector<RateComparison> comparisons;
  PlotRequest plot{fmt::format("linear decay, n = {}", dim), get_string(c, "output.norms"), "norms.png", {}, {}};
  auto gate = [&](Field field, double s) {
    const std::string q = norm_quantity(field, s);
    const auto theory = linear_rate(dim, field, s, eps, cfg);
    comparisons.push_back(compare_rate(q, theory, report.norms, eps, s, tolerance, band_limit, window));
    plot.quantities.push_back(q);
    const auto& cmp = comparisons.back();
    if (cmp.gated) {
      plot.guides.push_back({q + ": " + theory.formula, theory.kind, cmp.expected,
                             report.norms.times.back(), last_value(report.norms, q)});
    }
  };
  for (double s : cfg.u_orders) gate(Field::u, s);
  for (double s : cfg.ut_orders) gate(Field::ut, s);

  write_stream(ctx.file("output.fits"), [&](std::ostream& o) { write_fit_csv(o, comparisons); });
  write_file(ctx.file("output.plot"), gnuplot_script(plot));

  ctx.out << fmt::format("linear decay: n = {}, nu = {}, {} nodes, r_max = {:.3g}\n", dim, cfg.nu,
                         report.node_count, report.r_max);
  ctx.out << comparison_table(comparisons);
  bool pass = true;
  for (const auto& cmp : comparisons) {
    if (!cmp.pass) {
      pass = false;
      ctx.err << fmt::format("gate failed: {}: {}\n", cmp.quantity, cmp.detail);
    }
  }
  ctx.out << (pass ? "PASS\n" : "FAIL\n");
  return finish(ctx, pass ? kPass : kGateFailure);
}

// ---------------------------------------------------------- profile-check --

int cmd_profile_check(Context& ctx) {
  const json& c = ctx.config;
  const int dim = dimension(c);
  auto cfg = radial_run(ctx, dim);
  cfg.profile = true;
  const std::string convention = get_string(c, "analysis.convention");
  if (convention == "with-nu") cfg.convention = ProfileConvention::with_nu;
  else if (convention == "literal") cfg.convention = ProfileConvention::literal;
  else throw ConfigError("key 'analysis.convention' must be \"with-nu\" or \"literal\"");
  const double margin = get_number(c, "analysis.slope_margin");
  const auto window = fit_window(c, "analysis.fit_window");
  cfg.validate();

  fs::create_directories(ctx.out_dir);
  write_manifest(ctx);

  const auto report = linear_decay_run(cfg);
  for (const auto& w : report.warnings) ctx.warn(w);
  write_stream(ctx.file("output.residual"), [&](std::ostream& o) { write_profile_csv(o, report.profile); });

  const auto gate = profile_gate(report.profile, dim, margin, window);
  PlotRequest plot{fmt::format("profile residual, n = {}", dim), get_string(c, "output.residual"),
                   "profile.png", {"residual", "leading"}, {}};
  if (gate.gated) {
    plot.guides.push_back({fmt::format("(1+t)^(-{}/8)", dim), RateKind::power, -dim / 8.0,
                           report.profile.times.back(), report.profile.residual.back()});
  }
  write_file(ctx.file("output.plot"), gnuplot_script(plot));

  ctx.out << fmt::format("profile check: n = {}, moments P0 = {:.6g}, P1 = {:.6g}\n", dim,
                         report.moments.p0, report.moments.p1);
  ctx.out << gate.detail << '\n';
  if (!gate.pass) ctx.err << "gate failed: profile residual: " << gate.detail << '\n';
  ctx.out << (gate.pass ? "PASS\n" : "FAIL\n");
  return finish(ctx, gate.pass ? kPass : kGateFailure);
}

// --------------------------------------------------------------- simulate --

std::string admissibility_note(int dim, const NonlinearitySpec& nl) {
  const auto adm = admissible_exponent(dim, nl.j, nl.mixed());
  if (!adm.supported) return adm.message + "; the run is outside the small-data theory (advisory only)";
  if (!adm.admits(nl.p, nl.q)) {
    return fmt::format("exponents outside the admissible range {} for {} (advisory only)", adm.describe(),
                       adm.family);
  }
  return fmt::format("exponents admissible: {} for {}", adm.describe(), adm.family);
}

int cmd_simulate(Context& ctx) {
  const json& c = ctx.config;
  const int dim = dimension(c, 3);
  const double nu = get_number(c, "problem.nu");

  NonlinearitySpec nl;
  nl.j = get_int(c, "problem.j");
  nl.p = get_number(c, "problem.p");
  if (!at(c, "problem.q").is_null()) nl.q = get_number(c, "problem.q");
  if (at(c, "problem.a").is_null()) {
    nl.a.assign(static_cast<std::size_t>(dim), 0.0);
    nl.a[0] = 1.0;
  } else {
    nl.a = get_numbers(c, "problem.a");
  }
  nl.validate(dim);

  StepperConfig st;
  st.scheme = scheme_from_string(get_string(c, "stepper.scheme"));
  st.dt = get_number(c, "stepper.dt");
  st.t_end = get_number(c, "stepper.t_end");
  st.output_interval = get_number(c, "stepper.output_interval");
  st.dealias = get_bool(c, "stepper.dealias");
  st.validate();

  const auto u0 = datum(c, "data.u0", dim);
  const auto u1 = datum(c, "data.u1", dim);
  const PeriodicGrid grid(dim, get_int(c, "discretization.N"), get_number(c, "discretization.L"));
  const double eps = get_number(c, "analysis.epsilon");
  const bool twin = get_bool(c, "analysis.twin");
  const double twin_factor = get_number(c, "analysis.twin_factor");
  const double snapshot_interval = get_number(c, "output.snapshot_interval");
  if (!(eps > 0.0)) throw ConfigError("key 'analysis.epsilon' must be positive");
  if (!(snapshot_interval >= 0.0)) throw ConfigError("key 'output.snapshot_interval' must be >= 0");

  fs::create_directories(ctx.out_dir);
  write_manifest(ctx);
  ctx.out << "note: " << admissibility_note(dim, nl) << '\n';

  PseudospectralSolver solver(grid, nu, nl, st);
  solver.set_epsilon(eps);
  const double trusted = trusted_time(grid, std::max(u0.support_radius(), u1.support_radius()));
  if (trusted < st.t_end) {
    ctx.warn(fmt::format("samples after t = {:.4g} are boundary-contaminated (L = {})", trusted, grid.half_width()));
  }

  int snapshot_index = 0;
  double next_snapshot = 0.0;
  auto on_sample = [&](const GridState& s) {
    if (snapshot_interval <= 0.0 || s.time + 1e-9 * st.dt < next_snapshot) return;
    Snapshot snap;
    snap.header = {dim, grid.points(), grid.half_width(), s.time, {"u", "ut"}};
    snap.data = {solver.physical(s.u_hat), solver.physical(s.v_hat)};
    write_stream(ctx.out_dir / fmt::format("snapshot_{:04d}.bin", snapshot_index++),
                 [&](std::ostream& o) { write_snapshot(o, snap); });
    next_snapshot += snapshot_interval;
  };
  const auto result = solver.run(solver.initial_state(u0, u1), trusted, on_sample);
  write_stream(ctx.file("output.norms"), [&](std::ostream& o) { write_norm_csv(o, result.norms); });

  json summary = {{"status", to_string(result.status)},
                  {"last_valid_time", result.last_valid_time},
                  {"steps", result.steps},
                  {"trusted_until", std::isfinite(trusted) ? json(trusted) : json(nullptr)},
                  {"admissibility", admissibility_note(dim, nl)}};
  if (result.status != RunStatus::completed) {
    write_file(ctx.file("output.summary"), summary.dump(2) + "\n");
    ctx.err << fmt::format("blow-up detected ({}): run stopped at t = {:.6g}\n", to_string(result.status),
                           result.last_valid_time);
    return kBlowUp;
  }

  bool pass = true;
  if (dim >= 2) {
    const auto kind = solution_space_for(dim, nl.j);
    const auto norm = solution_space_norm(result.norms, kind, dim, eps);
    json terms = json::object();
    for (const auto& [name, v] : norm.term_sups) terms[name] = v;
    summary["solution_space"] = {{"space", to_string(kind)}, {"value", norm.value},
                                 {"sup_time", std::isfinite(norm.sup_time) ? json(norm.sup_time) : json(nullptr)},
                                 {"terms", terms}};
    ctx.out << fmt::format("{} norm over trusted samples: {:.6g} (sup at t = {:.4g})\n", to_string(kind),
                           norm.value, norm.sup_time);
    if (!std::isfinite(norm.value)) {
      pass = false;
      ctx.err << "gate failed: solution-space norm is not finite\n";
    }
  }

  PlotRequest plot{fmt::format("simulation, n = {}, j = {}, p = {}", dim, nl.j, nl.p),
                   get_string(c, "output.norms"), "norms.png", solver.norm_names(), {}};
  if (twin) {
    NonlinearitySpec linear;
    linear.j = nl.j;
    linear.p = nl.p;
    linear.a.assign(static_cast<std::size_t>(dim), 0.0);
    PseudospectralSolver twin_solver(grid, nu, linear, st);
    twin_solver.set_epsilon(eps);
    const auto lin = twin_solver.run(twin_solver.initial_state(u0, u1), trusted);
    write_stream(ctx.file("output.twin_norms"), [&](std::ostream& o) { write_norm_csv(o, lin.norms); });
    double worst = 0.0;
    std::string worst_where;
    for (const auto& [name, values] : result.norms.columns) {
      const auto& ref = lin.norms.column(name);
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (result.norms.contaminated[i]) continue;
        const double ratio = ref[i] > 0.0 ? values[i] / ref[i] : (values[i] > 0.0 ? INFINITY : 1.0);
        if (ratio > worst) {
          worst = ratio;
          worst_where = fmt::format("{} at t = {:.4g}", name, result.norms.times[i]);
        }
      }
    }
    const bool ok = worst <= twin_factor;
    summary["linear_twin"] = {{"max_ratio", worst}, {"limit", twin_factor}, {"pass", ok}};
    ctx.out << fmt::format("max ratio to linear twin: {:.6g} ({}); limit {}\n", worst, worst_where, twin_factor);
    if (!ok) {
      pass = false;
      ctx.err << fmt::format("gate failed: linear twin: ratio {:.6g} at {} exceeds {}\n", worst, worst_where,
                             twin_factor);
    }
  }
  write_file(ctx.file("output.plot"), gnuplot_script(plot));
  write_file(ctx.file("output.summary"), summary.dump(2) + "\n");
  ctx.out << (pass ? "PASS\n" : "FAIL\n");
  return finish(ctx, pass ? kPass : kGateFailure);
}

// ----------------------------------------------------------------- verify --

int cmd_verify(Context& ctx, const std::vector<std::string>& positional) {
  const json& c = ctx.config;
  std::vector<CheckSelector> selectors;
  for (const auto& s : at(c, "checks")) {
    if (!s.is_string()) throw ConfigError("key 'checks' expects an array of selector strings");
    selectors.push_back(parse_selector(s.get<std::string>()));
  }
  for (const auto& s : positional) selectors.push_back(parse_selector(s));
  if (selectors.empty()) selectors = default_suite();
  for (const auto& s : selectors) prepare_check(s);  // reject bad keys before running anything

  VerifierOptions opt;
  opt.seed = ctx.seed;
  opt.jobs = ctx.jobs;
  opt.growth_limit = get_number(c, "tolerances.growth_limit");
  opt.tau_limit = get_number(c, "tolerances.tau_limit");
  opt.late_slope_limit = get_number(c, "tolerances.late_slope_limit");

  fs::create_directories(ctx.out_dir);
  write_manifest(ctx);
  const auto reports = run_checks(selectors, opt);
  write_stream(ctx.file("output.manifest"), [&](std::ostream& o) { write_check_csv(o, reports); });
  ctx.out << check_table(reports);
  const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  ctx.out << fmt::format("{}/{} checks passed\n", passed, reports.size());
  for (const auto& r : reports) {
    if (!r.pass) ctx.err << fmt::format("gate failed: {} {}: {}\n", r.id, r.param_json(), r.detail);
  }
  return finish(ctx, passed == static_cast<long>(reports.size()) ? kPass : kGateFailure);
}

// -------------------------------------------------------------- exponents --

int cmd_exponents(std::ostream& out, std::optional<int> n, std::optional<int> j, bool mixed) {
  std::vector<int> dims, js;
  if (n) dims = {*n};
  else dims = {1, 2, 3, 4, 5};
  if (j) js = {*j};
  else js = {0, 1};
  for (int jj : js) {
    for (int dim : dims) {
      const auto a = admissible_exponent(dim, jj, mixed);
      out << fmt::format("n={} j={}{}: {}\n", dim, jj, mixed ? " mixed" : "",
                         a.supported ? a.family + ": " + a.describe() : a.message);
    }
  }
  return kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Small-data decay experiments for the strongly damped wave equation with convection", "sdwave"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path, out_flag;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool strict = false;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_flag, "output directory (default: $SDWAVE_OUT_DIR or ./sdwave-out)");
  app.add_option("--seed", seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--strict", strict, "treat warnings as failures");
  app.add_option("--set", sets, "override a configuration value, key.path=value (repeatable)");

  auto* linear = app.add_subcommand("linear-decay", "radial linear decay run with rate gates");
  auto* profile = app.add_subcommand("profile-check", "asymptotic profile residual gate");
  auto* simulate = app.add_subcommand("simulate", "pseudospectral nonlinear run with linear twin");
  auto* verify = app.add_subcommand("verify", "inequality verification suite");
  std::vector<std::string> selectors;
  verify->add_option("selectors", selectors, "check selectors id[:key=value,...]; default suite if none");
  auto* exponents = app.add_subcommand("exponents", "admissible exponent thresholds");
  std::optional<int> exp_n, exp_j;
  bool exp_mixed = false;
  exponents->add_option("--n", exp_n, "dimension");
  exponents->add_option("--j", exp_j, "0 for |u|^p, 1 for |u_t|^p");
  exponents->add_flag("--mixed", exp_mixed, "mixed source-plus-convection problem");
  for (auto* sub : {linear, profile, simulate, verify, exponents}) sub->fallthrough();

  std::vector<std::string> argv_storage{"sdwave"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  if (exponents->parsed()) {
    if (!config_path.empty() || !sets.empty()) {
      err << "error: exponents takes no configuration\n";
      return kConfigError;
    }
    return cmd_exponents(out, exp_n, exp_j, exp_mixed);
  }

  const CLI::App* chosen = app.get_subcommands().front();
  Context ctx{chosen->get_name(), json(), resolve_out_dir(out_flag), seed, jobs, strict, out, err, {}};
  try {
    ctx.config = default_config(ctx.command);
    if (!config_path.empty()) merge_checked(ctx.config, load_config_file(config_path));
    for (const auto& s : sets) apply_override(ctx.config, s);
    if (linear->parsed()) return cmd_linear_decay(ctx);
    if (profile->parsed()) return cmd_profile_check(ctx);
    if (simulate->parsed()) return cmd_simulate(ctx);
    return cmd_verify(ctx, selectors);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kGateFailure;
  }
}

}  // namespace sdwave::cli
