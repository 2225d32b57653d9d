#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include "sdwave/analysis.hpp"
#include "sdwave/radial.hpp"

namespace {

using namespace sdwave;

struct Series {
  std::vector<double> t;
  std::vector<double> v;
  std::vector<bool> bad;
};

Series synthetic(double (*f)(double, double), double param, double t0 = 10.0, double t1 = 1e4) {
  Series s;
  s.t = geometric_ladder(t0, t1, 20);
  for (double t : s.t) s.v.push_back(f(t, param));
  s.bad.assign(s.t.size(), false);
  return s;
}

double power_law(double t, double k) { return 3.0 * std::pow(1.0 + t, k); }
double sqrt_log(double t, double a) { return a * std::sqrt(std::log(t + std::numbers::e)); }
double log_power(double t, double k) { return std::pow(std::log(t + std::numbers::e), k); }

TEST(FitDecay, ExactOnPowerLaw) {
  const auto s = synthetic(power_law, -0.375);
  const auto r = fit_decay(s.t, s.v, s.bad, FitModel::power, {100.0, 1e4});
  EXPECT_NEAR(r.slope, -0.375, 1e-6);
  EXPECT_NEAR(std::exp(r.intercept), 3.0, 1e-9);
  EXPECT_LT(r.residual_rms, 1e-12);
  EXPECT_EQ(r.samples, 41u);
}

TEST(FitDecay, ExactOnItsOwnModelForRandomParameters) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> k(-2.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double kk = k(rng);
    const auto p = synthetic(power_law, kk);
    EXPECT_NEAR(fit_decay(p.t, p.v, p.bad, FitModel::power, {10.0, 1e4}).slope, kk, 1e-6);
    const auto l = synthetic(log_power, kk);
    EXPECT_NEAR(fit_decay(l.t, l.v, l.bad, FitModel::log, {10.0, 1e4}).slope, kk, 1e-6);
  }
}

TEST(FitDecay, SqrtLogBandIsFlatOnItsModel) {
  const auto s = synthetic(sqrt_log, 0.7);
  const auto r = fit_decay(s.t, s.v, s.bad, FitModel::sqrt_log, {10.0, 1e4});
  EXPECT_LE(r.band, 1.0 + 1e-6);
  EXPECT_DOUBLE_EQ(r.slope, 0.5);
  EXPECT_LT(r.residual_rms, 1e-12);
}

TEST(FitDecay, RejectsShortDirtyOrNonPositiveWindows) {
  auto s = synthetic(power_law, -1.0);
  EXPECT_THROW(fit_decay(s.t, s.v, s.bad, FitModel::power, {5000.0, 1e4}), InvalidArgument);
  EXPECT_THROW(fit_decay(s.t, s.v, s.bad, FitModel::power, {1e4, 100.0}), InvalidArgument);
  s.bad.back() = true;
  try {
    fit_decay(s.t, s.v, s.bad, FitModel::power, {100.0, 1e4});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("contaminated"), std::string::npos);
  }
  s.bad.back() = false;
  s.v[s.v.size() - 3] = 0.0;
  EXPECT_THROW(fit_decay(s.t, s.v, s.bad, FitModel::power, {100.0, 1e4}), InvalidArgument);
}

TEST(FitDecay, DefaultWindowIsLastTrustedDecade) {
  const std::vector<double> t{0, 1, 10, 100, 200};
  const auto w = default_window(t, {false, false, false, false, true});
  EXPECT_DOUBLE_EQ(w.t_a, 10.0);
  EXPECT_DOUBLE_EQ(w.t_b, 100.0);
  EXPECT_THROW(default_window({0.0}, {false}), InvalidArgument);
}

TEST(FitDecay, LinearVelocityDecayOfGaussianVelocityData) {
  LinearRunConfig cfg;
  cfg.dim = 3;
  cfg.u1 = RadialProfile::gaussian(1.0, 1.0);
  cfg.t_min = 100.0;
  cfg.t_max = 1e4;
  cfg.points_per_decade = 10;
  cfg.profile = false;
  const auto report = linear_decay_run(cfg);
  const auto fit = fit_decay(report.norms, "ut_L2", FitModel::power);
  EXPECT_NEAR(fit.slope, -0.375, 0.05);
}

TEST(KendallTau, ExtremesAndTies) {
  EXPECT_DOUBLE_EQ(kendall_tau({1, 2, 3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau({4, 3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(kendall_tau({1, 1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(kendall_tau({1}), 0.0);
}

TEST(RateTable, NonlinearExamples) {
  const double eps = 0.1;
  auto r = theoretical_rate(RateSource::power, 3, Field::u, 0.0, eps);
  EXPECT_EQ(r.kind, RateKind::power);
  EXPECT_DOUBLE_EQ(r.exponent(0.0, eps), -0.125);
  EXPECT_EQ(theoretical_rate(RateSource::power, 2, Field::u, 0.0, eps).kind, RateKind::sqrt_log);
  r = theoretical_rate(RateSource::derivative, 4, Field::ut, 2.0 + eps, eps);
  EXPECT_DOUBLE_EQ(r.exponent(2.0 + eps, eps), -(4.0 + eps) / 4.0);
  r = theoretical_rate(RateSource::power, 5, Field::u, 2.5 + eps, eps);
  EXPECT_DOUBLE_EQ(r.exponent(2.5 + eps, eps), -0.75 + eps / 2.0);
  EXPECT_FALSE(theoretical_rate(RateSource::power, 5, Field::ut, 2.5 + eps, eps).supported());
  EXPECT_FALSE(theoretical_rate(RateSource::derivative, 5, Field::u, 0.0, eps).supported());
  EXPECT_FALSE(theoretical_rate(RateSource::power, 3, Field::u, 0.7, eps).supported());
}

TEST(RateTable, LinearExamplesAndRanges) {
  using D = DataClass::Datum;
  const DataClass u0{D::u0}, u1{D::u1};
  EXPECT_DOUBLE_EQ(theoretical_rate(RateSource::linear, 3, Field::u, 0, 0, u0).exponent(0, 0), -0.375);
  EXPECT_DOUBLE_EQ(theoretical_rate(RateSource::linear, 3, Field::u, 0, 0, u1).exponent(0, 0), -0.125);
  EXPECT_DOUBLE_EQ(theoretical_rate(RateSource::linear, 5, Field::ut, 0, 0, u1).exponent(0, 0), -0.625);
  EXPECT_DOUBLE_EQ(theoretical_rate(RateSource::linear, 1, Field::u, 0, 0, u1).exponent(0, 0), 0.5);
  EXPECT_EQ(theoretical_rate(RateSource::linear, 2, Field::u, 0, 0, u1).kind, RateKind::sqrt_log);
  EXPECT_DOUBLE_EQ(theoretical_rate(RateSource::linear, 2, Field::u, 2.0, 0, u1).exponent(2.0, 0),
                   -0.25 - 0.25);
  EXPECT_DOUBLE_EQ(theoretical_rate(RateSource::linear, 3, Field::ut, 1.0, 0, u0).exponent(1.0, 0),
                   -0.375 - 0.5);
  // Ḣ^s of u is estimated only for s >= 1, and only up to min{ℓ₁+6, ℓ₂+4}.
  EXPECT_FALSE(theoretical_rate(RateSource::linear, 3, Field::u, 0.5, 0, u0).supported());
  EXPECT_FALSE(theoretical_rate(RateSource::linear, 3, Field::u, 5.0, 0, {D::u0, 10.0, 0.5}).supported());
  EXPECT_FALSE(theoretical_rate(RateSource::linear, 3, Field::ut, 3.0, 0, {D::u0, 0.5, 10.0}).supported());
  EXPECT_FALSE(theoretical_rate(RateSource::linear, 6, Field::u, 0, 0, u0).supported());
  // Rough data: the Sobolev term (1+t)^{-ℓ₁/2} is slower than (1+t)^{-n/8}.
  EXPECT_DOUBLE_EQ(
      theoretical_rate(RateSource::linear, 3, Field::u, 0, 0, {D::u0, 0.5, 0.0}).exponent(0, 0), -0.25);
}

TEST(RateTable, GoldenRowsAppearExactlyOnce) {
  const auto rows = rate_table();
  std::set<std::tuple<int, int, int, std::string, int>> keys;
  for (const auto& r : rows) {
    EXPECT_TRUE(keys.emplace(static_cast<int>(r.source), r.dim, static_cast<int>(r.field), r.order,
                             static_cast<int>(r.datum))
                    .second);
    EXPECT_TRUE(r.entry.supported());
  }
  EXPECT_EQ(rows.size(), 30u + 12u + 12u);

  const double eps = 0.05;
  struct Golden {
    RateSource src;
    int n;
    Field field;
    const char* order;
    RateKind kind;
    double exponent;
  };
  const Golden golden[] = {
      {RateSource::power, 2, Field::u, "L2", RateKind::sqrt_log, 0.0},
      {RateSource::power, 3, Field::u, "L2", RateKind::power, -3.0 / 8 + 0.25},
      {RateSource::power, 4, Field::u, "L2", RateKind::power, -4.0 / 8 + 0.25},
      {RateSource::power, 5, Field::u, "L2", RateKind::power, -5.0 / 8 + 0.25},
      {RateSource::power, 2, Field::u, "top", RateKind::power, -(1 + eps) / 4},
      {RateSource::power, 3, Field::u, "top", RateKind::power, -(2 + eps) / 4},
      {RateSource::power, 4, Field::u, "top", RateKind::power, -(3 + eps) / 4},
      {RateSource::power, 5, Field::u, "top", RateKind::power, -0.75 + eps / 2},
      {RateSource::power, 2, Field::ut, "L2", RateKind::power, -2.0 / 8},
      {RateSource::power, 3, Field::ut, "L2", RateKind::power, -3.0 / 8},
      {RateSource::power, 4, Field::ut, "L2", RateKind::power, -4.0 / 8},
      {RateSource::power, 5, Field::ut, "L2", RateKind::power, -5.0 / 8},
      {RateSource::derivative, 2, Field::u, "L2", RateKind::sqrt_log, 0.0},
      {RateSource::derivative, 3, Field::u, "L2", RateKind::power, -3.0 / 8 + 0.25},
      {RateSource::derivative, 4, Field::u, "L2", RateKind::power, -4.0 / 8 + 0.25},
      {RateSource::derivative, 2, Field::u, "top", RateKind::power, -(1 + eps) / 4},
      {RateSource::derivative, 3, Field::u, "top", RateKind::power, -(2 + eps) / 4},
      {RateSource::derivative, 4, Field::u, "top", RateKind::power, -(3 + eps) / 4},
      {RateSource::derivative, 2, Field::ut, "L2", RateKind::power, -2.0 / 8},
      {RateSource::derivative, 3, Field::ut, "L2", RateKind::power, -3.0 / 8},
      {RateSource::derivative, 4, Field::ut, "L2", RateKind::power, -4.0 / 8},
      {RateSource::derivative, 2, Field::ut, "top", RateKind::power, -(2 + eps) / 4},
      {RateSource::derivative, 3, Field::ut, "top", RateKind::power, -(3 + eps) / 4},
      {RateSource::derivative, 4, Field::ut, "top", RateKind::power, -(4 + eps) / 4},
  };
  for (const auto& g : golden) {
    int matches = 0;
    for (const auto& r : rows) {
      if (r.source != g.src || r.dim != g.n || r.field != g.field || r.order != g.order) continue;
      ++matches;
      EXPECT_EQ(r.entry.kind, g.kind) << g.n << " " << g.order;
      if (g.kind == RateKind::power) {
        const double s = r.order == std::string("top") ? g.n / 2.0 + eps : 0.0;
        EXPECT_NEAR(r.entry.exponent(s, eps), g.exponent, 1e-15) << g.n << " " << g.order;
      }
    }
    EXPECT_EQ(matches, 1);
  }
}

TEST(AdmissibleExponent, Examples) {
  auto a = admissible_exponent(2, 0, false);
  ASSERT_TRUE(a.supported);
  EXPECT_EQ(a.describe(), "p > 5 (strict)");
  EXPECT_EQ(admissible_exponent(3, 0, false).describe(), "p ≥ 3");
  EXPECT_EQ(admissible_exponent(2, 1, false).describe(), "p ≥ 2.5");
  EXPECT_EQ(admissible_exponent(3, 1, false).describe(), "p ≥ 2");
  EXPECT_EQ(admissible_exponent(4, 1, true).describe(), "p > 2 (strict), q ≥ 2");
  a = admissible_exponent(5, 1, false);
  EXPECT_FALSE(a.supported);
  EXPECT_NE(a.message.find("n = 2..4"), std::string::npos);
  EXPECT_FALSE(admissible_exponent(1, 0, false).supported);
  EXPECT_FALSE(admissible_exponent(6, 0, true).supported);
  EXPECT_FALSE(admissible_exponent(3, 2, false).supported);
}

TEST(AdmissibleExponent, GoldenTable) {
  struct Row {
    int n, j;
    bool mixed;
    double p;
    bool p_strict;
    double q;  // NaN when absent
    bool q_strict;
  };
  const double none = std::nan("");
  const Row golden[] = {
      {2, 0, false, 5.0, true, none, false},       {3, 0, false, 3.0, false, none, false},
      {4, 0, false, 7.0 / 3, false, none, false},  {5, 0, false, 2.0, false, none, false},
      {2, 1, false, 2.5, false, none, false},      {3, 1, false, 2.0, false, none, false},
      {4, 1, false, 2.0, false, none, false},      {2, 0, true, 6.0, true, 5.0, true},
      {3, 0, true, 3.5, true, 3.0, false},         {4, 0, true, 8.0 / 3, true, 7.0 / 3, false},
      {5, 0, true, 2.25, true, 2.0, false},        {2, 1, true, 3.0, true, 2.5, false},
      {3, 1, true, 7.0 / 3, true, 2.0, false},     {4, 1, true, 2.0, true, 2.0, false},
  };
  for (const auto& g : golden) {
    const auto a = admissible_exponent(g.n, g.j, g.mixed);
    ASSERT_TRUE(a.supported) << g.n << g.j << g.mixed;
    ASSERT_EQ(a.thresholds.size(), std::isnan(g.q) ? 1u : 2u);
    EXPECT_EQ(a.thresholds[0].symbol, 'p');
    EXPECT_EQ(a.thresholds[0].value, g.p);
    EXPECT_EQ(a.thresholds[0].strict, g.p_strict);
    if (!std::isnan(g.q)) {
      EXPECT_EQ(a.thresholds[1].symbol, 'q');
      EXPECT_EQ(a.thresholds[1].value, g.q);
      EXPECT_EQ(a.thresholds[1].strict, g.q_strict);
    }
  }
  for (int n = 0; n <= 7; ++n) {
    EXPECT_EQ(admissible_exponent(n, 0, false).supported, n >= 2 && n <= 5);
    EXPECT_EQ(admissible_exponent(n, 0, true).supported, n >= 2 && n <= 5);
    EXPECT_EQ(admissible_exponent(n, 1, false).supported, n >= 2 && n <= 4);
    EXPECT_EQ(admissible_exponent(n, 1, true).supported, n >= 2 && n <= 4);
  }
}

TEST(AdmissibleExponent, ThresholdsAreMonotoneInDimension) {
  for (int j = 0; j <= 1; ++j) {
    const int n_max = j == 0 ? 5 : 4;
    for (int n = 3; n < n_max; ++n) {
      EXPECT_GE(admissible_exponent(n, j, false).thresholds[0].value,
                admissible_exponent(n + 1, j, false).thresholds[0].value);
    }
  }
  const auto a = admissible_exponent(2, 0, false);
  EXPECT_FALSE(a.admits(5.0));
  EXPECT_TRUE(a.admits(6.0));
  EXPECT_TRUE(admissible_exponent(3, 0, false).admits(3.0));
  EXPECT_FALSE(admissible_exponent(2, 0, true).admits(7.0));
  EXPECT_TRUE(admissible_exponent(2, 0, true).admits(7.0, 5.5));
}

NormSeries constant_trajectory(int dim, double eps, double value, bool with_ut_top) {
  NormSeries s;
  const double top = dim / 2.0 + eps;
  std::vector<std::string> names{norm_quantity(Field::u, 0), norm_quantity(Field::u, top),
                                 norm_quantity(Field::ut, 0)};
  if (with_ut_top) names.push_back(norm_quantity(Field::ut, top));
  for (const auto& n : names) s.add_column(n);
  for (int i = 0; i <= 20; ++i) {
    s.push_time(i * 0.5);
    for (auto& [_, col] : s.columns) col.push_back(value);
  }
  return s;
}

TEST(SolutionSpaceNorm, ZeroAndConstantTrajectories) {
  auto zero = constant_trajectory(3, 0.1, 0.0, false);
  EXPECT_EQ(solution_space_norm(zero, SpaceKind::X1, 3, 0.1).value, 0.0);

  const auto c = constant_trajectory(3, 0.1, 2.0, false);
  const auto x = solution_space_norm(c, SpaceKind::X1, 3, 0.1);
  EXPECT_DOUBLE_EQ(x.sup_time, 10.0);
  const double w = std::pow(11.0, 3.0 / 8 - 0.25) + std::pow(11.0, 2.1 / 4) + std::pow(11.0, 3.0 / 8);
  EXPECT_NEAR(x.value, 2.0 * w, 1e-12);
  for (const auto& [name, sup] : x.term_sups) EXPECT_LE(sup, x.value) << name;
}

TEST(SolutionSpaceNorm, HomogeneousAndRespectsContamination) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (SpaceKind kind : {SpaceKind::X1, SpaceKind::Y}) {
    auto s = constant_trajectory(2, 0.1, 1.0, true);
    for (auto& [_, col] : s.columns) {
      for (auto& v : col) v = u(rng);
    }
    auto scaled = s;
    for (auto& [_, col] : scaled.columns) {
      for (auto& v : col) v *= 3.5;
    }
    const auto a = solution_space_norm(s, kind, 2, 0.1);
    const auto b = solution_space_norm(scaled, kind, 2, 0.1);
    EXPECT_NEAR(b.value, 3.5 * a.value, 1e-12 * b.value);
    EXPECT_EQ(a.sup_time, b.sup_time);
  }
  auto s = constant_trajectory(4, 0.1, 1.0, false);
  s.contaminated.back() = true;
  EXPECT_DOUBLE_EQ(solution_space_norm(s, SpaceKind::X1, 4, 0.1).sup_time, 9.5);
}

TEST(SolutionSpaceNorm, WeightsAndErrors) {
  const auto c = constant_trajectory(5, 0.2, 1.0, false);
  const auto x2 = solution_space_norm(c, SpaceKind::X2, 5, 0.2);
  EXPECT_NEAR(x2.value, std::pow(11.0, 0.375) + std::pow(11.0, 0.65) + std::pow(11.0, 0.625), 1e-12);
  EXPECT_THROW(solution_space_norm(c, SpaceKind::X1, 5, 0.2), InvalidArgument);
  const auto no_top = constant_trajectory(3, 0.1, 1.0, false);
  try {
    solution_space_norm(no_top, SpaceKind::Y, 3, 0.1);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("ut_H1.6"), std::string::npos);
  }
  EXPECT_DOUBLE_EQ(ell_weight(2, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ell_weight(4, 3.0), std::pow(4.0, 0.25));
  EXPECT_EQ(solution_space_for(5, 0), SpaceKind::X2);
  EXPECT_EQ(solution_space_for(3, 1), SpaceKind::Y);
}

TEST(SolutionSpaceNorm, FiveDimensionalConstantsCloseTheBootstrap) {
  for (double eps : {1e-3, 0.01, 0.1, 0.3}) {
    EXPECT_NEAR(theta0_n5(eps), 2.5 * theta1_n5(eps), 1e-15);
    EXPECT_NEAR(theta0_n5(eps) + eps * theta1_n5(eps), 1.0, 1e-15);
    const double e2 = epsilon2_n5(eps);
    const double d = 5 + 2 * eps;
    EXPECT_LE((-15 + 7 * eps) / (4 * d), -0.75 + e2 + 1e-15);
    EXPECT_LE((-21 + 2 * eps) / (8 * d), -21.0 / 40 + e2 + 1e-15);
    // ε₂ is the smallest value that works: the first inequality is tight.
    EXPECT_NEAR((-15 + 7 * eps) / (4 * d), -0.75 + e2, 1e-15);
  }
}

TEST(CompareRate, GatesAndVacuousCases) {
  NormSeries s;
  auto& col = s.add_column("u_L2");
  for (double t : geometric_ladder(1.0, 1e3, 10)) {
    s.push_time(t);
    col.push_back(std::pow(1 + t, -0.5));
  }
  const auto theory = theoretical_rate(RateSource::linear, 4, Field::u, 0, 0, {});
  auto c = compare_rate("u_L2", theory, s, 0.0, 0.0, 0.05);
  EXPECT_TRUE(c.gated);
  EXPECT_TRUE(c.pass);
  c = compare_rate("u_L2", theoretical_rate(RateSource::linear, 3, Field::u, 0, 0, {}), s, 0, 0, 0.05);
  EXPECT_FALSE(c.pass);
  for (auto& v : col) v = 0.0;
  c = compare_rate("u_L2", theory, s, 0.0, 0.0, 0.05);
  EXPECT_FALSE(c.gated);
  EXPECT_TRUE(c.pass);
}

}  // namespace

namespace {

sdwave::ProfileResidualSeries residual_series(double exponent) {
  sdwave::ProfileResidualSeries s;
  s.times = sdwave::geometric_ladder(1.0, 1e4, 20);
  for (double t : s.times) {
    s.residual.push_back(std::pow(1.0 + t, exponent));
    s.leading.push_back(1.0);
  }
  return s;
}

TEST(ProfileGate, FastResidualPasses) {
  const auto g = sdwave::profile_gate(residual_series(-0.5), 2);
  EXPECT_TRUE(g.gated);
  EXPECT_NEAR(g.fit.slope, -0.5, 1e-9);
  EXPECT_DOUBLE_EQ(g.slope_limit, -0.15);
  EXPECT_TRUE(g.pass) << g.detail;
}

TEST(ProfileGate, ResidualAtLeadingScaleFails) {
  // n = 3: leading scale (1+t)^{-1/8}; a residual of the same order is not
  // little-o and misses both gates.
  const auto g = sdwave::profile_gate(residual_series(-0.125), 3);
  EXPECT_FALSE(g.slope_ok);
  EXPECT_FALSE(g.decreasing);
  EXPECT_FALSE(g.pass);
}

TEST(ProfileGate, ZeroResidualIsVacuous) {
  auto s = residual_series(-1.0);
  std::fill(s.residual.begin(), s.residual.end(), 0.0);
  const auto g = sdwave::profile_gate(s, 2);
  EXPECT_FALSE(g.gated);
  EXPECT_TRUE(g.pass);
}

}  // namespace
