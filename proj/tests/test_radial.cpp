#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "sdwave/radial.hpp"

namespace {

using namespace sdwave;

std::shared_ptr<const RadialQuadrature> make_quad(int dim, double r_max = 12.0,
                                                  double t_max = 0.0) {
  QuadratureOptions opts;
  opts.r_max = r_max;
  opts.oscillation_t_max = t_max;
  return std::make_shared<const RadialQuadrature>(RadialQuadrature::build(dim, opts));
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x, w;
  gauss_legendre(16, x, w);
  for (int deg = 0; deg <= 31; ++deg) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * std::pow(x[i], deg);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(sum, exact, 1e-14) << deg;
  }
}

TEST(RadialQuadrature, ReproducesGaussianIntegralInEveryDimension) {
  for (int n = 1; n <= 5; ++n) {
    const auto quad = make_quad(n);
    std::vector<double> f(quad->size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::exp(-quad->nodes()[k] * quad->nodes()[k]);
    const double exact = std::pow(std::numbers::pi, 0.5 * n);
    EXPECT_NEAR(quad->integrate(f), exact, 1e-8 * exact) << "n=" << n;
  }
}

TEST(RadialQuadrature, NodesIncreaseAndWeightsArePositive) {
  const auto quad = make_quad(3, 12.0, 1e4);
  for (std::size_t k = 1; k < quad->size(); ++k) {
    EXPECT_LT(quad->nodes()[k - 1], quad->nodes()[k]);
    EXPECT_GT(quad->weights()[k], 0.0);
  }
  EXPECT_EQ(quad->refined().size(), 2 * quad->size());
}

TEST(RadialQuadrature, RejectsBadOptions) {
  QuadratureOptions opts;
  opts.r_max = opts.r_min;
  EXPECT_THROW(RadialQuadrature::build(3, opts), InvalidArgument);
  EXPECT_THROW(RadialQuadrature::build(6, QuadratureOptions{}), InvalidArgument);
}

TEST(UnitSphere, KnownAreas) {
  EXPECT_DOUBLE_EQ(unit_sphere_area(1), 2.0);
  EXPECT_DOUBLE_EQ(unit_sphere_area(2), 2.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(unit_sphere_area(3), 4.0 * std::numbers::pi);
}

TEST(RadialProfile, MassesAndTransforms) {
  const auto g = RadialProfile::gaussian(2.0, 0.7);
  for (int n = 1; n <= 5; ++n) {
    EXPECT_NEAR(g.mass(n), 2.0 * std::pow(2 * std::numbers::pi * 0.49, 0.5 * n), 1e-12);
    EXPECT_NEAR(RadialProfile::unit_mass_gaussian(n, 1.3).mass(n), 1.0, 1e-14);
    EXPECT_EQ(RadialProfile::laplacian_gaussian(1.0, 1.0).mass(n), 0.0);
  }
  EXPECT_EQ(RadialProfile::zero().fourier(3, 1.0), 0.0);
  EXPECT_THROW(RadialProfile::gaussian(1.0, -1.0), InvalidArgument);
  EXPECT_EQ(profile_kind_from_string("laplacian-gaussian"), ProfileKind::laplacian_gaussian);
  EXPECT_THROW(profile_kind_from_string("box"), InvalidArgument);
}

TEST(Moments, ReadOffAtZeroFrequency) {
  const auto m = moments(RadialProfile::laplacian_gaussian(1.0, 1.0),
                         RadialProfile::unit_mass_gaussian(2, 1.0), 2);
  EXPECT_EQ(m.p0, 0.0);
  EXPECT_NEAR(m.p1, 1.0, 1e-15);
}

TEST(RadialSpectrum, InitialSpectrumMatchesClosedForm) {
  const auto quad = make_quad(3);
  const auto u0 = RadialProfile::gaussian(1.0, 1.0);
  const auto spec = initial_spectrum(quad, u0, RadialProfile::zero());
  for (std::size_t k = 0; k < quad->size(); k += 37) {
    EXPECT_NEAR(spec.u_hat[k], u0.fourier(3, quad->nodes()[k]), 1e-14 * spec.u_hat[0]);
    EXPECT_EQ(spec.ut_hat[k], 0.0);
  }
}

TEST(EvolveLinear, TimeZeroIsIdentity) {
  const auto quad = make_quad(2);
  const auto spec = initial_spectrum(quad, RadialProfile::gaussian(1.0, 1.0),
                                     RadialProfile::gaussian(0.5, 2.0));
  const auto same = evolve_linear(1.0, spec, 0.0);
  EXPECT_EQ(same.u_hat, spec.u_hat);
  EXPECT_EQ(same.ut_hat, spec.ut_hat);
  EXPECT_THROW(evolve_linear(1.0, spec, -1.0), InvalidArgument);
}

TEST(EvolveModes, ZeroModeAndSingleNodeExamples) {
  const double radii[] = {0.0, 2.0};
  const double u0[] = {0.0, std::exp(-4.0)};
  const double u1[] = {3.0, 0.0};
  double u[2], ut[2];
  evolve_modes(1.0, radii, u0, u1, 1.0, u, ut);
  EXPECT_DOUBLE_EQ(u[0], 3.0);
  EXPECT_DOUBLE_EQ(ut[0], 3.0);
  EXPECT_DOUBLE_EQ(u[1], propagator(1.0, 1.0, 2.0).k0 * std::exp(-4.0));
}

TEST(EvolveLinear, IsASemigroup) {
  const auto quad = make_quad(3);
  const auto spec = initial_spectrum(quad, RadialProfile::gaussian(1.0, 1.0),
                                     RadialProfile::gaussian(-0.4, 0.8));
  const auto once = evolve_linear(1.0, spec, 3.7);
  const auto twice = evolve_linear(1.0, evolve_linear(1.0, spec, 1.2), 2.5);
  for (std::size_t k = 0; k < quad->size(); ++k) {
    const double scale = std::abs(spec.u_hat[k]) + std::abs(spec.ut_hat[k]) + 1e-300;
    EXPECT_NEAR(once.u_hat[k], twice.u_hat[k], 1e-12 * scale);
    EXPECT_NEAR(once.ut_hat[k], twice.ut_hat[k], 1e-12 * (1.0 + quad->nodes()[k]) * scale);
  }
}

TEST(EvolveLinear, ModeEnergyNeverIncreases) {
  const auto quad = make_quad(2);
  auto spec = initial_spectrum(quad, RadialProfile::gaussian(1.0, 0.5),
                               RadialProfile::gaussian(1.0, 0.5));
  std::vector<double> energy(quad->size());
  auto update = [&](bool check) {
    for (std::size_t k = 0; k < quad->size(); ++k) {
      const double r = quad->nodes()[k];
      const double e = spec.ut_hat[k] * spec.ut_hat[k] + r * r * spec.u_hat[k] * spec.u_hat[k];
      if (check) EXPECT_LE(e, energy[k] * (1.0 + 1e-13) + 1e-300);
      energy[k] = e;
    }
  };
  update(false);
  for (double dt : {0.01, 0.3, 2.0, 17.0, 100.0}) {
    spec = evolve_linear(1.0, spec, dt);
    update(true);
  }
}

TEST(L2Norm, PlancherelMatchesClosedFormGaussianNorm) {
  for (int n = 1; n <= 5; ++n) {
    const double sigma = 0.8;
    const auto quad = make_quad(n);
    const auto spec = initial_spectrum(quad, RadialProfile::gaussian(1.5, sigma),
                                       RadialProfile::zero());
    // ∫ A² e^{-|x|²/σ²} dx = A² (π σ²)^{n/2}
    const double exact = 1.5 * std::pow(std::numbers::pi * sigma * sigma, 0.25 * n);
    const auto norm = l2_norm(spec, Field::u, 0.0);
    EXPECT_NEAR(norm.value, exact, 1e-8 * exact);
    EXPECT_FALSE(norm.tail_warning);
    EXPECT_EQ(l2_norm(spec, Field::ut, 0.0).value, 0.0);
  }
}

TEST(L2Norm, GradientNormOfGaussian) {
  // ‖∇G‖² = A² (πσ²)^{n/2} n/(2σ²) for G = A e^{-|x|²/(2σ²)}.
  const int n = 3;
  const double sigma = 1.1;
  const auto spec = initial_spectrum(make_quad(n), RadialProfile::gaussian(1.0, sigma),
                                     RadialProfile::zero());
  const double exact =
      std::sqrt(std::pow(std::numbers::pi * sigma * sigma, 0.5 * n) * n / (2 * sigma * sigma));
  EXPECT_NEAR(l2_norm(spec, Field::u, 1.0).value, exact, 1e-9 * exact);
  EXPECT_THROW(l2_norm(spec, Field::u, -0.5), InvalidArgument);
}

TEST(L2Norm, TailWarningWhenRangeIsTooShort) {
  const auto spec = initial_spectrum(make_quad(3, 1.0), RadialProfile::gaussian(1.0, 1.0),
                                     RadialProfile::zero());
  EXPECT_TRUE(l2_norm(spec, Field::u, 0.0).tail_warning);
}

TEST(ProfileResidual, ZeroDataGiveZero) {
  auto spec = initial_spectrum(make_quad(2), RadialProfile::zero(), RadialProfile::zero());
  spec = evolve_linear(1.0, spec, 5.0);
  EXPECT_EQ(profile_residual(1.0, spec, Moments{}).value, 0.0);
}

TEST(ProfileResidual, FiniteAsTimeTendsToZero) {
  // Mean-zero data have P₀ = P₁ = 0, so the residual tends to ‖u₀‖. With
  // nonzero mass the profile concentrates as t → 0⁺; on the truncated radial
  // grid the residual stays finite.
  const auto quad = make_quad(2);
  const auto log_data = RadialProfile::laplacian_gaussian(1.0, 1.0);
  const auto spec0 = initial_spectrum(quad, log_data, RadialProfile::zero());
  const auto m = moments(log_data, RadialProfile::zero(), 2);
  const double norm0 = l2_norm(spec0, Field::u, 0.0).value;
  const double res = profile_residual(1.0, evolve_linear(1.0, spec0, 1e-8), m).value;
  EXPECT_NEAR(res, norm0, 1e-6 * norm0);

  const auto g = RadialProfile::gaussian(1.0, 1.0);
  const auto gspec = initial_spectrum(quad, g, RadialProfile::zero());
  for (double t : {1e-2, 1e-4, 1e-6}) {
    EXPECT_TRUE(std::isfinite(
        profile_residual(1.0, evolve_linear(1.0, gspec, t), moments(g, {}, 2)).value));
  }
  EXPECT_THROW(profile_residual(1.0, spec0, m), InvalidArgument);
}

TEST(LinearDecayRun, ZeroDataGiveZeroSeriesAndAWarning) {
  LinearRunConfig cfg;
  cfg.dim = 3;
  cfg.t_max = 100.0;
  cfg.points_per_decade = 5;
  const auto report = linear_decay_run(cfg);
  ASSERT_FALSE(report.warnings.empty());
  for (const auto& [name, values] : report.norms.columns) {
    for (double v : values) EXPECT_EQ(v, 0.0) << name;
  }
  for (double v : report.profile.residual) EXPECT_EQ(v, 0.0);
}

TEST(LinearDecayRun, RejectsUnsupportedDimension) {
  LinearRunConfig cfg;
  cfg.dim = 6;
  try {
    linear_decay_run(cfg);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "dimension out of supported range 1..5");
  }
}

TEST(LinearDecayRun, QuadratureRefinementChangesNormsBelowOnePpm) {
  LinearRunConfig cfg;
  cfg.dim = 3;
  cfg.u0 = RadialProfile::gaussian(1.0, 1.0);
  cfg.u1 = RadialProfile::gaussian(0.5, 1.0);
  cfg.t_min = 1.0;
  cfg.t_max = 1e4;
  cfg.points_per_decade = 4;
  cfg.u_orders = {0.0, 1.0};
  cfg.ut_orders = {0.0};
  const auto coarse = linear_decay_run(cfg);
  cfg.quadrature.refinement = 2;
  const auto fine = linear_decay_run(cfg);
  ASSERT_EQ(coarse.norms.columns.size(), 3u);
  for (std::size_t c = 0; c < coarse.norms.columns.size(); ++c) {
    const auto& a = coarse.norms.columns[c].second;
    const auto& b = fine.norms.columns[c].second;
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-6 * b[i]) << coarse.norms.columns[c].first << " t=" << coarse.norms.times[i];
    }
  }
  for (std::size_t i = 0; i < coarse.profile.residual.size(); ++i) {
    EXPECT_NEAR(coarse.profile.residual[i], fine.profile.residual[i], 1e-6 * fine.profile.residual[i]);
  }
}

TEST(LinearDecayRun, DeterministicAcrossJobCounts) {
  LinearRunConfig cfg;
  cfg.dim = 2;
  cfg.u1 = RadialProfile::unit_mass_gaussian(2, 1.0);
  cfg.t_max = 1e3;
  cfg.points_per_decade = 6;
  const auto a = linear_decay_run(cfg);
  cfg.jobs = 3;
  const auto b = linear_decay_run(cfg);
  EXPECT_EQ(a.norms.columns, b.norms.columns);
  EXPECT_EQ(a.profile.residual, b.profile.residual);
}

}  // namespace
