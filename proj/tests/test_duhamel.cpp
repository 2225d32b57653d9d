#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "sdwave/symbol.hpp"

namespace {

using boost::math::quadrature::gauss_kronrod;
using namespace sdwave;

struct QuadratureWeights {
  double first;
  double second;
};

// Reference: adaptive Gauss-Kronrod of K̂₁ over [0, h], split into pieces so
// oscillatory and sharply decaying integrands are resolved.
QuadratureWeights integrate_k1(double nu, double h, double r) {
  // Geometric cuts near s = 0 resolve the fast transient of stiff modes.
  std::vector<double> cuts{0.0};
  for (double f : {1e-10, 1e-8, 1e-6, 1e-4, 1e-3}) cuts.push_back(f * h);
  for (int p = 1; p <= 16; ++p) cuts.push_back(h * p / 16.0);
  QuadratureWeights out{0.0, 0.0};
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    out.first += gauss_kronrod<double, 61>::integrate(
        [&](double s) { return propagator(nu, s, r).k1; }, cuts[p], cuts[p + 1], 8, 1e-15);
    out.second += gauss_kronrod<double, 61>::integrate(
        [&](double s) { return (h - s) * propagator(nu, s, r).k1; }, cuts[p], cuts[p + 1], 8,
        1e-15);
  }
  return out;
}

TEST(DuhamelWeights, ZeroFrequencyIsPolynomial) {
  const auto w = duhamel_weights(1.0, 0.3, 0.0);
  EXPECT_DOUBLE_EQ(w.first, 0.3 * 0.3 / 2.0);
  EXPECT_DOUBLE_EQ(w.second, 0.3 * 0.3 * 0.3 / 6.0);
}

TEST(DuhamelWeights, ZeroStepIsZero) {
  const auto w = duhamel_weights(1.0, 0.0, 2.0);
  EXPECT_EQ(w.first, 0.0);
  EXPECT_EQ(w.second, 0.0);
}

TEST(DuhamelWeights, MatchQuadratureInEveryRegime) {
  const double rs = std::cbrt(2.0);
  const double radii[] = {1e-3, 0.05, 0.3, 1.0, rs * (1 - 1e-3), rs * (1 - 1e-9), rs,
                          rs * (1 + 1e-9), rs * (1 + 1e-3), 2.0, 5.0, 30.0};
  for (double h : {1e-3, 0.05, 0.4, 3.0}) {
    for (double r : radii) {
      const auto w = duhamel_weights(1.0, h, r);
      const auto ref = integrate_k1(1.0, h, r);
      EXPECT_NEAR(w.first, ref.first, 1e-12 * std::abs(ref.first) + 1e-300)
          << "h=" << h << " r=" << r;
      EXPECT_NEAR(w.second, ref.second, 1e-12 * std::abs(ref.second) + 1e-300)
          << "h=" << h << " r=" << r;
    }
  }
}

TEST(DuhamelWeights, SatisfyTheModeEquationIdentity) {
  // Integrating K̂₁'' + ν r⁴ K̂₁' + r² K̂₁ = 0 over [0, h] gives
  // ∂K̂₁(h) - 1 + ν r⁴ K̂₁(h) + r² ∫K̂₁ = 0.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double nu = 0.1 * std::pow(100.0, u(rng));
    const double r = 1e-2 * std::pow(1e3, u(rng));
    const double h = 1e-3 * std::pow(1e3, u(rng));
    const auto K = propagator(nu, h, r);
    const auto w = duhamel_weights(nu, h, r);
    const double r2 = r * r;
    const double lhs = K.dk1 + nu * r2 * r2 * K.k1 + r2 * w.first;
    const double scale = 1.0 + std::abs(K.dk1) + nu * r2 * r2 * std::abs(K.k1);
    EXPECT_NEAR(lhs, 1.0, 1e-11 * scale) << nu << " " << r << " " << h;
  }
}

TEST(ExpMoment, MatchesQuadrature) {
  for (int j = 0; j <= 12; ++j) {
    for (double x : {0.0, -1e-8, -0.3, -4.0, -49.0, -51.0, -300.0}) {
      double ref = 0.0;
      const double cuts[] = {0.0, 1e-3, 1e-2, 0.1, 1.0};
      for (int p = 0; p < 4; ++p) {
        ref += gauss_kronrod<double, 61>::integrate(
            [&](double v) { return std::pow(v, j) * std::exp(x * v); }, cuts[p], cuts[p + 1], 6,
            1e-15);
      }
      EXPECT_NEAR(exp_moment(j, x), ref, 1e-13 * ref) << "j=" << j << " x=" << x;
    }
  }
  EXPECT_THROW(exp_moment(-1, -1.0), InvalidArgument);
  EXPECT_THROW(exp_moment(1, 1.0), InvalidArgument);
}

}  // namespace
