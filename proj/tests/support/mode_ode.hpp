#pragma once

// Independent reference for the per-mode equation
//
//   u'' + ν r⁴ u' + r² u = 0
//
// integrated as a first-order system with the 3-stage Radau IIA method
// (order 5, L-stable) in extended precision. Because the system is linear
// with constant coefficients, N equal steps equal the N-th power of one step
// matrix, so 2^k steps cost k squarings. The step count is doubled until the
// Richardson-extrapolated result stops moving.

#include <array>
#include <cmath>
#include <stdexcept>

namespace sdwave::oracle {

using Mat2 = std::array<std::array<long double, 2>, 2>;

inline Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// One Radau IIA step matrix for y' = A y: solves (I - h 𝒜⊗A) Y = 1⊗y for
// y = e₁, e₂ and returns the last stage.
inline Mat2 radau_step_matrix(const Mat2& A, long double h) {
  const long double s6 = std::sqrt(6.0L);
  const long double ra[3][3] = {
      {(88.0L - 7.0L * s6) / 360.0L, (296.0L - 169.0L * s6) / 1800.0L, (-2.0L + 3.0L * s6) / 225.0L},
      {(296.0L + 169.0L * s6) / 1800.0L, (88.0L + 7.0L * s6) / 360.0L, (-2.0L - 3.0L * s6) / 225.0L},
      {(16.0L - s6) / 36.0L, (16.0L + s6) / 36.0L, 1.0L / 9.0L}};
  long double m[6][8] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          m[2 * i + p][2 * j + q] = (i == j && p == q ? 1.0L : 0.0L) - h * ra[i][j] * A[p][q];
  for (int i = 0; i < 3; ++i) {
    m[2 * i][6] = 1.0L;      // y = e₁
    m[2 * i + 1][7] = 1.0L;  // y = e₂
  }
  for (int col = 0; col < 6; ++col) {
    int piv = col;
    for (int row = col + 1; row < 6; ++row)
      if (std::fabs(m[row][col]) > std::fabs(m[piv][col])) piv = row;
    for (int k = 0; k < 8; ++k) std::swap(m[col][k], m[piv][k]);
    for (int row = 0; row < 6; ++row) {
      if (row == col) continue;
      const long double f = m[row][col] / m[col][col];
      for (int k = col; k < 8; ++k) m[row][k] -= f * m[col][k];
    }
  }
  Mat2 out{};
  for (int p = 0; p < 2; ++p)
    for (int e = 0; e < 2; ++e) out[p][e] = m[4 + p][6 + e] / m[4 + p][4 + p];
  return out;
}

inline Mat2 radau_flow(const Mat2& A, long double t, int k) {
  Mat2 M = radau_step_matrix(A, t / std::ldexp(1.0L, k));
  for (int i = 0; i < k; ++i) M = mat_mul(M, M);
  return M;
}

/// Fundamental matrix [[K₀, K₁], [∂K₀, ∂K₁]] at time t. Column j is compared
/// in the energy norm sqrt(v² + r² u²).
inline Mat2 mode_flow_reference(double nu, double r, double t, long double rel_tol = 1e-13L) {
  const long double r2 = static_cast<long double>(r) * r;
  const Mat2 A{{{0.0L, 1.0L}, {-r2, -static_cast<long double>(nu) * r2 * r2}}};
  if (t == 0.0) return Mat2{{{1.0L, 0.0L}, {0.0L, 1.0L}}};
  auto energy = [&](const Mat2& M, int col) {
    return std::sqrt(M[1][col] * M[1][col] + r2 * M[0][col] * M[0][col]);
  };
  Mat2 coarse = radau_flow(A, t, 2);
  for (int k = 3; k <= 40; ++k) {
    const Mat2 fine = radau_flow(A, t, k);
    Mat2 extrap{};
    bool converged = true;
    for (int col = 0; col < 2; ++col) {
      for (int row = 0; row < 2; ++row)
        extrap[row][col] = fine[row][col] + (fine[row][col] - coarse[row][col]) / 31.0L;
      Mat2 diff{};
      for (int row = 0; row < 2; ++row) diff[row][col] = extrap[row][col] - coarse[row][col];
      const long double scale = std::max(energy(extrap, col), std::fabs(extrap[0][col]));
      const long double err = std::max(energy(diff, col), std::fabs(diff[0][col]));
      if (!(err <= rel_tol * scale)) converged = false;
    }
    if (converged) return extrap;
    coarse = fine;
  }
  throw std::runtime_error("mode ODE reference did not converge");
}

}  // namespace sdwave::oracle
