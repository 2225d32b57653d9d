#pragma once

// Periodic box [-L, L)^n, n = 1..3, with N points per axis and a real-to-
// complex half spectrum (last axis keeps k = 0..N/2).
//
// Spectral coefficients are normalized Fourier-series coefficients,
//   c_k = N^{-n} Σ_j u_j e^{-2πi j·k/N},
// so u_j = Σ_k c_k e^{2πi j·k/N}, ∫_box |u|² = (2L)^n Σ_k |c_k|², and the
// whole-space transform at ξ_k = πk/L is approximately (2L)^n (-1)^{Σk} c_k.

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace sdwave {

using cplx = std::complex<double>;

class PeriodicGrid {
 public:
  PeriodicGrid(int dim, int points, double half_width);

  int dim() const { return dim_; }
  int points() const { return points_; }
  double half_width() const { return half_width_; }
  double spacing() const { return 2.0 * half_width_ / points_; }
  std::size_t physical_size() const { return physical_size_; }
  std::size_t spectral_size() const { return spectral_size_; }
  /// x_j = -L + j·2L/N.
  double coordinate(int j) const { return -half_width_ + j * spacing(); }
  /// (2L)^n, the box volume.
  double volume() const;

  /// Signed integer wavenumbers of spectral index m (unused axes are 0).
  std::array<int, 3> wavenumbers(std::size_t m) const;
  /// |ξ| for each spectral index.
  const std::vector<double>& xi_magnitudes() const { return xi_mag_; }
  /// ξ_axis per spectral index with the Nyquist entry zeroed, for derivatives.
  const std::vector<double>& derivative_wavenumbers(int axis) const;
  /// 1 for self-conjugate modes of the half spectrum, 2 otherwise.
  const std::vector<double>& parseval_weights() const { return parseval_; }
  /// 1 where every |k_i| <= floor(N/3), else 0.
  const std::vector<unsigned char>& dealias_mask() const { return dealias_; }

  /// Spectral index of the conjugate partner -k when it lies in the stored
  /// half (last wavenumber 0 or N/2), else the same index.
  std::size_t conjugate_partner(std::size_t m) const;
  bool self_conjugate_plane(std::size_t m) const;

 private:
  int dim_;
  int points_;
  double half_width_;
  std::size_t physical_size_ = 1;
  std::size_t spectral_size_ = 1;
  std::vector<double> xi_mag_;
  std::array<std::vector<double>, 3> dxi_;
  std::vector<double> parseval_;
  std::vector<unsigned char> dealias_;
};

/// r2c / c2r transforms for one grid. Each instance owns its plans and
/// aligned buffers, so separate instances may be used from separate threads.
/// Plan creation is serialized internally (the FFTW planner is not
/// re-entrant).
class SpectralTransform {
 public:
  explicit SpectralTransform(const PeriodicGrid& grid);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const PeriodicGrid& grid() const { return grid_; }

  /// Physical → normalized coefficients.
  void forward(std::span<const double> physical, std::span<cplx> spectral);
  /// Coefficients → physical. Imaginary parts on self-conjugate modes are
  /// ignored, as for any c2r transform.
  void inverse(std::span<const cplx> spectral, std::span<double> physical);

 private:
  struct Impl;
  PeriodicGrid grid_;
  std::unique_ptr<Impl> impl_;
};

/// Largest |c_k - conj(c_{-k})| over modes whose partner is stored, relative
/// to max |c|. Zero for exactly Hermitian data.
double hermitian_defect(const PeriodicGrid& grid, std::span<const cplx> spectral);

}  // namespace sdwave
