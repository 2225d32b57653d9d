#include "sdwave/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include "sdwave/params.hpp"

namespace sdwave {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

PeriodicGrid::PeriodicGrid(int dim, int points, double half_width)
    : dim_(dim), points_(points), half_width_(half_width) {
  if (dim < 1 || dim > 3) throw InvalidArgument("periodic grids support n = 1..3");
  if (points < 8 || !is_power_of_two(points)) {
    throw InvalidArgument("grid points per axis must be a power of two >= 8");
  }
  require_finite(half_width, "half_width");
  if (!(half_width > 0.0)) throw InvalidArgument("half_width must be positive");

  const std::size_t n = static_cast<std::size_t>(points);
  const std::size_t half = n / 2 + 1;
  for (int d = 0; d < dim; ++d) physical_size_ *= n;
  spectral_size_ = half;
  for (int d = 1; d < dim; ++d) spectral_size_ *= n;

  xi_mag_.resize(spectral_size_);
  parseval_.resize(spectral_size_);
  dealias_.resize(spectral_size_);
  for (int d = 0; d < dim; ++d) dxi_[static_cast<std::size_t>(d)].resize(spectral_size_);

  const double scale = std::numbers::pi / half_width;
  const int keep = points / 3;
  for (std::size_t m = 0; m < spectral_size_; ++m) {
    const auto k = wavenumbers(m);
    double sum = 0.0;
    bool inside = true;
    for (int d = 0; d < dim; ++d) {
      const double xi = scale * k[static_cast<std::size_t>(d)];
      sum += xi * xi;
      const int ak = std::abs(k[static_cast<std::size_t>(d)]);
      dxi_[static_cast<std::size_t>(d)][m] = ak == points / 2 ? 0.0 : xi;
      inside = inside && ak <= keep;
    }
    xi_mag_[m] = std::sqrt(sum);
    const int last = k[static_cast<std::size_t>(dim - 1)];
    parseval_[m] = (last == 0 || last == points / 2) ? 1.0 : 2.0;
    dealias_[m] = inside ? 1 : 0;
  }
}

double PeriodicGrid::volume() const { return std::pow(2.0 * half_width_, dim_); }

std::array<int, 3> PeriodicGrid::wavenumbers(std::size_t m) const {
  const std::size_t n = static_cast<std::size_t>(points_);
  const std::size_t half = n / 2 + 1;
  std::array<int, 3> k{0, 0, 0};
  k[static_cast<std::size_t>(dim_ - 1)] = static_cast<int>(m % half);
  std::size_t rest = m / half;
  for (int d = dim_ - 2; d >= 0; --d) {
    const int i = static_cast<int>(rest % n);
    rest /= n;
    k[static_cast<std::size_t>(d)] = i <= points_ / 2 ? i : i - points_;
  }
  return k;
}

const std::vector<double>& PeriodicGrid::derivative_wavenumbers(int axis) const {
  if (axis < 0 || axis >= dim_) throw InvalidArgument("axis out of range");
  return dxi_[static_cast<std::size_t>(axis)];
}

bool PeriodicGrid::self_conjugate_plane(std::size_t m) const {
  const int last = static_cast<int>(m % (static_cast<std::size_t>(points_) / 2 + 1));
  return last == 0 || last == points_ / 2;
}

std::size_t PeriodicGrid::conjugate_partner(std::size_t m) const {
  if (!self_conjugate_plane(m)) return m;
  const std::size_t n = static_cast<std::size_t>(points_);
  const std::size_t half = n / 2 + 1;
  const std::size_t last = m % half;
  std::size_t rest = m / half;
  std::size_t index = 0;
  std::size_t stride = half;
  for (int d = dim_ - 2; d >= 0; --d) {
    const std::size_t i = rest % n;
    rest /= n;
    index += ((n - i) % n) * stride;
    stride *= n;
  }
  return index + last;
}

struct SpectralTransform::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  double norm = 1.0;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
    if (real) fftw_free(real);
    if (spec) fftw_free(spec);
  }
};

SpectralTransform::SpectralTransform(const PeriodicGrid& grid)
    : grid_(grid), impl_(std::make_unique<Impl>()) {
  int dims[3] = {grid.points(), grid.points(), grid.points()};
  std::lock_guard lock(planner_mutex());
  impl_->real = fftw_alloc_real(grid.physical_size());
  impl_->spec = fftw_alloc_complex(grid.spectral_size());
  if (!impl_->real || !impl_->spec) throw std::bad_alloc();
  impl_->forward = fftw_plan_dft_r2c(grid.dim(), dims, impl_->real, impl_->spec, FFTW_ESTIMATE);
  impl_->inverse = fftw_plan_dft_c2r(grid.dim(), dims, impl_->spec, impl_->real, FFTW_ESTIMATE);
  if (!impl_->forward || !impl_->inverse) throw std::runtime_error("FFTW planning failed");
  impl_->norm = 1.0 / static_cast<double>(grid.physical_size());
}

SpectralTransform::~SpectralTransform() = default;

void SpectralTransform::forward(std::span<const double> physical, std::span<cplx> spectral) {
  if (physical.size() != grid_.physical_size() || spectral.size() != grid_.spectral_size()) {
    throw InvalidArgument("forward transform: size mismatch");
  }
  std::memcpy(impl_->real, physical.data(), physical.size_bytes());
  fftw_execute(impl_->forward);
  const double norm = impl_->norm;
  for (std::size_t m = 0; m < spectral.size(); ++m) {
    spectral[m] = cplx(impl_->spec[m][0] * norm, impl_->spec[m][1] * norm);
  }
}

void SpectralTransform::inverse(std::span<const cplx> spectral, std::span<double> physical) {
  if (physical.size() != grid_.physical_size() || spectral.size() != grid_.spectral_size()) {
    throw InvalidArgument("inverse transform: size mismatch");
  }
  static_assert(sizeof(cplx) == sizeof(fftw_complex));
  std::memcpy(impl_->spec, spectral.data(), spectral.size_bytes());
  fftw_execute(impl_->inverse);
  std::memcpy(physical.data(), impl_->real, physical.size_bytes());
}

double hermitian_defect(const PeriodicGrid& grid, std::span<const cplx> spectral) {
  if (spectral.size() != grid.spectral_size()) {
    throw InvalidArgument("hermitian_defect: size mismatch");
  }
  double scale = 0.0;
  double defect = 0.0;
  for (std::size_t m = 0; m < spectral.size(); ++m) {
    scale = std::max(scale, std::abs(spectral[m]));
    if (!grid.self_conjugate_plane(m)) continue;
    const std::size_t p = grid.conjugate_partner(m);
    defect = std::max(defect, std::abs(spectral[m] - std::conj(spectral[p])));
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

}  // namespace sdwave
