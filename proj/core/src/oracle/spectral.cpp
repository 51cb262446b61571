#include "bihindex/oracle/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace bihindex::oracle {
namespace {

double pairwise(const double* p, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(p, half) + pairwise(p + half, n - half);
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* data;
};

// Signed wavenumber of index i on a full (non-halved) axis of length n.
int full_axis_k(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise(values.data(), values.size()); }

struct SpectralDifferentiator::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

SpectralDifferentiator::SpectralDifferentiator(int dims, int n, double noise_floor)
    : dims_(dims), n_(n), noise_floor_(noise_floor) {
  if (dims != 1 && dims != 2) throw std::invalid_argument("SpectralDifferentiator: dims must be 1 or 2");
  if (n < 16 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("SpectralDifferentiator: grid must be a power of two >= 16, got " + std::to_string(n));
  }
  const std::size_t half = static_cast<std::size_t>(n / 2 + 1);
  size_ = dims == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
  spectral_size_ = dims == 1 ? half : static_cast<std::size_t>(n) * half;

  RealBuffer real(size_);
  ComplexBuffer spec(spectral_size_);
  plans_ = std::make_unique<Plans>();
  if (dims == 1) {
    plans_->forward = fftw_plan_dft_r2c_1d(n, real.data, spec.data, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_1d(n, spec.data, real.data, FFTW_ESTIMATE);
  } else {
    plans_->forward = fftw_plan_dft_r2c_2d(n, n, real.data, spec.data, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_2d(n, n, spec.data, real.data, FFTW_ESTIMATE);
  }
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("SpectralDifferentiator: FFTW planning failed");
}

SpectralDifferentiator::~SpectralDifferentiator() = default;

std::vector<double> SpectralDifferentiator::derivative(const std::vector<double>& f, int axis, int order) const {
  if (f.size() != size_) throw std::invalid_argument("derivative: sample count does not match the grid");
  if (axis < 0 || axis >= dims_) throw std::invalid_argument("derivative: axis out of range");
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  if (order == 0) return f;

  RealBuffer real(size_);
  ComplexBuffer spec(spectral_size_);
  std::copy(f.begin(), f.end(), real.data);
  fftw_execute_dft_r2c(plans_->forward, real.data, spec.data);

  const int half = n_ / 2 + 1;
  const int rows = dims_ == 1 ? 1 : n_;
  const double norm = 1.0 / static_cast<double>(size_);
  double peak = 0.0;
  for (std::size_t idx = 0; idx < spectral_size_; ++idx) peak = std::max(peak, std::hypot(spec.data[idx][0], spec.data[idx][1]));
  const double floor = noise_floor_ * peak;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < half; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * half + j;
      const bool nyquist = j == n_ / 2 || (dims_ == 2 && i == n_ / 2);
      const int k = (dims_ == 1 || axis == 1) ? j : full_axis_k(i, n_);
      std::complex<double> c(spec.data[idx][0], spec.data[idx][1]);
      if (nyquist || std::abs(c) <= floor) {
        c = 0.0;
      } else {
        c *= std::pow(std::complex<double>(0.0, static_cast<double>(k)), order) * norm;
      }
      spec.data[idx][0] = c.real();
      spec.data[idx][1] = c.imag();
    }
  }
  fftw_execute_dft_c2r(plans_->backward, spec.data, real.data);
  return std::vector<double>(real.data, real.data + size_);
}

int SpectralDifferentiator::bandwidth(const std::vector<double>& f, double rel_tol) const {
  if (f.size() != size_) throw std::invalid_argument("bandwidth: sample count does not match the grid");
  RealBuffer real(size_);
  ComplexBuffer spec(spectral_size_);
  std::copy(f.begin(), f.end(), real.data);
  fftw_execute_dft_r2c(plans_->forward, real.data, spec.data);

  const int half = n_ / 2 + 1;
  const int rows = dims_ == 1 ? 1 : n_;
  double peak = 0.0;
  for (std::size_t idx = 0; idx < spectral_size_; ++idx) peak = std::max(peak, std::hypot(spec.data[idx][0], spec.data[idx][1]));
  if (peak == 0.0) return 0;
  int band = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < half; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * half + j;
      if (std::hypot(spec.data[idx][0], spec.data[idx][1]) <= rel_tol * peak) continue;
      const int ki = dims_ == 1 ? 0 : std::abs(full_axis_k(i, n_));
      band = std::max({band, ki, j});
    }
  }
  return band;
}

}  // namespace bihindex::oracle
