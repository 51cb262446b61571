#pragma once

#include <memory>
#include <span>
#include <vector>

namespace bihindex::oracle {

/// Sum in a fixed binary-tree order; the result does not depend on how the
/// caller might have chunked the data.
double pairwise_sum(std::span<const double> values);

/// Fourier differentiation of real periodic samples on [0, 2pi)^dims,
/// dims in {1, 2}, n points per axis (power of two, >= 16). Samples are
/// stored with the last axis fastest: index i*n + j for (u_i, v_j).
///
/// Plans are created once with FFTW_ESTIMATE and only executed afterwards
/// through the new-array interface, so a differentiator may be shared.
///
/// Coefficients below noise_floor * (largest coefficient) are treated as
/// rounding noise and dropped before multiplying by (ik)^order; otherwise
/// repeated differentiation amplifies the noise by about (n/2)^order each time.
class SpectralDifferentiator {
 public:
  SpectralDifferentiator(int dims, int n, double noise_floor = 1e-13);
  ~SpectralDifferentiator();
  SpectralDifferentiator(const SpectralDifferentiator&) = delete;
  SpectralDifferentiator& operator=(const SpectralDifferentiator&) = delete;

  int dims() const { return dims_; }
  int n() const { return n_; }
  double noise_floor() const { return noise_floor_; }
  std::size_t size() const { return size_; }

  /// d^order / d(axis)^order. The Nyquist mode is dropped.
  std::vector<double> derivative(const std::vector<double>& f, int axis, int order = 1) const;

  /// Largest |k| over both axes carrying a coefficient above
  /// rel_tol * (largest coefficient); 0 for constants and for zero data.
  int bandwidth(const std::vector<double>& f, double rel_tol = 1e-12) const;

 private:
  struct Plans;
  int dims_;
  int n_;
  double noise_floor_;
  std::size_t size_;
  std::size_t spectral_size_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace bihindex::oracle
