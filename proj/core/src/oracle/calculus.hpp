#pragma once

// Pointwise vector algebra and the covariant calculus along phi used by the
// oracle. Covariant derivatives are ambient derivatives followed by the
// orthogonal projection onto the tangent space of the unit sphere at phi.

#include <array>
#include <vector>

#include "bihindex/oracle/geometry.hpp"

namespace bihindex::oracle::detail {

using PolyVector = std::vector<Polynomial3>;

Samples dot(const VectorSamples& a, const VectorSamples& b);
Samples norm2(const VectorSamples& a);
VectorSamples operator+(const VectorSamples& a, const VectorSamples& b);
VectorSamples operator-(const VectorSamples& a, const VectorSamples& b);
VectorSamples operator*(double s, const VectorSamples& v);
VectorSamples operator*(const Samples& f, const VectorSamples& v);
Samples operator+(const Samples& a, const Samples& b);
Samples operator-(const Samples& a, const Samples& b);
Samples operator*(const Samples& a, const Samples& b);
Samples operator*(double s, const Samples& a);
double max_norm(const VectorSamples& v);
double max_abs(const Samples& f);

/// W - <W, phi> phi.
VectorSamples project_to_sphere(const VectorSamples& phi, const VectorSamples& w);

/// Calculus on the periodic cases, g = c * (flat metric).
class FlatCalculus {
 public:
  explicit FlatCalculus(const ExplicitGeometry& g);

  const ExplicitGeometry& geometry() const { return *geom_; }
  int dims() const { return dims_; }
  double inverse_metric() const { return inv_c_; }

  Samples partial(const Samples& f, int axis, int order = 1) const;
  VectorSamples partial(const VectorSamples& v, int axis, int order = 1) const;

  /// nabla_{d/d axis} V.
  VectorSamples covariant(const VectorSamples& v, int axis) const;
  /// Rough Laplacian, positive sign: -sum g^ii nabla_i nabla_i V.
  VectorSamples rough_laplacian(const VectorSamples& v) const;
  /// sum g^ii <V, d_i phi> d_i phi, the projection onto dphi(TM).
  VectorSamples tangent_part(const VectorSamples& v) const;
  /// sum g^ii <nabla_i V, d_i phi>.
  Samples pair_with_dphi(const VectorSamples& v) const;

  const std::vector<VectorSamples>& dphi() const { return dphi_; }
  const Samples& dphi_norm2() const { return dphi_norm2_; }
  const VectorSamples& tension() const { return tension_; }

  /// Same operators for psi into the sphere of radius 1/sqrt2 in R^{n+1}.
  VectorSamples project_to_psi_sphere(const VectorSamples& w) const;
  VectorSamples psi_rough_laplacian(const VectorSamples& v) const;

 private:
  const ExplicitGeometry* geom_;
  int dims_;
  double inv_c_;
  std::vector<VectorSamples> dphi_;
  Samples dphi_norm2_;
  VectorSamples tension_;
};

/// Calculus on the sphere cases through closed-form polynomials.
class SphereCalculus {
 public:
  explicit SphereCalculus(const ExplicitGeometry& g);

  const ExplicitGeometry& geometry() const { return *geom_; }

  VectorSamples sample(const PolyVector& v) const;
  Samples sample(const Polynomial3& f) const;
  /// Componentwise positive Laplace-Beltrami operator of the domain.
  PolyVector laplacian(const PolyVector& v) const;
  /// Ambient tangent vector field d phi(X) for X given as three ambient
  /// components tangent to the domain sphere.
  PolyVector push_forward(const std::array<Polynomial3, 3>& x) const;

  /// P(Delta V) - G V.
  VectorSamples rough_laplacian(const PolyVector& v) const;
  /// G V = Dphi P_S Dphi^T V at each node.
  VectorSamples tangent_part(const VectorSamples& v) const;
  const Samples& dphi_norm2() const { return dphi_norm2_; }

  /// Jacobian of the polynomial extension of psi, jac[a][k] = d psi_a / d y_k.
  const std::vector<std::array<Polynomial3, 3>>& psi_jacobian() const { return jac_; }

 private:
  const ExplicitGeometry* geom_;
  std::vector<std::array<Polynomial3, 3>> jac_;
  // Sampled Jacobian of phi and tangential projector rows per node.
  std::vector<std::vector<std::array<double, 3>>> jac_samples_;
  Samples dphi_norm2_;
};

}  // namespace bihindex::oracle::detail
