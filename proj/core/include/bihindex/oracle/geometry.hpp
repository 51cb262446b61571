#pragma once

// Explicit biharmonic maps phi = i o psi : M -> S^{n+1} sampled on a grid.
//
// Ambient coordinates: psi lands in the first n+1 coordinates of R^{n+2}
// (|psi| = 1/sqrt2) and phi = (psi, 1/sqrt2). The unit normal of the tropic
// along phi is eta = (psi, -1/sqrt2).

#include <array>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "bihindex/oracle/polynomial3.hpp"
#include "bihindex/oracle/spectral.hpp"

namespace bihindex::oracle {

/// S^1(1/sqrt2) -> S^n(1/sqrt2), a great circle, n >= 1. Parameter t, metric dt^2/2.
struct CircleInclusion {
  int n = 1;
};

/// S^1(1/2) x S^1(1/2) -> S^3(1/sqrt2). Parameters (u, v), metric (du^2 + dv^2)/4.
struct TorusClifford {};

/// S^2(1/sqrt2) -> S^n(1/sqrt2), totally geodesic, n >= 2.
struct SphereInclusion {
  int n = 2;
};

/// The classical Veronese surface S^2(sqrt(3/2)) -> S^4(1/sqrt2).
struct VeroneseSurface {};

using GeometryCase = std::variant<CircleInclusion, TorusClifford, SphereInclusion, VeroneseSurface>;

/// circle, torus, sphere, veronese.
std::string case_tag(const GeometryCase& c);

using Samples = std::vector<double>;

/// Ambient vector field sampled at the grid nodes, comp[a][node].
struct VectorSamples {
  std::vector<Samples> comp;

  VectorSamples() = default;
  VectorSamples(std::size_t dim, std::size_t nodes) : comp(dim, Samples(nodes, 0.0)) {}

  std::size_t dim() const { return comp.size(); }
  std::size_t nodes() const { return comp.empty() ? 0 : comp.front().size(); }
};

class ExplicitGeometry {
 public:
  const GeometryCase& geometry_case() const { return case_; }
  std::string tag() const { return case_tag(case_); }

  /// Circle and torus use Fourier differentiation; the sphere cases use
  /// closed-form polynomial derivatives and quadrature.
  bool spectral() const { return differentiator_ != nullptr; }

  /// Domain dimension m.
  int m() const { return m_; }
  /// Dimension n+2 of the ambient space of the target unit sphere.
  int ambient_dim() const { return ambient_; }
  /// Grid parameter passed to build_geometry.
  int grid() const { return grid_; }
  std::size_t nodes() const { return weights_.size(); }

  /// Integration weights including the Riemannian volume element.
  const Samples& weights() const { return weights_; }
  double integrate(const Samples& density) const;
  double volume() const;

  const VectorSamples& phi() const { return phi_; }
  /// psi, with n+1 components.
  const VectorSamples& psi() const { return psi_; }
  const VectorSamples& eta() const { return eta_; }
  /// Unit normal of the torus in S^3(1/sqrt2), xi = sqrt2 (p, -p'), lifted to
  /// R^{n+2}; empty for other cases.
  const VectorSamples& xi() const { return xi_; }

  // Spectral cases.
  /// Number of periodic parameters (1 or 2).
  int parameter_dims() const { return param_dims_; }
  /// c in g = c (sum of squared parameter differentials).
  double metric_factor() const { return metric_factor_; }
  const SpectralDifferentiator& differentiator() const;
  /// Parameter values of each node, (t) or (u, v).
  const std::vector<std::array<double, 2>>& parameters() const { return params_; }

  // Sphere cases.
  double radius() const { return radius_; }
  const std::vector<Point3>& points() const { return points_; }
  /// Closed form of phi, one polynomial per ambient component.
  const std::vector<Polynomial3>& phi_polynomial() const { return phi_poly_; }
  int latitudes() const { return lat_; }
  int longitudes() const { return lon_; }

  /// Shape operator of xi on the torus, as the diagonal in the (u, v) frame.
  std::optional<std::array<double, 2>> shape_operator_xi() const;

 private:
  friend ExplicitGeometry build_geometry(const GeometryCase& c, int grid);
  ExplicitGeometry() = default;

  GeometryCase case_;
  int m_ = 0;
  int ambient_ = 0;
  int grid_ = 0;
  Samples weights_;
  VectorSamples phi_;
  VectorSamples psi_;
  VectorSamples eta_;
  VectorSamples xi_;

  int param_dims_ = 0;
  double metric_factor_ = 0.0;
  std::shared_ptr<const SpectralDifferentiator> differentiator_;
  std::vector<std::array<double, 2>> params_;

  double radius_ = 0.0;
  std::vector<Point3> points_;
  std::vector<Polynomial3> phi_poly_;
  int lat_ = 0;
  int lon_ = 0;
};

/// grid = points per periodic parameter (power of two >= 16) for circle and
/// torus; number of Gauss-Legendre latitudes (>= 8, twice as many
/// longitudes) for the sphere cases.
ExplicitGeometry build_geometry(const GeometryCase& c, int grid);

/// Finite sum of coef * T_u(p u) * T_v(q v), T in {cos, sin}; on the circle
/// only the u factor is used (q = 0).
struct TrigTerm {
  double coef = 1.0;
  int p = 0;
  int q = 0;
  bool sin_u = false;
  bool sin_v = false;
};

struct TrigPolynomial {
  std::vector<TrigTerm> terms;

  Samples sample(const ExplicitGeometry& g) const;
  int bandwidth() const;
};

/// Random trigonometric polynomial of the given degree with standard normal
/// coefficients (dims = number of parameters).
TrigPolynomial random_trig_polynomial(std::mt19937_64& rng, int dims, int degree);

/// Degree-k harmonic polynomial restricted to the sphere: Re((y0 + i y1)^k)
/// when `azimuthal`, otherwise y2 * Re((y0 + i y1)^(k-1)).
Polynomial3 harmonic_polynomial(int k, bool azimuthal = true);

}  // namespace bihindex::oracle
