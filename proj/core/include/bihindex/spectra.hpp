#pragma once

// Laplace-Beltrami spectra of the model domains.
//
// Every domain is a round sphere, a real projective space or a product of two
// equal spheres, so eigenvalues are exact rationals. A sphere "of radius r"
// is (S^m, r^2 g_can) and its k-th eigenvalue is k(m+k-1)/r^2.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bihindex/rational.hpp"

namespace bihindex {

/// S^m(1/sqrt2) included totally geodesically in S^n(1/sqrt2), m <= n.
struct TotallyGeodesicInclusion {
  int m = 1;
  int n = 1;
};

/// Generalised Veronese immersion of S^m(sqrt((m+1)/m)), m >= 2.
struct Veronese {
  int m = 2;
};

/// The Veronese map factored through RP^m with metric (m+1)/m g_can.
struct VeroneseProjective {
  int m = 2;
};

/// Generalised Clifford torus S^l(1/2) x S^l(1/2), domain dimension 2l.
struct CliffordTorus {
  int l = 1;
};

/// The identity map of the unit sphere S^n, n >= 2.
struct IdentityMap {
  int n = 2;
};

class ManifoldFamily {
 public:
  using Variant = std::variant<TotallyGeodesicInclusion, Veronese, VeroneseProjective, CliffordTorus, IdentityMap>;

  /// Validates the dimension constraints; throws std::invalid_argument.
  explicit ManifoldFamily(Variant v);

  static ManifoldFamily tgi(int m, int n) { return ManifoldFamily(TotallyGeodesicInclusion{m, n}); }
  static ManifoldFamily veronese(int m) { return ManifoldFamily(Veronese{m}); }
  static ManifoldFamily veronese_projective(int m) { return ManifoldFamily(VeroneseProjective{m}); }
  static ManifoldFamily clifford(int l) { return ManifoldFamily(CliffordTorus{l}); }
  static ManifoldFamily identity(int n) { return ManifoldFamily(IdentityMap{n}); }

  const Variant& kind() const { return kind_; }
  template <class T>
  bool is() const { return std::holds_alternative<T>(kind_); }
  template <class T>
  const T& as() const { return std::get<T>(kind_); }

  /// Dimension m of the domain.
  int domain_dimension() const;
  /// Dimension of the target unit sphere of the biharmonic map.
  int target_dimension() const;
  /// Short tag used on the command line and in reports: tgi, veronese, ...
  std::string tag() const;
  /// Human-readable description, e.g. "TotallyGeodesicInclusion{m=2,n=3}".
  std::string describe() const;

  friend bool operator==(const ManifoldFamily& a, const ManifoldFamily& b);

 private:
  Variant kind_;
};

/// Codimension p = (m-1)(m+2)/2 of the generalised Veronese immersion.
int veronese_codimension(int m);

struct SphereLevel {
  int k = 0;
  friend bool operator==(const SphereLevel&, const SphereLevel&) = default;
};

/// Every (p, q) pair of factor levels producing the same product eigenvalue.
struct ProductLevel {
  std::vector<std::pair<int, int>> pairs;
  friend bool operator==(const ProductLevel&, const ProductLevel&) = default;
};

using Level = std::variant<SphereLevel, ProductLevel>;

std::string level_string(const Level& level);

struct Eigenvalue {
  Rational value;
  Level level;
  std::uint64_t multiplicity = 1;
};

using Spectrum = std::vector<Eigenvalue>;

struct EinsteinData {
  Rational kappa;
  bool is_einstein = true;
};

/// k-th eigenvalue of (S^m, scale * g_can) with the dimension of the space of
/// degree-k spherical harmonics as multiplicity.
Eigenvalue sphere_level(int m, const Rational& scale, int k);

/// Dimension of degree-k spherical harmonics on S^m.
std::uint64_t sphere_multiplicity(int m, int k);

/// Distinct eigenvalues <= lambda_max in increasing order, equal values
/// merged with summed multiplicities.
Spectrum family_spectrum(const ManifoldFamily& family, const Rational& lambda_max);

Eigenvalue first_nonzero_eigenvalue(const ManifoldFamily& family);

/// Smallest eigenvalue strictly greater than `lambda`.
Eigenvalue next_eigenvalue_above(const ManifoldFamily& family, const Rational& lambda);

/// True when `lambda` is an eigenvalue of the family's domain.
bool is_eigenvalue(const ManifoldFamily& family, const Rational& lambda);

EinsteinData einstein_constant(const ManifoldFamily& family);

/// Dimension of the isometry group of the domain.
std::uint64_t isometry_group_dim(const ManifoldFamily& family);

}  // namespace bihindex
