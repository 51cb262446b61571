#pragma once

// Reduced second-variation quadratic forms of the biharmonic maps
// i o psi : M -> S^{n+1}, evaluated on sections built from one Laplace
// eigenfunction f (Delta f = lambda f):
//
//   normal    V = f eta
//   tangent   V = dphi(grad f)
//   vertical  V = f xi  (xi a parallel unit section of the vertical bundle)
//
// All values are normalised per unit integral of f^2.

#include <optional>
#include <string>
#include <utility>

#include "bihindex/polynomial.hpp"
#include "bihindex/rational.hpp"
#include "bihindex/spectra.hpp"
#include "bihindex/surd.hpp"

namespace bihindex {

enum class Subbundle { normal, tangent, vertical };
enum class FormKind { exact, lower_bound };

std::string to_string(Subbundle s);
std::string to_string(FormKind k);

struct FormValue {
  Rational value;
  FormKind kind = FormKind::exact;
  Subbundle subbundle = Subbundle::normal;
  std::string anchor;
};

/// lambda^2 + 4 lambda - 4 m^2.
FormValue normal_form(int m, const Rational& lambda);

/// True iff (lambda + 2)^2 < 4(m^2 + 1).
bool normal_negative(int m, const Rational& lambda);

/// 2(sqrt(m^2+1) - 1): the normal form is negative exactly below it.
QuadraticSurd normal_threshold(int m);

/// P(lambda) = lambda^2 + 2(m+2-2 kappa) lambda + 4 kappa^2 - 4 kappa m.
RationalPolynomial tangent_polynomial(int m, const Rational& kappa);

/// Real roots (x1 <= x2) of tangent_polynomial, computed from the
/// discriminant (m+2)^2 - 8 kappa; empty when they are complex.
std::optional<std::pair<QuadraticSurd, QuadraticSurd>> tangent_roots(int m, const Rational& kappa);

/// Roots of the tangent polynomial for the Veronese family in the closed
/// form (m^2-5m-2)/(m+1) -/+ sqrt((m^3-3m^2+16m+4)/(m+1)).
std::pair<QuadraticSurd, QuadraticSurd> veronese_tangent_roots(int m);

/// lambda * P(lambda) with the family's Einstein constant. The value is a
/// lower bound unless the dropped term 4|tr nabla dpsi(nabla_. X, .)|^2
/// is known to vanish or is known in closed form.
FormValue tangent_form(const ManifoldFamily& family, const Rational& lambda, bool refine_lambda1 = false);

/// Vertical form per vertical direction.
FormValue vertical_form(const ManifoldFamily& family, const Rational& lambda);

/// (I(f eta), dphi(grad f)) per unit integral of f^2.
Rational cross_term(const ManifoldFamily& family, const Rational& lambda);

/// (I(f eta), dphi(grad g)) for eigenfunctions f, g of eigenvalues
/// lambda_f, lambda_g. Distinct eigenvalues give orthogonal eigenfunctions
/// and a zero pairing; equal ones defer to cross_term.
Rational cross_term(const ManifoldFamily& family, const Rational& lambda_f, const Rational& lambda_g);

enum class Definiteness {
  zero,
  positive_definite,
  positive_semidefinite_with_kernel,
  negative_definite,
  negative_semidefinite_with_kernel,
  indefinite,
};

std::string to_string(Definiteness d);

/// Primitive integer direction, first non-zero entry positive.
struct KernelDirection {
  BigInt normal;
  BigInt tangent;
  friend bool operator==(const KernelDirection&, const KernelDirection&) = default;
};

struct BlockClassification {
  Definiteness kind = Definiteness::zero;
  Rational determinant;
  std::optional<KernelDirection> kernel;
  int negative_dims = 0;
  int null_dims = 0;
  int positive_dims = 0;
};

/// Exact classification of [[q_normal, cross], [cross, q_tangent]].
BlockClassification block_definiteness(const Rational& q_normal, const Rational& q_tangent, const Rational& cross);

struct GateReport {
  bool lichnerowicz_pass = false;
  bool einstein_pass = false;
  bool lambda1_pass = false;
  bool identity_stable = false;
  /// 2(m-1)/m * (sqrt(m^2+1) - 1).
  QuadraticSurd kappa_threshold;
};

/// Sufficient conditions for the absence of index contributions:
/// kappa >= kappa_threshold (normal), kappa >= (m+2)^2/8 and
/// lambda1 >= m^2/4 (tangent), 2 kappa <= lambda1 (stability of the identity).
GateReport gates(int m, const Rational& kappa, const Rational& lambda1);

}  // namespace bihindex
