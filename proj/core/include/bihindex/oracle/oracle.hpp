#pragma once

// Numerical second-variation calculus on the explicit geometries.

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bihindex/oracle/geometry.hpp"

namespace bihindex::oracle {

enum class BundleTag { normal, tangent, vertical, mixed };
std::string to_string(BundleTag t);

/// A section of phi^{-1} T S^{n+1}. On the sphere cases the closed form
/// is kept next to the samples because the operators act on it.
struct DiscretizedSection {
  BundleTag tag = BundleTag::mixed;
  VectorSamples values;
  std::vector<Polynomial3> closed_form;
  /// Trigonometric bandwidth of the data on periodic cases.
  int bandwidth = 0;
};

/// A scalar on the domain: a trigonometric polynomial on circle and torus,
/// an ambient polynomial restricted to the sphere otherwise.
using ScalarField = std::variant<TrigPolynomial, Polynomial3>;

Samples sample(const ExplicitGeometry& g, const ScalarField& f);

/// f eta.
DiscretizedSection normal_section(const ExplicitGeometry& g, const ScalarField& f);
/// dphi(grad f).
DiscretizedSection gradient_section(const ExplicitGeometry& g, const ScalarField& f);
/// dphi(X) for X = sum_i X^i d/d(param_i); periodic cases only.
DiscretizedSection tangent_section(const ExplicitGeometry& g, const std::vector<TrigPolynomial>& field);
/// f xi on the torus, f e_{m+1+direction} for the totally geodesic cases.
DiscretizedSection vertical_section(const ExplicitGeometry& g, const ScalarField& f, int direction = 0);
/// a V + b W; the tag is kept when both agree, otherwise mixed.
DiscretizedSection combine(double a, const DiscretizedSection& v, double b, const DiscretizedSection& w);

/// Checks tangency to the target sphere and the bundle tag at every node;
/// throws std::domain_error naming the first offending node.
void validate_section(const ExplicitGeometry& g, const DiscretizedSection& v, double tol = 1e-10);

struct BiharmonicityResiduals {
  double energy_density = 0.0;  // max |e(psi) - m/2|
  double tension = 0.0;         // max |tau(phi) + m eta|
  double bitension = 0.0;       // max |tau2(phi)|
  std::array<std::size_t, 3> worst_node{};
};
BiharmonicityResiduals biharmonicity_residuals(const ExplicitGeometry& g);

/// integral of f^2.
double integral_of_square(const ExplicitGeometry& g, const ScalarField& f);

/// (I(V), V) from the integrated second-order form of the section's bundle.
double quadform_numeric(const ExplicitGeometry& g, const DiscretizedSection& v);

/// I(V) with every term of the fourth-order operator evaluated literally.
/// Periodic cases only; throws std::domain_error when the section's
/// bandwidth leaves too little room below the grid's Nyquist frequency.
DiscretizedSection full_second_variation(const ExplicitGeometry& g, const DiscretizedSection& v);
/// integral of <I(V), W>.
double bilinear(const ExplicitGeometry& g, const DiscretizedSection& v, const DiscretizedSection& w);

/// Pointwise 4 |tr nabla dpsi(nabla_. X, .)|^2 for X = grad f, the term that
/// the tangent lower bound drops.
Samples dropped_tangent_density(const ExplicitGeometry& g, const ScalarField& f);
double dropped_tangent_term(const ExplicitGeometry& g, const ScalarField& f);

struct IdentityResiduals {
  /// Integral identity for div X and L_X g, relative to its scale.
  double yano = 0.0;
  /// max |Delta^phi V - (Delta^psi V, 0) - 2 (div X) eta - V| over max |Delta^phi V|.
  double bochner = 0.0;
  /// max |J_curvature(V) - (Delta^psi V + 2(1-m) V)| over max |Delta^psi V|.
  double jacobi = 0.0;
  /// |(I(V),V) - integral(|J|^2 + 4 (div X)^2 + 2m <J,V>)| relative.
  double jacobi_decomposition = 0.0;
  /// min over nodes of |L_X g|^2 - (4/m)(div X)^2, scaled by max |L_X g|^2.
  double killing_bound_margin = 0.0;
};
IdentityResiduals identity_residuals(const ExplicitGeometry& g, const std::vector<TrigPolynomial>& field);

/// Relative difference between -integral <tau, V> and the central finite
/// difference of the energy along normalize(phi + s V).
double first_variation_error(const ExplicitGeometry& g, const DiscretizedSection& v, double step = 1e-4);

/// Dimension of the space of Killing fields among trigonometric vector
/// fields of degree <= `degree`, from the numerical nullspace of X -> L_X g.
int killing_dimension(const ExplicitGeometry& g, int degree = 2);

/// Random band-limited tangent field on a periodic geometry.
std::vector<TrigPolynomial> random_tangent_field(const ExplicitGeometry& g, std::mt19937_64& rng, int degree);

}  // namespace bihindex::oracle
