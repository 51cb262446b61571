#include "bihindex/quadforms.hpp"

#include <stdexcept>

namespace bihindex {
namespace {

void require_eigenvalue(const ManifoldFamily& family, const Rational& lambda, const char* op) {
  if (!is_eigenvalue(family, lambda)) {
    throw std::invalid_argument(std::string(op) + ": " + lambda.str() + " is not an eigenvalue of " +
                                family.describe());
  }
}

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

KernelDirection primitive_direction(const Rational& x, const Rational& y) {
  const BigInt dx = x.denominator();
  const BigInt dy = y.denominator();
  const BigInt l = dx / gcd(dx, dy) * dy;
  BigInt a = x.numerator() * (l / dx);
  BigInt b = y.numerator() * (l / dy);
  const BigInt g = gcd(a, b);
  a /= g;
  b /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  return KernelDirection{a, b};
}

}  // namespace

std::string to_string(Subbundle s) {
  switch (s) {
    case Subbundle::normal: return "normal";
    case Subbundle::tangent: return "tangent";
    case Subbundle::vertical: return "vertical";
  }
  return "?";
}

std::string to_string(FormKind k) { return k == FormKind::exact ? "exact" : "lower_bound"; }

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::zero: return "zero";
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::positive_semidefinite_with_kernel: return "positive_semidefinite_with_kernel";
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::negative_semidefinite_with_kernel: return "negative_semidefinite_with_kernel";
    case Definiteness::indefinite: return "indefinite";
  }
  return "?";
}

FormValue normal_form(int m, const Rational& lambda) {
  if (m < 1) throw std::invalid_argument("normal_form: m must be >= 1");
  if (lambda.sign() < 0) throw std::invalid_argument("normal_form: lambda must be >= 0");
  return FormValue{lambda * lambda + 4 * lambda - Rational(4 * m * m), FormKind::exact, Subbundle::normal,
                   "normal form lambda^2+4lambda-4m^2"};
}

bool normal_negative(int m, const Rational& lambda) {
  if (m < 1) throw std::invalid_argument("normal_negative: m must be >= 1");
  if (lambda.sign() < 0) throw std::invalid_argument("normal_negative: lambda must be >= 0");
  const Rational shifted = lambda + 2;
  return shifted * shifted < Rational(4 * (m * m + 1));
}

QuadraticSurd normal_threshold(int m) {
  if (m < 1) throw std::invalid_argument("normal_threshold: m must be >= 1");
  return QuadraticSurd(Rational(-2), Rational(2), Rational(m * m + 1));
}

RationalPolynomial tangent_polynomial(int m, const Rational& kappa) {
  return RationalPolynomial{4 * kappa * kappa - 4 * kappa * m, 2 * (Rational(m + 2) - 2 * kappa), Rational(1)};
}

std::optional<std::pair<QuadraticSurd, QuadraticSurd>> tangent_roots(int m, const Rational& kappa) {
  const Rational disc = Rational((m + 2) * (m + 2)) - 8 * kappa;
  if (disc.sign() < 0) return std::nullopt;
  const Rational vertex = 2 * kappa - Rational(m + 2);
  return std::make_pair(QuadraticSurd(vertex, Rational(-1), disc), QuadraticSurd(vertex, Rational(1), disc));
}

std::pair<QuadraticSurd, QuadraticSurd> veronese_tangent_roots(int m) {
  if (m < 2) throw std::invalid_argument("veronese_tangent_roots: m must be >= 2");
  const Rational a(m * m - 5 * m - 2, m + 1);
  const Rational d(static_cast<std::int64_t>(m) * m * m - 3 * m * m + 16 * m + 4, m + 1);
  return {QuadraticSurd(a, Rational(-1), d), QuadraticSurd(a, Rational(1), d)};
}

FormValue tangent_form(const ManifoldFamily& family, const Rational& lambda, bool refine_lambda1) {
  if (family.is<IdentityMap>()) throw std::invalid_argument("tangent_form: the identity map is not supported");
  require_eigenvalue(family, lambda, "tangent_form");
  const Rational lambda1 = first_nonzero_eigenvalue(family).value;
  if (refine_lambda1 && lambda != lambda1) {
    throw std::invalid_argument("tangent_form: refinement applies only at the first eigenvalue " + lambda1.str());
  }
  const int m = family.domain_dimension();
  const Rational kappa = einstein_constant(family).kappa;
  FormValue out{lambda * tangent_polynomial(m, kappa)(lambda), FormKind::lower_bound, Subbundle::tangent,
                "tangent bound lambda*(lambda^2+2(m+2-2kappa)lambda+4kappa^2-4kappa*m)"};
  if (family.is<TotallyGeodesicInclusion>()) {
    out.kind = FormKind::exact;
    out.anchor = "tangent form, totally geodesic: nabla dpsi = 0";
  } else if (family.is<Veronese>() && lambda == lambda1) {
    out.kind = FormKind::exact;
    out.anchor = "tangent form, Veronese first eigenfunctions: nabla_X grad f = -m/(m+1) f X";
  } else if (family.is<CliffordTorus>() && refine_lambda1) {
    out.value = Rational(2 * m * (64 - 8 * m) + 32 * m * m);
    out.kind = FormKind::exact;
    out.anchor = "tangent form, Clifford first eigenvalue: 2m(-8m+64)+32m^2";
  }
  return out;
}

FormValue vertical_form(const ManifoldFamily& family, const Rational& lambda) {
  if (family.is<TotallyGeodesicInclusion>()) {
    const auto& f = family.as<TotallyGeodesicInclusion>();
    if (f.m == f.n) throw std::invalid_argument("vertical_form: the vertical bundle is empty when m = n");
    require_eigenvalue(family, lambda, "vertical_form");
    return FormValue{lambda * (lambda - 2 * f.m), FormKind::exact, Subbundle::vertical,
                     "vertical form lambda(lambda-2m) per direction e_{m+i}"};
  }
  if (family.is<CliffordTorus>()) {
    const int l = family.as<CliffordTorus>().l;
    require_eigenvalue(family, lambda, "vertical_form");
    return FormValue{lambda * lambda + 4 * (l + 2) * lambda, FormKind::exact, Subbundle::vertical,
                     "vertical form lambda^2+4(l+2)lambda along xi"};
  }
  throw std::invalid_argument("vertical_form: no vertical analysis for " + family.describe());
}

Rational cross_term(const ManifoldFamily& family, const Rational& lambda) {
  if (family.is<TotallyGeodesicInclusion>()) {
    require_eigenvalue(family, lambda, "cross_term");
    const int m = family.domain_dimension();
    return -4 * lambda * (lambda + 2 - 2 * m);
  }
  if (family.is<Veronese>()) {
    const Rational lambda1 = first_nonzero_eigenvalue(family).value;
    if (lambda != lambda1) {
      throw std::invalid_argument("cross_term: Veronese cross term is known only at the first eigenvalue " +
                                  lambda1.str());
    }
    const std::int64_t m = family.domain_dimension();
    return Rational(-4 * m * m * m, (m + 1) * (m + 1));
  }
  throw std::invalid_argument("cross_term: no cross term for " + family.describe());
}

Rational cross_term(const ManifoldFamily& family, const Rational& lambda_f, const Rational& lambda_g) {
  if (!family.is<TotallyGeodesicInclusion>() && !family.is<Veronese>()) {
    throw std::invalid_argument("cross_term: no cross term for " + family.describe());
  }
  if (lambda_f != lambda_g) {
    require_eigenvalue(family, lambda_f, "cross_term");
    require_eigenvalue(family, lambda_g, "cross_term");
    return 0;
  }
  return cross_term(family, lambda_f);
}

BlockClassification block_definiteness(const Rational& q_normal, const Rational& q_tangent, const Rational& cross) {
  BlockClassification out;
  out.determinant = q_normal * q_tangent - cross * cross;
  const int det_sign = out.determinant.sign();
  if (q_normal.is_zero() && q_tangent.is_zero() && cross.is_zero()) {
    out.kind = Definiteness::zero;
    out.null_dims = 2;
    return out;
  }
  if (det_sign > 0) {
    // Same-sign diagonal; q_normal cannot vanish here.
    if (q_normal.sign() > 0) {
      out.kind = Definiteness::positive_definite;
      out.positive_dims = 2;
    } else {
      out.kind = Definiteness::negative_definite;
      out.negative_dims = 2;
    }
    return out;
  }
  if (det_sign < 0) {
    out.kind = Definiteness::indefinite;
    out.negative_dims = 1;
    out.positive_dims = 1;
    return out;
  }
  out.null_dims = 1;
  if ((q_normal + q_tangent).sign() > 0) {
    out.kind = Definiteness::positive_semidefinite_with_kernel;
    out.positive_dims = 1;
  } else {
    out.kind = Definiteness::negative_semidefinite_with_kernel;
    out.negative_dims = 1;
  }
  if (!q_normal.is_zero() || !cross.is_zero()) {
    out.kernel = primitive_direction(-cross, q_normal);
  } else {
    out.kernel = primitive_direction(q_tangent, -cross);
  }
  return out;
}

GateReport gates(int m, const Rational& kappa, const Rational& lambda1) {
  if (m < 2) throw std::invalid_argument("gates: m must be >= 2");
  if (kappa.sign() < 0) throw std::invalid_argument("gates: kappa must be >= 0");
  if (lambda1.sign() <= 0) throw std::invalid_argument("gates: lambda1 must be > 0");
  const Rational factor(2 * (m - 1), m);
  GateReport out;
  out.kappa_threshold = QuadraticSurd(-factor, factor, Rational(m * m + 1));
  out.lichnerowicz_pass = out.kappa_threshold <= kappa;
  out.einstein_pass = kappa >= Rational((m + 2) * (m + 2), 8);
  out.lambda1_pass = lambda1 >= Rational(m * m, 4);
  out.identity_stable = 2 * kappa <= lambda1;
  return out;
}

}  // namespace bihindex
