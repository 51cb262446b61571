#include "bihindex/classifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace bihindex {
namespace {

bool has_block(const ManifoldFamily& family, const Rational& lambda, const Rational& lambda1) {
  if (lambda.is_zero()) return false;  // grad f = 0, no tangent partner
  if (family.is<TotallyGeodesicInclusion>()) return true;
  return family.is<Veronese>() && lambda == lambda1;
}

bool has_vertical(const ManifoldFamily& family) {
  if (family.is<TotallyGeodesicInclusion>()) {
    const auto& f = family.as<TotallyGeodesicInclusion>();
    return f.m < f.n;
  }
  return family.is<CliffordTorus>();
}

std::uint64_t vertical_directions(const ManifoldFamily& family) {
  if (family.is<TotallyGeodesicInclusion>()) {
    const auto& f = family.as<TotallyGeodesicInclusion>();
    return static_cast<std::uint64_t>(f.n - f.m);
  }
  return 1;
}

// q_normal, q_tangent and the cross term of the inclusion as polynomials in lambda.
struct InclusionBlockPolynomials {
  RationalPolynomial q_normal;
  RationalPolynomial determinant;
};

InclusionBlockPolynomials inclusion_block(int m) {
  const RationalPolynomial x = RationalPolynomial::x();
  const Rational kappa(2 * (m - 1));
  RationalPolynomial q_normal = x * x + RationalPolynomial{Rational(-4 * m * m), Rational(4)};
  RationalPolynomial q_tangent = x * tangent_polynomial(m, kappa);
  RationalPolynomial cross = RationalPolynomial{Rational(0), Rational(-4 * (2 - 2 * m)), Rational(-4)};
  return {q_normal, q_normal * q_tangent - cross * cross};
}

DirectionSign sign_of(const FormValue& v) {
  const int s = v.value.sign();
  if (v.kind == FormKind::lower_bound) return s >= 0 ? DirectionSign::nonnegative : DirectionSign::uncertified;
  if (s < 0) return DirectionSign::negative;
  if (s > 0) return DirectionSign::positive;
  return DirectionSign::null;
}

}  // namespace

std::string to_string(DirectionSign s) {
  switch (s) {
    case DirectionSign::negative: return "negative";
    case DirectionSign::null: return "null";
    case DirectionSign::positive: return "positive";
    case DirectionSign::nonnegative: return "nonnegative";
    case DirectionSign::uncertified: return "uncertified";
  }
  return "?";
}

std::optional<std::string> tail_obstruction(const ManifoldFamily& family, const Rational& lambda_max) {
  if (family.is<IdentityMap>()) return "the identity map has no spectral sweep";
  if (lambda_max.sign() < 0) return "lambda_max must be >= 0";
  const int m = family.domain_dimension();
  if (family_spectrum(family, lambda_max).size() < 3) {
    return "lambda_max " + lambda_max.str() + " covers fewer than three distinct eigenvalues";
  }
  const QuadraticSurd threshold = normal_threshold(m);
  if (lambda_max < threshold) {
    return "lambda_max " + lambda_max.str() + " is below the normal threshold " + threshold.str();
  }
  if (auto roots = tangent_roots(m, einstein_constant(family).kappa); roots && lambda_max < roots->second) {
    return "lambda_max " + lambda_max.str() + " is below the tangent root " + roots->second.str();
  }
  if (family.is<TotallyGeodesicInclusion>()) {
    if (has_vertical(family) && lambda_max < Rational(2 * m)) {
      return "lambda_max " + lambda_max.str() + " is below the vertical root " + std::to_string(2 * m);
    }
    const Rational next = next_eigenvalue_above(family, lambda_max).value;
    const auto block = inclusion_block(m);
    if (!block.q_normal.taylor_shift(next).positive_on_nonnegative_axis() ||
        !block.determinant.taylor_shift(next).positive_on_nonnegative_axis()) {
      return "normal/tangent block not certified positive definite from " + next.str();
    }
  }
  return std::nullopt;
}

Rational minimal_lambda_max(const ManifoldFamily& family) {
  if (family.is<IdentityMap>()) throw std::invalid_argument("minimal_lambda_max: the identity map has no sweep");
  Rational candidate = 0;
  for (int guard = 0; guard < 100000; ++guard) {
    if (!tail_obstruction(family, candidate)) return candidate;
    candidate = next_eigenvalue_above(family, candidate).value;
  }
  throw std::runtime_error("minimal_lambda_max: no admissible cutoff found for " + family.describe());
}

std::uint64_t normal_negative_count(const ManifoldFamily& family, const Rational& lambda_max) {
  const int m = family.domain_dimension();
  std::uint64_t count = 0;
  for (const auto& ev : family_spectrum(family, lambda_max)) {
    if (normal_negative(m, ev.value)) count += ev.multiplicity;
  }
  return count;
}

NullitySplit tgi_nullity(int m, int n) {
  if (m < 1) throw std::invalid_argument("tgi_nullity: m must be >= 1");
  if (m > n) throw std::invalid_argument("tgi_nullity: requires m <= n");
  NullitySplit s;
  s.first_eigen_kernel = static_cast<std::uint64_t>(m + 1);
  s.killing = static_cast<std::uint64_t>(m) * (m + 1) / 2;
  s.vertical = static_cast<std::uint64_t>(m + 2) * (n - m);
  s.total = s.first_eigen_kernel + s.killing + s.vertical;
  return s;
}

std::uint64_t identity_nullity(int n) {
  if (n < 2) throw std::invalid_argument("identity_nullity: n must be >= 2");
  if (n == 2) return 6;
  return static_cast<std::uint64_t>(n) * (n + 1) / 2;
}

IndexReport classify(const ManifoldFamily& family) { return classify(family, minimal_lambda_max(family)); }

IndexReport classify(const ManifoldFamily& family, const Rational& lambda_max) {
  if (family.is<IdentityMap>()) {
    throw std::invalid_argument("classify: the identity map is harmonic; use identity_nullity");
  }
  if (auto why = tail_obstruction(family, lambda_max)) throw std::invalid_argument("classify: " + *why);

  const int m = family.domain_dimension();
  const Rational lambda1 = first_nonzero_eigenvalue(family).value;
  const bool tgi = family.is<TotallyGeodesicInclusion>();

  IndexReport report(family);
  report.lambda_max = lambda_max;
  auto& normal = report.contributions[0];
  auto& tangent = report.contributions[1];
  auto& vertical = report.contributions[2];
  normal.subbundle = Subbundle::normal;
  tangent.subbundle = Subbundle::tangent;
  vertical.subbundle = Subbundle::vertical;

  std::uint64_t index = 0;
  std::uint64_t block_nulls = 0;

  for (const auto& ev : family_spectrum(family, lambda_max)) {
    const bool block = has_block(family, ev.value, lambda1);

    const FormValue qn = normal_form(m, ev.value);
    EigenAttribution na{ev.value, ev.multiplicity, qn.value, qn.kind, sign_of(qn), block};
    if (na.sign == DirectionSign::negative) normal.negative_count += ev.multiplicity;
    normal.eigen_attribution.push_back(na);

    std::optional<EigenAttribution> ta;
    if (!ev.value.is_zero()) {
      const bool refine = family.is<CliffordTorus>() && ev.value == lambda1;
      const FormValue qt = tangent_form(family, ev.value, refine);
      ta = EigenAttribution{ev.value, ev.multiplicity, qt.value, qt.kind, sign_of(qt), block};
      if (ta->sign == DirectionSign::negative) tangent.negative_count += ev.multiplicity;
      if (ta->sign == DirectionSign::uncertified) tangent.certified = false;
      if (ta->sign == DirectionSign::null && !block) {
        ta->sign = DirectionSign::uncertified;
        tangent.certified = false;
      }
      tangent.eigen_attribution.push_back(*ta);
    }

    if (block) {
      BlockNote note;
      note.eigenvalue = ev.value;
      note.multiplicity = ev.multiplicity;
      note.q_normal = qn.value;
      note.q_tangent = ta->form_value;
      note.cross = cross_term(family, ev.value);
      note.classification = block_definiteness(note.q_normal, note.q_tangent, note.cross);
      note.null_certified = tgi;
      note.anchor = tgi ? "inclusion block, cross term -4lambda(lambda+2-2m)"
                        : "Veronese first-eigenvalue block, cross term -4m^3/(m+1)^2";
      index += static_cast<std::uint64_t>(note.classification.negative_dims) * ev.multiplicity;
      if (note.null_certified) block_nulls += static_cast<std::uint64_t>(note.classification.null_dims) * ev.multiplicity;
      report.cross_block_notes.push_back(std::move(note));
    } else {
      // Without a cross term only one of f eta, dphi(grad f) is counted per eigenfunction.
      const bool n_neg = na.sign == DirectionSign::negative;
      const bool t_neg = ta && ta->sign == DirectionSign::negative;
      if (n_neg || t_neg) index += ev.multiplicity;
      if (n_neg && t_neg) {
        tangent.notes.push_back("eigenvalue " + ev.value.str() +
                                ": tangent direction negative but no cross term; counted once with the normal one");
      }
    }

    if (has_vertical(family)) {
      const FormValue qv = vertical_form(family, ev.value);
      const std::uint64_t mult = ev.multiplicity * vertical_directions(family);
      EigenAttribution va{ev.value, mult, qv.value, qv.kind, sign_of(qv), false};
      if (va.sign == DirectionSign::negative) {
        vertical.negative_count += mult;
        index += mult;
      } else if (va.sign == DirectionSign::null) {
        if (tgi) {
          vertical.null_count += mult;
        } else {
          va.sign = DirectionSign::uncertified;
          vertical.certified = false;
          vertical.notes.push_back("eigenvalue " + ev.value.str() + ": vertical form vanishes, kernel not proved");
        }
      }
      vertical.eigen_attribution.push_back(va);
    }
  }

  tangent.null_count += isometry_group_dim(family);
  tangent.notes.push_back("Killing fields: " + std::to_string(isometry_group_dim(family)) +
                          " null directions, dimension of the isometry group");
  if (!tgi) {
    tangent.certified = false;
    tangent.notes.push_back("divergence-free fields other than Killing fields are not analysed");
  }
  if (!has_vertical(family)) {
    if (tgi) {
      vertical.notes.push_back("empty vertical bundle (m = n)");
    } else {
      vertical.certified = false;
      vertical.notes.push_back("vertical bundle not analysed for " + family.describe());
    }
  }

  const std::uint64_t nulls = tangent.null_count + vertical.null_count + block_nulls;
  report.index_lower_bound = index;
  report.nullity_lower_bound = nulls;
  report.index_anchor = "index from negative reduced forms and normal/tangent blocks";
  report.nullity_anchor = "nullity from Killing fields, certified vertical kernels and block kernels";

  if (tgi) {
    const auto& f = family.as<TotallyGeodesicInclusion>();
    const NullitySplit split = tgi_nullity(f.m, f.n);
    if (split.total != nulls) {
      throw std::logic_error("classify: swept nullity " + std::to_string(nulls) + " disagrees with closed form " +
                             std::to_string(split.total));
    }
    report.index_exact = index;
    report.nullity_exact = nulls;
    report.nullity_split = split;
    report.index_anchor = "inclusion: only eta is negative, index 1";
    report.nullity_anchor = "inclusion nullity (m+1)(m+2)/2+(m+2)(n-m)";
  } else if (family.is<Veronese>()) {
    report.index_anchor = "Veronese: eta, first-eigenvalue normal/tangent block";
    if (m <= 4) {
      report.warnings.push_back(
          "Veronese m=" + std::to_string(m) +
          ": first-eigenvalue block is indefinite since lambda1 >= x2 for m <= 4; the unconditional claim "
          "'index at least 2m+3' is not reproduced, computed lower bound is m+2 = " +
          std::to_string(index));
    }
  } else if (family.is<VeroneseProjective>()) {
    report.index_anchor = "projective Veronese: only eta is negative among normal fields";
  } else if (family.is<CliffordTorus>()) {
    report.index_anchor = "Clifford torus: only eta is negative among analysed fields";
    report.conjecture = "index 1";
  }

  if (m >= 2) report.gates = gates(m, einstein_constant(family).kappa, lambda1);

  report.tail.lambda_max = lambda_max;
  report.tail.next_eigenvalue = next_eigenvalue_above(family, lambda_max).value;
  report.tail.checks.push_back("lambda_max >= normal threshold " + normal_threshold(m).str());
  if (auto roots = tangent_roots(m, einstein_constant(family).kappa)) {
    report.tail.checks.push_back("lambda_max >= tangent root " + roots->second.str() +
                                 "; the tangent polynomial increases past its vertex");
  } else {
    report.tail.checks.push_back("tangent polynomial has no real roots");
  }
  if (tgi) {
    if (has_vertical(family)) report.tail.checks.push_back("lambda_max >= 2m, vertical form lambda(lambda-2m) >= 0");
    report.tail.checks.push_back("block q_normal and determinant have non-negative coefficients after shifting by " +
                                 report.tail.next_eigenvalue.str());
  } else if (family.is<CliffordTorus>()) {
    report.tail.checks.push_back("vertical form lambda^2+4(l+2)lambda >= 0 for all lambda >= 0");
  }
  return report;
}

}  // namespace bihindex
