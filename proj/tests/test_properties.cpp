#include <gtest/gtest.h>

#include "bihindex/classifier.hpp"
#include "bihindex/quadforms.hpp"
#include "bihindex/spectra.hpp"
#include "generators.hpp"

namespace bihindex {
namespace {

using testing::kPropertyCases;
using testing::kPropertySeed;

TEST(Property, NormalSignMatchesPredicate) {
  std::mt19937_64 rng(kPropertySeed);
  for (int i = 0; i < 5 * kPropertyCases; ++i) {
    const int m = testing::uniform_int(rng, 1, 60);
    const Rational lambda = testing::random_nonnegative_rational(rng, 20000, 97);
    EXPECT_EQ(normal_form(m, lambda).value.sign() < 0, normal_negative(m, lambda)) << m << " " << lambda.str();
  }
}

TEST(Property, SpectrumListingIsAPrefixOfLongerListings) {
  std::mt19937_64 rng(kPropertySeed + 1);
  for (int i = 0; i < kPropertyCases; ++i) {
    const ManifoldFamily f = testing::random_family(rng);
    const Rational small = testing::random_nonnegative_rational(rng, 300, 3);
    const Rational large = small + testing::random_nonnegative_rational(rng, 300, 3);
    const Spectrum a = family_spectrum(f, small);
    const Spectrum b = family_spectrum(f, large);
    ASSERT_LE(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].value, b[k].value);
      EXPECT_EQ(a[k].multiplicity, b[k].multiplicity);
      if (k > 0) EXPECT_LT(a[k - 1].value, a[k].value);
      EXPECT_LE(a[k].value, small);
    }
    if (!a.empty()) EXPECT_EQ(a.front().multiplicity, 1u);
  }
}

TEST(Property, BlockClassificationIsSymmetricAndScaleInvariant) {
  std::mt19937_64 rng(kPropertySeed + 2);
  const auto flip = [](Definiteness d) {
    switch (d) {
      case Definiteness::positive_definite: return Definiteness::negative_definite;
      case Definiteness::negative_definite: return Definiteness::positive_definite;
      case Definiteness::positive_semidefinite_with_kernel: return Definiteness::negative_semidefinite_with_kernel;
      case Definiteness::negative_semidefinite_with_kernel: return Definiteness::positive_semidefinite_with_kernel;
      default: return d;
    }
  };
  for (int i = 0; i < 3 * kPropertyCases; ++i) {
    const Rational a = testing::random_rational(rng, 40, 6);
    const Rational c = i % 3 == 0 ? Rational(0) : testing::random_rational(rng, 40, 6);
    const Rational b = i % 4 == 0 ? Rational(0) : testing::random_rational(rng, 40, 6);
    Rational s = testing::random_rational(rng, 9, 4);
    if (s.is_zero()) s = Rational(1);
    const BlockClassification base = block_definiteness(a, c, b);
    EXPECT_EQ(block_definiteness(c, a, b).kind, base.kind);
    EXPECT_EQ(block_definiteness(a, c, -b).kind, base.kind);
    const BlockClassification scaled = block_definiteness(a * s, c * s, b * s);
    EXPECT_EQ(scaled.kind, s.sign() > 0 ? base.kind : flip(base.kind));
    EXPECT_EQ(scaled.kernel, base.kernel);
  }
}

TEST(Property, TangentPolynomialIncreasesPastItsLargerRoot) {
  std::mt19937_64 rng(kPropertySeed + 3);
  for (int i = 0; i < kPropertyCases; ++i) {
    const int m = testing::uniform_int(rng, 1, 40);
    const Rational kappa = testing::random_nonnegative_rational(rng, 200, 7);
    const auto roots = tangent_roots(m, kappa);
    const RationalPolynomial p = tangent_polynomial(m, kappa);
    if (!roots) {
      // Complex roots: P has no real zero and is positive everywhere.
      EXPECT_GT(p(testing::random_rational(rng)).sign(), 0);
      continue;
    }
    const Rational x = testing::random_nonnegative_rational(rng, 400, 7);
    const Rational y = x + testing::random_nonnegative_rational(rng, 50, 7) + Rational(1, 100);
    if (roots->second < x) {
      EXPECT_GT(p(x).sign(), 0);
      EXPECT_LT(p(x), p(y));
    } else if (roots->first < x && x < roots->second) {
      EXPECT_LT(p(x).sign(), 0);
    }
  }
}

// Observed pattern: on Einstein domains the cross term at the first
// eigenvalue equals -4 lambda (lambda - kappa). It holds for the inclusion at
// every eigenvalue (kappa = 2(m-1)) and for the Veronese family at lambda1.
TEST(Property, CrossTermFollowsEinsteinPattern) {
  for (int m = 1; m <= 40; ++m) {
    const ManifoldFamily tgi = ManifoldFamily::tgi(m, m);
    const Rational kappa = einstein_constant(tgi).kappa;
    for (const auto& e : family_spectrum(tgi, Rational(400))) {
      EXPECT_EQ(cross_term(tgi, e.value), -4 * e.value * (e.value - kappa));
    }
    if (m >= 2) {
      const ManifoldFamily v = ManifoldFamily::veronese(m);
      const Rational l1 = first_nonzero_eigenvalue(v).value;
      EXPECT_EQ(cross_term(v, l1), -4 * l1 * (l1 - einstein_constant(v).kappa)) << m;
    }
  }
}

// At the first eigenvalue of the inclusion the block is singular along
// 2 f eta + dphi(grad f) and positive in the other direction.
TEST(Property, InclusionBlockKernelAtFirstEigenvalue) {
  for (int m = 1; m <= 60; ++m) {
    const ManifoldFamily f = ManifoldFamily::tgi(m, m);
    const Rational l1(2 * m);
    const Rational qn = normal_form(m, l1).value;
    const Rational qt = tangent_form(f, l1).value;
    const Rational c = cross_term(f, l1);
    EXPECT_EQ(qn, Rational(8 * m));
    EXPECT_EQ(qt, Rational(32 * m));
    EXPECT_EQ(c, Rational(-16 * m));
    // Quadratic form at (2, 1).
    EXPECT_EQ(4 * qn + 4 * c + qt, Rational(0));
  }
}

TEST(Property, ClassifyIsDeterministic) {
  std::mt19937_64 rng(kPropertySeed + 4);
  for (int i = 0; i < 40; ++i) {
    const ManifoldFamily f = testing::random_family(rng);
    const IndexReport a = classify(f);
    const IndexReport b = classify(f);
    EXPECT_EQ(a.index_lower_bound, b.index_lower_bound);
    EXPECT_EQ(a.nullity_lower_bound, b.nullity_lower_bound);
    EXPECT_EQ(a.lambda_max, b.lambda_max);
    EXPECT_EQ(a.warnings, b.warnings);
  }
}

}  // namespace
}  // namespace bihindex
