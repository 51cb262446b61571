#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "bihindex/quadforms.hpp"
#include "generators.hpp"

namespace bihindex {
namespace {

using Float100 = boost::multiprecision::cpp_dec_float_100;
using testing::kPropertyCases;
using testing::kPropertySeed;

Float100 to_float(const Rational& q) { return Float100(q.numerator()) / Float100(q.denominator()); }

TEST(NormalForm, SpecExamples) {
  EXPECT_EQ(normal_form(2, Rational(0)).value, Rational(-16));
  EXPECT_EQ(normal_form(2, Rational(4, 3)).value, Rational(-80, 9));
  EXPECT_EQ(normal_form(2, Rational(4)).value, Rational(16));
  EXPECT_EQ(normal_form(2, Rational(4)).kind, FormKind::exact);
  EXPECT_EQ(normal_form(2, Rational(4)).subbundle, Subbundle::normal);
}

TEST(NormalNegative, SpecExamples) {
  for (int l = 1; l <= 50; ++l) EXPECT_FALSE(normal_negative(2 * l, Rational(4 * l)));
  EXPECT_TRUE(normal_negative(5, Rational(0)));
  EXPECT_TRUE(normal_negative(2, Rational(4, 3)));
}

TEST(NormalNegative, ThresholdAgreesWithHighPrecisionRoot) {
  std::mt19937_64 rng(kPropertySeed);
  for (int i = 0; i < kPropertyCases; ++i) {
    const int m = testing::uniform_int(rng, 1, 40);
    const Rational lambda = testing::random_nonnegative_rational(rng, 4000, 50);
    const Float100 root = 2 * (boost::multiprecision::sqrt(Float100(m * m + 1)) - 1);
    EXPECT_EQ(normal_negative(m, lambda), to_float(lambda) < root) << m << " " << lambda.str();
    EXPECT_EQ(normal_threshold(m).compare(lambda) > 0, normal_negative(m, lambda));
  }
}

TEST(TangentForm, SpecExamples) {
  const FormValue a = tangent_form(ManifoldFamily::tgi(2, 3), Rational(4));
  EXPECT_EQ(a.value, Rational(64));
  EXPECT_EQ(a.kind, FormKind::exact);
  const FormValue b = tangent_form(ManifoldFamily::clifford(4), Rational(16));
  EXPECT_EQ(b.value, Rational(0));
  EXPECT_EQ(b.kind, FormKind::lower_bound);
  const FormValue c = tangent_form(ManifoldFamily::clifford(5), Rational(20), true);
  EXPECT_EQ(c.value, Rational(2880));
  EXPECT_EQ(c.kind, FormKind::exact);
}

TEST(TangentForm, KindRules) {
  const ManifoldFamily v = ManifoldFamily::veronese(3);
  const Rational l1 = first_nonzero_eigenvalue(v).value;
  EXPECT_EQ(tangent_form(v, l1).kind, FormKind::exact);
  EXPECT_EQ(tangent_form(v, next_eigenvalue_above(v, l1).value).kind, FormKind::lower_bound);
  EXPECT_EQ(tangent_form(ManifoldFamily::veronese_projective(3), Rational(6)).kind, FormKind::lower_bound);
  EXPECT_EQ(tangent_form(ManifoldFamily::clifford(2), Rational(8)).kind, FormKind::lower_bound);
  EXPECT_EQ(tangent_form(ManifoldFamily::tgi(4, 6), Rational(36)).kind, FormKind::exact);
}

TEST(TangentForm, Rejections) {
  EXPECT_THROW((void)tangent_form(ManifoldFamily::identity(3), Rational(0)), std::invalid_argument);
  EXPECT_THROW((void)tangent_form(ManifoldFamily::clifford(1), Rational(8), true), std::invalid_argument);
  EXPECT_THROW((void)tangent_form(ManifoldFamily::tgi(2, 2), Rational(5)), std::invalid_argument);
}

// The two specialised polynomials quoted for the inclusion (kappa = 2(m-1))
// and the Clifford torus (kappa = 2m-4) against the general one.
TEST(TangentPolynomial, SpecialisationsMatchCoefficientwise) {
  for (int m = 1; m <= 100; ++m) {
    const RationalPolynomial inclusion{Rational(8 * (m - 1) * (m - 2)), Rational(6 * (2 - m)), Rational(1)};
    EXPECT_EQ(tangent_polynomial(m, Rational(2 * (m - 1))), inclusion) << m;
    const RationalPolynomial clifford{Rational(8 * m * m - 48 * m + 64), Rational(2 * (10 - 3 * m)), Rational(1)};
    EXPECT_EQ(tangent_polynomial(m, Rational(2 * m - 4)), clifford) << m;
  }
}

TEST(TangentRoots, VeroneseSpecExamples) {
  const auto [x1_5, x2_5] = veronese_tangent_roots(5);
  EXPECT_EQ(x2_5.a(), Rational(-1, 3));
  EXPECT_EQ(x2_5.d(), Rational(67, 3));
  EXPECT_LT(Rational(25, 6), x2_5);
  EXPECT_GE(Rational(16, 5), veronese_tangent_roots(4).second);
  EXPECT_GE(Rational(4), veronese_tangent_roots(2).second);
  EXPECT_THROW((void)veronese_tangent_roots(1), std::invalid_argument);
}

TEST(TangentRoots, ClosedFormMatchesGenericDiscriminantRoute) {
  for (int m = 2; m <= 60; ++m) {
    const auto closed = veronese_tangent_roots(m);
    const auto generic = tangent_roots(m, Rational(m * (m - 1), m + 1));
    ASSERT_TRUE(generic.has_value());
    // Both routes are exact; compare via a 100-digit evaluation.
    const auto value = [](const QuadraticSurd& s) {
      return to_float(s.a()) + to_float(s.b()) * boost::multiprecision::sqrt(to_float(s.d()));
    };
    EXPECT_LT(abs(value(closed.first) - value(generic->first)), Float100("1e-80")) << m;
    EXPECT_LT(abs(value(closed.second) - value(generic->second)), Float100("1e-80")) << m;
  }
}

TEST(TangentRoots, VeroneseFirstEigenvalueBelowRootExactlyFromDimensionFive) {
  for (int m = 2; m <= 60; ++m) {
    const ManifoldFamily v = ManifoldFamily::veronese(m);
    const Rational l1 = first_nonzero_eigenvalue(v).value;
    EXPECT_EQ(l1 < veronese_tangent_roots(m).second, m >= 5) << m;
    EXPECT_EQ(tangent_form(v, l1).value.sign() < 0, m >= 5) << m;
    for (int k = 2; k <= 10; ++k) {
      EXPECT_GE(sphere_level(m, Rational(m + 1, m), k).value, veronese_tangent_roots(m).second);
    }
  }
}

TEST(VerticalForm, SpecExamples) {
  EXPECT_EQ(vertical_form(ManifoldFamily::tgi(2, 3), Rational(4)).value, Rational(0));
  EXPECT_EQ(vertical_form(ManifoldFamily::clifford(1), Rational(0)).value, Rational(0));
  EXPECT_EQ(vertical_form(ManifoldFamily::clifford(1), Rational(4)).value, Rational(64));
  EXPECT_THROW((void)vertical_form(ManifoldFamily::tgi(2, 2), Rational(4)), std::invalid_argument);
  EXPECT_THROW((void)vertical_form(ManifoldFamily::veronese(2), Rational(4, 3)), std::invalid_argument);
  EXPECT_THROW((void)vertical_form(ManifoldFamily::veronese_projective(2), Rational(4)), std::invalid_argument);
}

TEST(CrossTerm, SpecExamples) {
  EXPECT_EQ(cross_term(ManifoldFamily::tgi(2, 2), Rational(0)), Rational(0));
  EXPECT_EQ(cross_term(ManifoldFamily::tgi(2, 2), Rational(4)), Rational(-32));
  EXPECT_EQ(cross_term(ManifoldFamily::veronese(2), Rational(4, 3)), Rational(-32, 9));
  EXPECT_THROW((void)cross_term(ManifoldFamily::veronese(2), Rational(4)), std::invalid_argument);
  EXPECT_THROW((void)cross_term(ManifoldFamily::clifford(1), Rational(4)), std::invalid_argument);
}

TEST(CrossTerm, OrthogonalEigenfunctionsPairToZero) {
  const ManifoldFamily v = ManifoldFamily::veronese(3);
  const Rational l1 = first_nonzero_eigenvalue(v).value;
  const Rational l2 = next_eigenvalue_above(v, l1).value;
  EXPECT_EQ(cross_term(v, l1, l2), Rational(0));
  EXPECT_EQ(cross_term(v, l1, l1), cross_term(v, l1));
  EXPECT_THROW((void)cross_term(v, l1, Rational(1)), std::invalid_argument);
}

// Independent classification from 100-digit eigenvalues of the 2x2 block.
Definiteness classify_by_eigenvalues(const Rational& a, const Rational& c, const Rational& b) {
  const Float100 fa = to_float(a), fb = to_float(b), fc = to_float(c);
  const Float100 mean = (fa + fc) / 2;
  const Float100 radius = boost::multiprecision::sqrt((fa - fc) * (fa - fc) / 4 + fb * fb);
  const Float100 eps("1e-60");
  const auto sign = [&](const Float100& x) { return x > eps ? 1 : (x < -eps ? -1 : 0); };
  const int lo = sign(mean - radius), hi = sign(mean + radius);
  if (lo == 0 && hi == 0) return Definiteness::zero;
  if (lo > 0) return Definiteness::positive_definite;
  if (hi < 0) return Definiteness::negative_definite;
  if (lo == 0) return Definiteness::positive_semidefinite_with_kernel;
  if (hi == 0) return Definiteness::negative_semidefinite_with_kernel;
  return Definiteness::indefinite;
}

TEST(BlockDefiniteness, SpecExamples) {
  for (int m = 1; m <= 50; ++m) {
    const BlockClassification b = block_definiteness(Rational(8 * m), Rational(32 * m), Rational(-16 * m));
    EXPECT_EQ(b.kind, Definiteness::positive_semidefinite_with_kernel);
    ASSERT_TRUE(b.kernel.has_value());
    EXPECT_EQ(*b.kernel, (KernelDirection{BigInt(2), BigInt(1)}));
  }
  EXPECT_EQ(block_definiteness(Rational(176), Rational(1728), Rational(-480)).kind, Definiteness::positive_definite);
  EXPECT_EQ(block_definiteness(Rational(176), Rational(1728), Rational(-480)).determinant, Rational(73728));
}

// Veronese m = 2 at the first eigenvalue: the normal entry is negative and
// the tangent entry positive, so the block is indefinite.
TEST(BlockDefiniteness, VeroneseSurfaceAtFirstEigenvalue) {
  const ManifoldFamily v = ManifoldFamily::veronese(2);
  const Rational l1(4, 3);
  const Rational qn = normal_form(2, l1).value;
  const Rational qt = tangent_form(v, l1).value;
  EXPECT_EQ(qn, Rational(-80, 9));
  EXPECT_EQ(qt, Rational(64, 9));
  EXPECT_EQ(block_definiteness(qn, qt, cross_term(v, l1)).kind, Definiteness::indefinite);
}

TEST(BlockDefiniteness, VeroneseNegativeDefiniteFromDimensionFive) {
  for (int m = 5; m <= 30; ++m) {
    const ManifoldFamily v = ManifoldFamily::veronese(m);
    const Rational l1 = first_nonzero_eigenvalue(v).value;
    const BlockClassification b =
        block_definiteness(normal_form(m, l1).value, tangent_form(v, l1).value, cross_term(v, l1));
    EXPECT_EQ(b.kind, Definiteness::negative_definite) << m;
  }
}

TEST(BlockDefiniteness, AgreesWithEigenvalueClassification) {
  std::mt19937_64 rng(kPropertySeed);
  for (int i = 0; i < 5 * kPropertyCases; ++i) {
    Rational a = testing::random_rational(rng, 30, 4);
    Rational c = testing::random_rational(rng, 30, 4);
    Rational b = testing::random_rational(rng, 30, 4);
    // Force singular and zero blocks regularly.
    if (i % 5 == 0) c = b * b / (a.is_zero() ? Rational(1) : a);
    if (i % 50 == 0) a = b = c = Rational(0);
    const BlockClassification got = block_definiteness(a, c, b);
    EXPECT_EQ(got.kind, classify_by_eigenvalues(a, c, b)) << a.str() << " " << c.str() << " " << b.str();
    EXPECT_EQ(got.negative_dims + got.null_dims + got.positive_dims, 2);
    if (got.kernel) {
      // The kernel vector is annihilated by the block.
      const Rational x(got.kernel->normal, BigInt(1)), y(got.kernel->tangent, BigInt(1));
      EXPECT_EQ(a * x + b * y, Rational(0));
      EXPECT_EQ(b * x + c * y, Rational(0));
    }
  }
}

TEST(Gates, SpecExamples) {
  EXPECT_TRUE(gates(2, Rational(2), Rational(4)).lichnerowicz_pass);
  EXPECT_TRUE(gates(4, Rational(4), Rational(8)).identity_stable);
  EXPECT_FALSE(gates(6, Rational(8), Rational(12)).identity_stable);
  EXPECT_THROW((void)gates(1, Rational(0), Rational(2)), std::invalid_argument);
}

TEST(Gates, FlagsReproducibleFromInputs) {
  std::mt19937_64 rng(kPropertySeed + 3);
  for (int i = 0; i < kPropertyCases; ++i) {
    const int m = testing::uniform_int(rng, 2, 30);
    const Rational kappa = testing::random_nonnegative_rational(rng, 400, 9);
    const Rational lambda1 = Rational(testing::uniform_int(rng, 1, 400), testing::uniform_int(rng, 1, 9));
    const GateReport g = gates(m, kappa, lambda1);
    const Float100 threshold =
        Float100(2 * (m - 1)) / m * (boost::multiprecision::sqrt(Float100(m * m + 1)) - 1);
    EXPECT_EQ(g.lichnerowicz_pass, to_float(kappa) >= threshold);
    EXPECT_EQ(g.einstein_pass, kappa * 8 >= Rational((m + 2) * (m + 2)));
    EXPECT_EQ(g.lambda1_pass, lambda1 * 4 >= Rational(m * m));
    EXPECT_EQ(g.identity_stable, kappa * 2 <= lambda1);
  }
}

TEST(CliffordRefinement, PositiveInEveryDimension) {
  for (int l = 1; l <= 25; ++l) {
    const int m = 2 * l;
    const FormValue f = tangent_form(ManifoldFamily::clifford(l), Rational(2 * m), true);
    EXPECT_EQ(f.value, Rational(16 * m * (m + 8)));
    EXPECT_GT(f.value.sign(), 0);
  }
}

}  // namespace
}  // namespace bihindex
