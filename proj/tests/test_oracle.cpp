#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bihindex/oracle/oracle.hpp"
#include "generators.hpp"

namespace bihindex::oracle {
namespace {

using std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

TrigPolynomial trig(double coef, int p, int q = 0, bool sin_u = false, bool sin_v = false) {
  return TrigPolynomial{{TrigTerm{coef, p, q, sin_u, sin_v}}};
}

double relative_error(double got, double expected) {
  return std::abs(got - expected) / std::max(1.0, std::abs(expected));
}

class OracleTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    circle_ = new ExplicitGeometry(build_geometry(CircleInclusion{1}, 64));
    circle3_ = new ExplicitGeometry(build_geometry(CircleInclusion{3}, 64));
    torus_ = new ExplicitGeometry(build_geometry(TorusClifford{}, 64));
    sphere_ = new ExplicitGeometry(build_geometry(SphereInclusion{3}, 24));
    veronese_ = new ExplicitGeometry(build_geometry(VeroneseSurface{}, 32));
  }
  static void TearDownTestSuite() {
    for (ExplicitGeometry* g : {circle_, circle3_, torus_, sphere_, veronese_}) delete g;
  }

  static ExplicitGeometry* circle_;
  static ExplicitGeometry* circle3_;
  static ExplicitGeometry* torus_;
  static ExplicitGeometry* sphere_;
  static ExplicitGeometry* veronese_;
};

ExplicitGeometry* OracleTest::circle_ = nullptr;
ExplicitGeometry* OracleTest::circle3_ = nullptr;
ExplicitGeometry* OracleTest::torus_ = nullptr;
ExplicitGeometry* OracleTest::sphere_ = nullptr;
ExplicitGeometry* OracleTest::veronese_ = nullptr;

TEST_F(OracleTest, CircleParametrisation) {
  const auto& g = *circle_;
  EXPECT_EQ(g.m(), 1);
  EXPECT_EQ(g.ambient_dim(), 3);
  for (std::size_t i = 0; i < g.nodes(); i += 7) {
    const double t = g.parameters()[i][0];
    EXPECT_NEAR(g.phi().comp[0][i], std::cos(t) / kSqrt2, 1e-15);
    EXPECT_NEAR(g.phi().comp[1][i], std::sin(t) / kSqrt2, 1e-15);
    EXPECT_NEAR(g.phi().comp[2][i], 1 / kSqrt2, 1e-15);
  }
  EXPECT_NEAR(g.volume(), 2 * pi / kSqrt2, 1e-12);
}

TEST_F(OracleTest, TorusParametrisationAndShapeOperator) {
  const auto& g = *torus_;
  EXPECT_EQ(g.m(), 2);
  for (std::size_t i = 0; i < g.nodes(); i += 131) {
    const auto [u, v] = g.parameters()[i];
    const double expected[] = {std::cos(u) / 2, std::sin(u) / 2, std::cos(v) / 2, std::sin(v) / 2, 1 / kSqrt2};
    for (int a = 0; a < 5; ++a) EXPECT_NEAR(g.phi().comp[a][i], expected[a], 1e-15);
    // xi = sqrt2 (p, -p') with p, p' the two circle factors.
    EXPECT_NEAR(g.xi().comp[0][i], kSqrt2 * std::cos(u) / 2, 1e-15);
    EXPECT_NEAR(g.xi().comp[2][i], -kSqrt2 * std::cos(v) / 2, 1e-15);
  }
  const auto shape = g.shape_operator_xi();
  ASSERT_TRUE(shape.has_value());
  EXPECT_NEAR((*shape)[0], -kSqrt2, 1e-15);
  EXPECT_NEAR((*shape)[1], kSqrt2, 1e-15);
}

TEST_F(OracleTest, RadiiAtEveryNode) {
  for (const ExplicitGeometry* g : {circle_, torus_, sphere_, veronese_}) {
    for (std::size_t i = 0; i < g->nodes(); ++i) {
      double psi2 = 0.0, phi2 = 0.0;
      for (const auto& c : g->psi().comp) psi2 += c[i] * c[i];
      for (const auto& c : g->phi().comp) phi2 += c[i] * c[i];
      ASSERT_NEAR(std::sqrt(psi2), 1 / kSqrt2, 1e-12) << g->tag() << " node " << i;
      ASSERT_NEAR(std::sqrt(phi2), 1.0, 1e-12) << g->tag() << " node " << i;
    }
  }
}

TEST_F(OracleTest, BiharmonicityResiduals) {
  const BiharmonicityResiduals c = biharmonicity_residuals(*circle_);
  EXPECT_LE(c.energy_density, 1e-12);
  EXPECT_LE(c.tension, 1e-10);
  EXPECT_LE(c.bitension, 1e-10);
  const BiharmonicityResiduals t = biharmonicity_residuals(*torus_);
  EXPECT_LE(t.energy_density, 1e-10);
  EXPECT_LE(t.tension, 1e-10);
  EXPECT_LE(t.bitension, 1e-10);
  EXPECT_LE(biharmonicity_residuals(*sphere_).tension, 1e-6);
  const BiharmonicityResiduals v = biharmonicity_residuals(*veronese_);
  EXPECT_LE(v.energy_density, 1e-10);
  EXPECT_LE(v.tension, 1e-6);
  EXPECT_LE(v.bitension, 1e-6);
}

// (I(V),V) against closed forms times an analytically integrated f^2.
TEST_F(OracleTest, CircleNormalSectionSpecExample) {
  const ScalarField f = trig(1.0, 2);
  EXPECT_NEAR(integral_of_square(*circle_, f), pi / kSqrt2, 1e-12);
  const double got = quadform_numeric(*circle_, normal_section(*circle_, f));
  EXPECT_LE(relative_error(got, 92 * pi / kSqrt2), 1e-8) << got;
}

TEST_F(OracleTest, TorusVerticalSectionSpecExample) {
  const ScalarField f = trig(1.0, 1);
  EXPECT_NEAR(integral_of_square(*torus_, f), pi * pi / 2, 1e-12);
  const double got = quadform_numeric(*torus_, vertical_section(*torus_, f));
  EXPECT_LE(relative_error(got, 64 * pi * pi / 2), 1e-8) << got;
}

TEST_F(OracleTest, ZeroSectionGivesZero) {
  const ScalarField zero = trig(0.0, 1);
  EXPECT_EQ(quadform_numeric(*circle_, normal_section(*circle_, zero)), 0.0);
  EXPECT_EQ(quadform_numeric(*torus_, vertical_section(*torus_, zero)), 0.0);
}

// Sphere cases: integral of y0^2 over S^2(R) is 4 pi R^4 / 3.
TEST_F(OracleTest, SphereInclusionForms) {
  const ScalarField f = harmonic_polynomial(1);
  const double f2 = pi / 3;  // R = 1/sqrt2
  EXPECT_LE(relative_error(integral_of_square(*sphere_, f), f2), 1e-12);
  EXPECT_LE(relative_error(quadform_numeric(*sphere_, normal_section(*sphere_, f)), 16 * f2), 1e-5);
  EXPECT_LE(relative_error(quadform_numeric(*sphere_, gradient_section(*sphere_, f)), 64 * f2), 1e-5);
  EXPECT_LE(relative_error(quadform_numeric(*sphere_, vertical_section(*sphere_, f)), 0.0), 1e-5);
}

TEST_F(OracleTest, VeroneseFirstEigenvalueForms) {
  const ScalarField f = harmonic_polynomial(1);
  const double f2 = 3 * pi;  // R^2 = 3/2
  EXPECT_LE(relative_error(integral_of_square(*veronese_, f), f2), 1e-12);
  EXPECT_LE(relative_error(quadform_numeric(*veronese_, normal_section(*veronese_, f)), -80.0 / 9 * f2), 1e-5);
  EXPECT_LE(relative_error(quadform_numeric(*veronese_, gradient_section(*veronese_, f)), 64.0 / 9 * f2), 1e-5);
  // Harmonicity kills the dropped term at the first eigenvalue.
  EXPECT_LE(std::abs(dropped_tangent_term(*veronese_, f)), 1e-8);
}

TEST_F(OracleTest, CircleCrossTermSpecExample) {
  const ScalarField f = trig(1.0, 1);
  const double cross = bilinear(*circle_, normal_section(*circle_, f), gradient_section(*circle_, f));
  EXPECT_LE(relative_error(cross / integral_of_square(*circle_, f), -16.0), 1e-9);
}

TEST_F(OracleTest, KillingFieldIsInTheKernel) {
  const DiscretizedSection v = tangent_section(*torus_, {trig(1.0, 0), TrigPolynomial{}});
  const DiscretizedSection iv = full_second_variation(*torus_, v);
  double worst = 0.0;
  for (const auto& c : iv.values.comp) {
    for (double x : c) worst = std::max(worst, std::abs(x));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST_F(OracleTest, FirstEigenvalueKernelDirection) {
  const ScalarField f = trig(1.0, 1, 0, true);
  const DiscretizedSection v =
      combine(2.0, normal_section(*circle_, f), 1.0, gradient_section(*circle_, f));
  EXPECT_EQ(v.tag, BundleTag::mixed);
  const DiscretizedSection iv = full_second_variation(*circle_, v);
  double worst = 0.0;
  for (const auto& c : iv.values.comp) {
    for (double x : c) worst = std::max(worst, std::abs(x));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST_F(OracleTest, FullOperatorMatchesIntegratedForms) {
  const ScalarField f = trig(0.7, 2, 1, false, true);
  for (const DiscretizedSection& v : {normal_section(*torus_, f), gradient_section(*torus_, f),
                                      vertical_section(*torus_, f)}) {
    const double literal = bilinear(*torus_, v, v);
    EXPECT_LE(relative_error(literal, quadform_numeric(*torus_, v)), 1e-8) << to_string(v.tag);
  }
}

TEST_F(OracleTest, SecondVariationIsSelfAdjoint) {
  std::mt19937_64 rng(testing::kPropertySeed);
  for (int i = 0; i < 6; ++i) {
    const ExplicitGeometry& g = i % 2 ? *torus_ : *circle3_;
    const int dims = g.parameter_dims();
    const DiscretizedSection v = combine(1.0, normal_section(g, random_trig_polynomial(rng, dims, 3)), 1.0,
                                         tangent_section(g, random_tangent_field(g, rng, 3)));
    const DiscretizedSection w = combine(1.0, vertical_section(g, random_trig_polynomial(rng, dims, 3)), 0.5,
                                         gradient_section(g, random_trig_polynomial(rng, dims, 2)));
    const double vw = bilinear(g, v, w);
    const double wv = bilinear(g, w, v);
    EXPECT_LE(std::abs(vw - wv), 1e-9 * std::max(1.0, std::abs(vw))) << g.tag() << " " << vw << " " << wv;
  }
}

TEST_F(OracleTest, IdentitySpecExamples) {
  std::mt19937_64 rng(testing::kPropertySeed + 1);
  const IdentityResiduals random = identity_residuals(*torus_, random_tangent_field(*torus_, rng, 3));
  EXPECT_LE(random.yano, 1e-10);
  // grad(cos u) = g^{uu} d_u cos u = -4 sin u d/du.
  const IdentityResiduals gradient = identity_residuals(*torus_, {trig(-4.0, 1, 0, true), TrigPolynomial{}});
  EXPECT_LE(gradient.bochner, 1e-10);
  const IdentityResiduals circle = identity_residuals(*circle_, random_tangent_field(*circle_, rng, 3));
  EXPECT_LE(circle.jacobi, 1e-10);
  EXPECT_LE(circle.jacobi_decomposition, 1e-8);
  EXPECT_GE(circle.killing_bound_margin, -1e-10);
  EXPECT_GE(random.killing_bound_margin, -1e-10);
}

TEST_F(OracleTest, DroppedTermOnTorusAtFirstEigenvalue) {
  const ScalarField f = trig(1.0, 1);
  const double m = 2;
  EXPECT_LE(relative_error(dropped_tangent_term(*torus_, f) / integral_of_square(*torus_, f), 32 * m * m), 1e-10);
  // Pointwise: 4|tr nabla dpsi(nabla_. X, .)|^2 = 32 m^2 f^2.
  const Samples density = dropped_tangent_density(*torus_, f);
  const Samples values = sample(*torus_, f);
  for (std::size_t i = 0; i < density.size(); i += 97) EXPECT_NEAR(density[i], 32 * m * m * values[i] * values[i], 1e-9);
}

TEST_F(OracleTest, KillingDimension) {
  EXPECT_EQ(killing_dimension(*circle_), 1);
  EXPECT_EQ(killing_dimension(*torus_), 2);
}

TEST_F(OracleTest, FirstVariationOfEnergy) {
  std::mt19937_64 rng(testing::kPropertySeed + 2);
  const DiscretizedSection v = combine(1.0, normal_section(*torus_, random_trig_polynomial(rng, 2, 2)), 1.0,
                                       vertical_section(*torus_, random_trig_polynomial(rng, 2, 2)));
  EXPECT_LE(first_variation_error(*torus_, v), 1e-4);
}

TEST_F(OracleTest, GridRefinementIsExactForTrigonometricData) {
  const ExplicitGeometry fine = build_geometry(TorusClifford{}, 128);
  const ScalarField f = trig(1.3, 3, 2, true, false);
  const double coarse_value = quadform_numeric(*torus_, gradient_section(*torus_, f));
  const double fine_value = quadform_numeric(fine, gradient_section(fine, f));
  EXPECT_LE(relative_error(coarse_value, fine_value), 1e-10);
}

TEST_F(OracleTest, SectionValidation) {
  const ScalarField f = trig(1.0, 2);
  DiscretizedSection mislabelled = gradient_section(*circle_, f);
  EXPECT_NO_THROW(validate_section(*circle_, mislabelled));
  mislabelled.tag = BundleTag::normal;
  EXPECT_THROW(validate_section(*circle_, mislabelled), std::domain_error);
  DiscretizedSection radial = normal_section(*circle_, f);
  radial.values = circle_->phi();
  EXPECT_THROW(validate_section(*circle_, radial), std::domain_error);
}

TEST(Oracle, AliasingIsSignalled) {
  const ExplicitGeometry coarse = build_geometry(TorusClifford{}, 32);
  const DiscretizedSection v = normal_section(coarse, trig(1.0, 4));
  EXPECT_THROW((void)full_second_variation(coarse, v), std::domain_error);
}

TEST(Oracle, RejectsBadResolutions) {
  EXPECT_THROW((void)build_geometry(TorusClifford{}, 24), std::invalid_argument);
  EXPECT_THROW((void)build_geometry(CircleInclusion{1}, 8), std::invalid_argument);
  EXPECT_THROW((void)build_geometry(VeroneseSurface{}, 4), std::invalid_argument);
  EXPECT_THROW((void)build_geometry(CircleInclusion{0}, 32), std::invalid_argument);
  EXPECT_THROW((void)build_geometry(SphereInclusion{1}, 16), std::invalid_argument);
}

}  // namespace
}  // namespace bihindex::oracle
