#include <gtest/gtest.h>

#include "bihindex/classifier.hpp"
#include "generators.hpp"

namespace bihindex {
namespace {

// Nullity of the inclusion rebuilt by hand from the spectrum of
// S^m(1/sqrt2): eigenvalues 2k(m+k-1), multiplicity from the binomials.
std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t inclusion_nullity_by_sweep(int m, int n) {
  std::uint64_t nullity = 0;
  for (int k = 0; k <= 6; ++k) {
    const std::int64_t lambda = 2LL * k * (m + k - 1);
    const std::uint64_t mult = binom(m + k, k) - binom(m + k - 2, k - 2);
    // Normal/tangent block [[q_n, c], [c, q_t]] with the forms written out.
    const std::int64_t qn = lambda * lambda + 4 * lambda - 4LL * m * m;
    const std::int64_t qt = lambda * (lambda * lambda + 6LL * (2 - m) * lambda + 8LL * (m - 1) * (m - 2));
    const std::int64_t c = -4 * lambda * (lambda + 2 - 2LL * m);
    if (k > 0 && qn * qt - c * c == 0) nullity += mult;
    // Vertical: lambda(lambda - 2m) per direction.
    if (lambda * (lambda - 2 * m) == 0) nullity += mult * static_cast<std::uint64_t>(n - m);
  }
  return nullity + static_cast<std::uint64_t>(m * (m + 1) / 2);
}

TEST(Classify, InclusionSpecExample) {
  const IndexReport r = classify(ManifoldFamily::tgi(2, 3));
  ASSERT_TRUE(r.index_exact.has_value());
  ASSERT_TRUE(r.nullity_exact.has_value());
  EXPECT_EQ(*r.index_exact, 1u);
  EXPECT_EQ(*r.nullity_exact, 10u);
  ASSERT_TRUE(r.nullity_split.has_value());
  EXPECT_EQ(r.nullity_split->first_eigen_kernel, 3u);
  EXPECT_EQ(r.nullity_split->killing, 3u);
  EXPECT_EQ(r.nullity_split->vertical, 4u);
  EXPECT_FALSE(r.index_anchor.empty());
  EXPECT_FALSE(r.nullity_anchor.empty());
}

TEST(Classify, InclusionNullityMatchesHandSweep) {
  for (int m = 1; m <= 12; ++m) {
    for (int n = m; n <= m + 5; ++n) {
      const IndexReport r = classify(ManifoldFamily::tgi(m, n));
      EXPECT_EQ(r.index_exact, std::optional<std::uint64_t>(1)) << m << "," << n;
      EXPECT_EQ(r.nullity_exact, std::optional<std::uint64_t>(inclusion_nullity_by_sweep(m, n))) << m << "," << n;
    }
  }
}

TEST(Classify, VeroneseSpecExample) {
  const IndexReport r = classify(ManifoldFamily::veronese(5));
  EXPECT_EQ(r.index_lower_bound, 13u);
  EXPECT_FALSE(r.index_exact.has_value());
  EXPECT_EQ(r.nullity_lower_bound, 15u);
}

TEST(Classify, VeroneseLowDimensionsCarryConflictWarning) {
  for (int m = 2; m <= 4; ++m) {
    const IndexReport r = classify(ManifoldFamily::veronese(m));
    EXPECT_EQ(r.index_lower_bound, static_cast<std::uint64_t>(m + 2)) << m;
    EXPECT_FALSE(r.warnings.empty()) << m;
  }
  for (int m = 5; m <= 20; ++m) {
    EXPECT_EQ(classify(ManifoldFamily::veronese(m)).index_lower_bound, static_cast<std::uint64_t>(2 * m + 3)) << m;
  }
}

TEST(Classify, ProjectiveVeroneseSpecExample) {
  const IndexReport r = classify(ManifoldFamily::veronese_projective(3));
  EXPECT_EQ(r.index_lower_bound, 1u);
  EXPECT_EQ(r.contribution(Subbundle::normal).negative_count, 1u);
}

TEST(Classify, CliffordReportsConjectureWithoutAssertingIt) {
  for (int l = 1; l <= 25; ++l) {
    const IndexReport r = classify(ManifoldFamily::clifford(l));
    EXPECT_EQ(r.index_lower_bound, 1u);
    EXPECT_FALSE(r.index_exact.has_value());
    EXPECT_TRUE(r.conjecture.has_value());
    EXPECT_GE(r.nullity_lower_bound, static_cast<std::uint64_t>(l * (l + 1)));
    EXPECT_EQ(r.contribution(Subbundle::tangent).negative_count, 0u) << l;
    EXPECT_EQ(r.contribution(Subbundle::vertical).negative_count, 0u) << l;
    for (const auto& a : r.contribution(Subbundle::vertical).eigen_attribution) {
      EXPECT_GE(a.form_value.sign(), 0);
    }
  }
}

TEST(Classify, NormalContributionPattern) {
  for (int m = 2; m <= 30; ++m) {
    EXPECT_EQ(classify(ManifoldFamily::veronese(m)).contribution(Subbundle::normal).negative_count,
              static_cast<std::uint64_t>(m + 2));
    EXPECT_EQ(classify(ManifoldFamily::veronese_projective(m)).contribution(Subbundle::normal).negative_count, 1u);
    EXPECT_EQ(classify(ManifoldFamily::tgi(m, m + 1)).contribution(Subbundle::normal).negative_count, 1u);
  }
}

TEST(Classify, RejectsIdentityAndShortSweeps) {
  EXPECT_THROW((void)classify(ManifoldFamily::identity(3)), std::invalid_argument);
  const ManifoldFamily v = ManifoldFamily::veronese(6);
  EXPECT_THROW((void)classify(v, Rational(0)), std::invalid_argument);
  EXPECT_TRUE(tail_obstruction(v, Rational(0)).has_value());
  EXPECT_FALSE(tail_obstruction(v, minimal_lambda_max(v)).has_value());
}

TEST(Classify, ReportsAreStableUnderLargerCutoffs) {
  std::mt19937_64 rng(testing::kPropertySeed);
  for (int i = 0; i < 60; ++i) {
    const ManifoldFamily f = testing::random_family(rng);
    const IndexReport base = classify(f);
    Rational cut = base.lambda_max;
    for (int step = 0; step < 3; ++step) {
      cut = next_eigenvalue_above(f, cut).value;
      const IndexReport r = classify(f, cut);
      EXPECT_EQ(r.index_exact, base.index_exact) << f.describe();
      EXPECT_EQ(r.index_lower_bound, base.index_lower_bound) << f.describe();
      EXPECT_EQ(r.nullity_exact, base.nullity_exact) << f.describe();
      EXPECT_EQ(r.nullity_lower_bound, base.nullity_lower_bound) << f.describe();
      for (Subbundle s : {Subbundle::normal, Subbundle::tangent, Subbundle::vertical}) {
        EXPECT_EQ(r.contribution(s).negative_count, base.contribution(s).negative_count) << f.describe();
      }
    }
  }
}

TEST(Classify, ReportInvariants) {
  std::mt19937_64 rng(testing::kPropertySeed + 1);
  for (int i = 0; i < 100; ++i) {
    const ManifoldFamily f = testing::random_family(rng);
    const IndexReport r = classify(f);
    EXPECT_GE(r.index_lower_bound, 1u) << f.describe();
    EXPECT_GE(r.nullity_lower_bound, isometry_group_dim(f)) << f.describe();
    if (r.index_exact) EXPECT_EQ(*r.index_exact, r.index_lower_bound);
    if (r.nullity_exact) EXPECT_EQ(*r.nullity_exact, r.nullity_lower_bound);
    for (const auto& c : r.contributions) {
      std::uint64_t negatives = 0;
      for (const auto& a : c.eigen_attribution) {
        if (a.sign == DirectionSign::negative && !a.in_block) negatives += a.multiplicity;
        if (a.sign == DirectionSign::negative || a.sign == DirectionSign::null) {
          EXPECT_EQ(a.kind, FormKind::exact) << "uncertified value counted in " << f.describe();
        }
      }
      EXPECT_LE(negatives, c.negative_count) << f.describe();
    }
  }
}

TEST(TgiNullity, SpecExamples) {
  const NullitySplit a = tgi_nullity(2, 3);
  EXPECT_EQ(a.total, 10u);
  EXPECT_EQ(a.first_eigen_kernel, 3u);
  EXPECT_EQ(a.killing, 3u);
  EXPECT_EQ(a.vertical, 4u);
  // (m+1)(m+2)/2 already holds the Killing part, so (3, 7) is 4 + 6 + 20.
  const NullitySplit b = tgi_nullity(3, 7);
  EXPECT_EQ(b.total, 30u);
  EXPECT_EQ(b.first_eigen_kernel, 4u);
  EXPECT_EQ(b.killing, isometry_group_dim(ManifoldFamily::tgi(3, 7)));
  EXPECT_EQ(b.vertical, 20u);
  for (int m = 1; m <= 10; ++m) {
    EXPECT_EQ(tgi_nullity(m, m).vertical, 0u);
    EXPECT_EQ(tgi_nullity(m, m).total, static_cast<std::uint64_t>((m + 1) * (m + 2) / 2));
  }
  EXPECT_THROW((void)tgi_nullity(4, 3), std::invalid_argument);
}

TEST(TgiNullity, ExcessOverIsometries) {
  for (int m = 1; m <= 30; ++m) {
    for (int n = m; n <= 30; ++n) {
      const std::uint64_t excess = tgi_nullity(m, n).total - isometry_group_dim(ManifoldFamily::tgi(m, n));
      EXPECT_EQ(excess, static_cast<std::uint64_t>((m + 1) + (m + 2) * (n - m)));
    }
  }
}

TEST(IdentityNullity, SpecExamples) {
  EXPECT_EQ(identity_nullity(2), 6u);
  EXPECT_EQ(identity_nullity(3), 6u);
  EXPECT_EQ(identity_nullity(5), 15u);
  EXPECT_THROW((void)identity_nullity(1), std::invalid_argument);
}

}  // namespace
}  // namespace bihindex
