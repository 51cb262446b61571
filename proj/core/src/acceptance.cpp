#include "bihindex/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bihindex/classifier.hpp"
#include "bihindex/oracle/verify.hpp"
#include "bihindex/quadforms.hpp"
#include "bihindex/spectra.hpp"

namespace bihindex {
namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

// 1. Totally geodesic inclusions: index 1 and the closed-form nullity.
void tgi_exactness(Outcome& out, std::uint64_t) {
  const IndexReport r = classify(ManifoldFamily::tgi(2, 3));
  const bool split_ok = r.nullity_split && r.nullity_split->first_eigen_kernel == 3 && r.nullity_split->killing == 3 &&
                        r.nullity_split->vertical == 4;
  out.require(r.index_exact == 1u && r.nullity_exact == 10u && split_ok, "tgi m=2 n=3");
  int pairs = 0;
  for (int m = 1; m <= 20; ++m) {
    for (int n = m; n <= 20; ++n) {
      const IndexReport q = classify(ManifoldFamily::tgi(m, n));
      const auto expected = static_cast<std::uint64_t>((m + 1) * (m + 2) / 2 + (m + 2) * (n - m));
      out.require(q.index_exact == 1u && q.nullity_exact == expected,
                  "tgi m=" + std::to_string(m) + " n=" + std::to_string(n));
      ++pairs;
    }
  }
  out.detail << "tgi(2,3): index " << r.index_exact.value_or(0) << ", nullity " << r.nullity_exact.value_or(0);
  if (r.nullity_split) {
    out.detail << " = " << r.nullity_split->first_eigen_kernel << "+" << r.nullity_split->killing << "+"
               << r.nullity_split->vertical;
  }
  out.detail << "; " << pairs << " (m,n) pairs";
}

// Number of levels (with multiplicity) among the first `levels` whose normal
// form is negative, and whether they are exactly the first `expected_levels`.
bool normal_pattern(const ManifoldFamily& family, int expected_levels, std::uint64_t expected_count) {
  const int m = family.domain_dimension();
  const Spectrum spectrum = family_spectrum(family, next_eigenvalue_above(family, first_nonzero_eigenvalue(family).value).value * 4);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const bool negative = normal_negative(m, spectrum[i].value);
    if (negative != (static_cast<int>(i) < expected_levels)) return false;
    if (negative) count += spectrum[i].multiplicity;
  }
  const Rational cut = spectrum[static_cast<std::size_t>(expected_levels)].value;
  return count == expected_count && normal_negative_count(family, cut) == expected_count;
}

// 2. Normal threshold table.
void normal_thresholds(Outcome& out, std::uint64_t) {
  for (int m = 2; m <= 30; ++m) {
    out.require(normal_pattern(ManifoldFamily::veronese(m), 2, static_cast<std::uint64_t>(m + 2)),
                "veronese m=" + std::to_string(m));
    out.require(normal_pattern(ManifoldFamily::veronese_projective(m), 1, 1), "veronese-proj m=" + std::to_string(m));
  }
  for (int l = 1; l <= 15; ++l) out.require(normal_pattern(ManifoldFamily::clifford(l), 1, 1), "clifford l=" + std::to_string(l));
  out.detail << "veronese m=2..30 count m+2; veronese-proj m=2..30 and clifford l=1..15 count 1";
}

// 3. Clifford torus sign flip at the first eigenvalue.
void clifford_sign_flip(Outcome& out, std::uint64_t) {
  int flip = 0;
  for (int l = 1; l <= 25; ++l) {
    const ManifoldFamily family = ManifoldFamily::clifford(l);
    const int m = 2 * l;
    const Rational lambda1 = first_nonzero_eigenvalue(family).value;
    const Rational p = tangent_polynomial(m, einstein_constant(family).kappa)(lambda1);
    out.require(lambda1 == Rational(2 * m) && p == Rational(64 - 8 * m), "P(2m) at l=" + std::to_string(l));
    out.require((p.sign() >= 0) == (m <= 8), "sign at m=" + std::to_string(m));
    if (p.sign() >= 0) flip = m;
    const FormValue refined = tangent_form(family, lambda1, true);
    out.require(refined.value == Rational(16 * m * (m + 8)) && refined.value.sign() > 0,
                "refinement at m=" + std::to_string(m));
  }
  out.detail << "P(lambda1) >= 0 up to m=" << flip << ", refinement 16m(m+8) > 0 for even m <= 50";
}

// 4. Veronese tangent roots.
void veronese_roots(Outcome& out, std::uint64_t) {
  std::ostringstream above;
  for (int m = 2; m <= 30; ++m) {
    const ManifoldFamily family = ManifoldFamily::veronese(m);
    const auto closed = veronese_tangent_roots(m);
    const auto generic = tangent_roots(m, einstein_constant(family).kappa);
    out.require(generic.has_value() && generic->second.compare(Rational(0)) == closed.second.compare(Rational(0)),
                "root routes at m=" + std::to_string(m));
    const QuadraticSurd& x2 = closed.second;
    const Rational lambda1 = first_nonzero_eigenvalue(family).value;
    const bool ge = lambda1 >= x2;
    out.require(ge == (m <= 4), "lambda1 vs x2 at m=" + std::to_string(m));
    if (ge) above << (above.tellp() > 0 ? "," : "") << m;
    for (int k = 2; k <= 6; ++k) {
      out.require(sphere_level(m, Rational(m + 1, m), k).value >= x2,
                  "lambda_" + std::to_string(k) + " vs x2 at m=" + std::to_string(m));
    }
  }
  const IndexReport r5 = classify(ManifoldFamily::veronese(5));
  out.require(r5.index_lower_bound == 13, "index lower bound at m=5");
  out.detail << "lambda1 >= x2 for m in {" << above.str() << "}; index lower bound at m=5: " << r5.index_lower_bound;
}

// 5. First-eigenvalue block of the inclusion.
void lambda1_block(Outcome& out, std::uint64_t) {
  for (int m = 1; m <= 50; ++m) {
    const ManifoldFamily family = ManifoldFamily::tgi(m, m);
    const Rational lambda1(2 * m);
    out.require(first_nonzero_eigenvalue(family).value == lambda1, "lambda1 at m=" + std::to_string(m));
    const BlockClassification b = block_definiteness(normal_form(m, lambda1).value, tangent_form(family, lambda1).value,
                                                     cross_term(family, lambda1));
    out.require(b.kind == Definiteness::positive_semidefinite_with_kernel && b.determinant.is_zero() && b.kernel &&
                    *b.kernel == KernelDirection{BigInt(2), BigInt(1)},
                "block at m=" + std::to_string(m));
  }
  out.detail << "m=1..50: positive semidefinite, determinant 0, kernel (2,1)";
}

std::string first_failed(const std::vector<oracle::VerificationCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return c.name;
  }
  return {};
}

// 6. Numerical oracle against the closed forms at grid 128.
void oracle_agreement(Outcome& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t total = 0;
  for (const oracle::GeometryCase& c : {oracle::GeometryCase{oracle::CircleInclusion{2}}, oracle::GeometryCase{oracle::TorusClifford{}}}) {
    const oracle::ExplicitGeometry g = oracle::build_geometry(c, 128);
    const auto checks = oracle::formula_agreement_checks(g, Rational(20), rng);
    const std::string failed = first_failed(checks);
    out.require(failed.empty(), g.tag() + ": " + failed);
    total += checks.size();
  }
  out.detail << total << " checks on circle and torus at grid 128";
}

// 7. Identities over random tangent fields.
void identity_suite(Outcome& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t total = 0;
  for (const oracle::GeometryCase& c : {oracle::GeometryCase{oracle::CircleInclusion{1}}, oracle::GeometryCase{oracle::TorusClifford{}}}) {
    const oracle::ExplicitGeometry g = oracle::build_geometry(c, 64);
    const auto checks = oracle::identity_checks(g, 100, rng);
    const std::string failed = first_failed(checks);
    out.require(failed.empty(), g.tag() + ": " + failed);
    total += checks.size();
  }
  out.detail << total << " identity checks, 100 seeded fields each, seed " << seed;
}

// 8. Nullity of the identity map.
void identity_nullity_values(Outcome& out, std::uint64_t) {
  const std::uint64_t expected[] = {6, 6, 10, 15};
  for (int n = 2; n <= 5; ++n) {
    const std::uint64_t got = identity_nullity(n);
    out.require(got == expected[n - 2], "n=" + std::to_string(n));
    out.detail << (n > 2 ? ", " : "") << "n=" << n << ": " << got;
  }
}

struct Criterion {
  const char* title;
  double budget;
  void (*run)(Outcome&, std::uint64_t);
};

const Criterion kCriteria[kCriterionCount] = {
    {"totally geodesic inclusion: index 1 and exact nullity", 1.0, tgi_exactness},
    {"normal threshold table", 1.0, normal_thresholds},
    {"Clifford torus tangent sign flip", 0.0, clifford_sign_flip},
    {"Veronese tangent roots", 0.0, veronese_roots},
    {"first-eigenvalue block singularity", 0.0, lambda1_block},
    {"oracle agrees with the closed forms", 10.0, oracle_agreement},
    {"identity suite on random fields", 0.0, identity_suite},
    {"identity map nullity", 0.0, identity_nullity_values},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id must be in 1.." + std::to_string(kCriterionCount));
  const Criterion& c = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.title = c.title;
  result.budget_seconds = c.budget;

  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(out, seed);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = c.budget <= 0.0 || result.seconds < c.budget;
  result.pass = out.pass && in_time;
  result.detail = out.detail.str();
  if (!out.pass) result.detail += (result.detail.empty() ? "" : "; ") + std::string("failed: ") + out.first_failure;
  if (!in_time) result.detail += "; over the time budget";
  return result;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace bihindex
