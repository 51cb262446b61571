#pragma once

// Verification reports: every closed-form value the oracle can reach on a
// geometry, compared with its numerical counterpart.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bihindex/oracle/oracle.hpp"
#include "bihindex/rational.hpp"
#include "bihindex/spectra.hpp"

namespace bihindex::oracle {

struct VerificationCheck {
  std::string name;
  /// What the expected value is, in words.
  std::string anchor;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// |computed - expected| <= tolerance * max(1, |expected|).
VerificationCheck make_check(std::string name, std::string anchor, double computed, double expected, double tolerance);

struct VerificationOptions {
  GeometryCase geometry = TorusClifford{};
  int grid = 64;
  std::uint64_t seed = 0;
  /// Replaces every check's tolerance when set.
  std::optional<double> tolerance;
  /// Eigenvalues up to this bound are exercised.
  Rational lambda_max{20};
  /// Random tangent fields fed to the identity checks; 0 skips them.
  int identity_fields = 10;
};

struct VerificationReport {
  std::string case_tag;
  std::string family;
  int grid = 0;
  std::uint64_t seed = 0;
  std::vector<VerificationCheck> checks;

  bool passed() const;
  std::size_t failures() const;
};

/// The family whose closed forms describe the geometry.
ManifoldFamily family_of(const GeometryCase& c);

/// A random element of the eigenspace of one eigenvalue.
ScalarField random_eigenfunction(const ExplicitGeometry& g, const Eigenvalue& e, std::mt19937_64& rng);

/// Runs all checks that apply to the geometry.
VerificationReport verify_geometry(const VerificationOptions& options);

/// Subsets used by the acceptance suite.
std::vector<VerificationCheck> formula_agreement_checks(const ExplicitGeometry& g, const Rational& lambda_max,
                                                        std::mt19937_64& rng);
std::vector<VerificationCheck> identity_checks(const ExplicitGeometry& g, int fields, std::mt19937_64& rng);

}  // namespace bihindex::oracle
