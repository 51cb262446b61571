#pragma once

// Index and nullity reports assembled from the spectra and the reduced
// quadratic forms. Counts are split by sub-bundle; every eigenvalue swept is
// listed with its multiplicity and the sign of its form.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bihindex/quadforms.hpp"
#include "bihindex/rational.hpp"
#include "bihindex/spectra.hpp"

namespace bihindex {

/// negative / null count towards index / nullity; nonnegative means a
/// lower bound >= 0 (no index contribution, nothing else known);
/// uncertified means a negative lower bound or an unproved zero.
enum class DirectionSign { negative, null, positive, nonnegative, uncertified };

std::string to_string(DirectionSign s);

struct EigenAttribution {
  Rational eigenvalue;
  std::uint64_t multiplicity = 0;
  Rational form_value;
  FormKind kind = FormKind::exact;
  DirectionSign sign = DirectionSign::positive;
  /// Part of a normal/tangent block at this eigenvalue; the block decides
  /// the index contribution.
  bool in_block = false;
};

struct SubBundleContribution {
  Subbundle subbundle = Subbundle::normal;
  std::uint64_t negative_count = 0;
  std::uint64_t null_count = 0;
  /// False when any swept direction of this sub-bundle is uncertified or the
  /// sub-bundle is not analysed at all.
  bool certified = true;
  std::vector<EigenAttribution> eigen_attribution;
  std::vector<std::string> notes;
};

struct BlockNote {
  Rational eigenvalue;
  std::uint64_t multiplicity = 0;
  Rational q_normal;
  Rational q_tangent;
  Rational cross;
  BlockClassification classification;
  bool null_certified = false;
  std::string anchor;
};

/// Why no eigenvalue above lambda_max can change any count.
struct TailCertificate {
  Rational lambda_max;
  Rational next_eigenvalue;
  std::vector<std::string> checks;
};

struct NullitySplit {
  std::uint64_t total = 0;
  /// Kernel 2 f eta + dphi(grad f) at the first eigenvalue.
  std::uint64_t first_eigen_kernel = 0;
  /// Killing fields.
  std::uint64_t killing = 0;
  /// Constants and first eigenfunctions in each vertical direction.
  std::uint64_t vertical = 0;
};

struct IndexReport {
  explicit IndexReport(ManifoldFamily f) : family(std::move(f)) {}

  ManifoldFamily family;
  Rational lambda_max;
  std::optional<std::uint64_t> index_exact;
  std::uint64_t index_lower_bound = 0;
  std::optional<std::uint64_t> nullity_exact;
  std::uint64_t nullity_lower_bound = 0;
  std::array<SubBundleContribution, 3> contributions;
  std::vector<BlockNote> cross_block_notes;
  std::optional<NullitySplit> nullity_split;
  std::optional<GateReport> gates;
  std::optional<std::string> conjecture;
  std::vector<std::string> warnings;
  TailCertificate tail;
  std::string index_anchor;
  std::string nullity_anchor;

  const SubBundleContribution& contribution(Subbundle s) const {
    return contributions[static_cast<std::size_t>(s)];
  }
};

/// Empty when every eigenvalue above lambda_max is certified not to change
/// the report, otherwise the first violated condition.
std::optional<std::string> tail_obstruction(const ManifoldFamily& family, const Rational& lambda_max);

/// Smallest eigenvalue that is an admissible lambda_max.
Rational minimal_lambda_max(const ManifoldFamily& family);

/// Throws std::invalid_argument for the identity map or an inadmissible
/// lambda_max (see tail_obstruction).
IndexReport classify(const ManifoldFamily& family, const Rational& lambda_max);
IndexReport classify(const ManifoldFamily& family);

/// Number of eigenfunctions (with multiplicity) below lambda_max whose
/// normal form is negative.
std::uint64_t normal_negative_count(const ManifoldFamily& family, const Rational& lambda_max);

NullitySplit tgi_nullity(int m, int n);

/// Nullity of the identity map of S^n: 6 for n = 2, n(n+1)/2 for n >= 3.
std::uint64_t identity_nullity(int n);

}  // namespace bihindex
