#pragma once

// JSON renderings of the reports. Exact values are {num, den} integer
// pairs, surds are (a, b, d) triples of those; only oracle measurements are floats.

#include "json.hpp"

#include "bihindex/acceptance.hpp"
#include "bihindex/classifier.hpp"
#include "bihindex/oracle/verify.hpp"
#include "bihindex/quadforms.hpp"
#include "bihindex/spectra.hpp"

namespace bihindex::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const BigInt& value);
Json to_json(const Rational& value);
Json to_json(const QuadraticSurd& value);
Json to_json(const ManifoldFamily& family);
Json to_json(const Eigenvalue& e);
Json to_json(const FormValue& f);
Json to_json(const BlockClassification& b);
Json to_json(const GateReport& g);
Json to_json(const IndexReport& r);
Json to_json(const oracle::VerificationCheck& c);
Json to_json(const oracle::VerificationReport& r);
/// Wall-clock time is left out so that reports stay byte-identical.
Json to_json(const CriterionResult& c);

/// Inverse of to_json(Rational); throws std::invalid_argument.
Rational rational_from_json(const Json& j);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace bihindex::cli
