#include "serialize.hpp"

#include <limits>
#include <stdexcept>

namespace bihindex::cli {

Json to_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return Json(value.convert_to<std::int64_t>());
  }
  return Json(value.str());
}

Json to_json(const Rational& value) {
  Json j;
  j["num"] = to_json(value.numerator());
  j["den"] = to_json(value.denominator());
  return j;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw std::invalid_argument("rational: expected an object with num and den");
  }
  const auto part = [](const Json& v) {
    if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
    if (v.is_string()) return BigInt(v.get<std::string>());
    throw std::invalid_argument("rational: num and den must be integers");
  };
  return Rational(part(j["num"]), part(j["den"]));
}

Json to_json(const QuadraticSurd& value) {
  Json j;
  j["a"] = to_json(value.a());
  j["b"] = to_json(value.b());
  j["d"] = to_json(value.d());
  j["text"] = value.str();
  return j;
}

Json to_json(const ManifoldFamily& family) {
  Json j;
  j["tag"] = family.tag();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TotallyGeodesicInclusion>) {
          j["m"] = f.m;
          j["n"] = f.n;
        } else if constexpr (std::is_same_v<T, CliffordTorus>) {
          j["l"] = f.l;
        } else if constexpr (std::is_same_v<T, IdentityMap>) {
          j["n"] = f.n;
        } else {
          j["m"] = f.m;
        }
      },
      family.kind());
  j["domain_dimension"] = family.domain_dimension();
  j["target_dimension"] = family.target_dimension();
  j["describe"] = family.describe();
  return j;
}

Json to_json(const Eigenvalue& e) {
  Json j;
  j["eigenvalue"] = to_json(e.value);
  j["level"] = level_string(e.level);
  j["multiplicity"] = e.multiplicity;
  return j;
}

Json to_json(const FormValue& f) {
  Json j;
  j["subbundle"] = to_string(f.subbundle);
  j["value"] = to_json(f.value);
  j["kind"] = to_string(f.kind);
  j["anchor"] = f.anchor;
  return j;
}

Json to_json(const BlockClassification& b) {
  Json j;
  j["kind"] = to_string(b.kind);
  j["determinant"] = to_json(b.determinant);
  if (b.kernel) {
    j["kernel"] = Json::array({to_json(b.kernel->normal), to_json(b.kernel->tangent)});
  } else {
    j["kernel"] = nullptr;
  }
  j["negative_dims"] = b.negative_dims;
  j["null_dims"] = b.null_dims;
  j["positive_dims"] = b.positive_dims;
  return j;
}

Json to_json(const GateReport& g) {
  Json j;
  j["lichnerowicz_pass"] = g.lichnerowicz_pass;
  j["einstein_pass"] = g.einstein_pass;
  j["lambda1_pass"] = g.lambda1_pass;
  j["identity_stable"] = g.identity_stable;
  j["kappa_threshold"] = to_json(g.kappa_threshold);
  return j;
}

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return Json(*v);
}

Json contribution_json(const SubBundleContribution& c) {
  Json j;
  j["subbundle"] = to_string(c.subbundle);
  j["negative_count"] = c.negative_count;
  j["null_count"] = c.null_count;
  j["certified"] = c.certified;
  Json rows = Json::array();
  for (const auto& a : c.eigen_attribution) {
    Json row;
    row["eigenvalue"] = to_json(a.eigenvalue);
    row["multiplicity"] = a.multiplicity;
    row["form_value"] = to_json(a.form_value);
    row["kind"] = to_string(a.kind);
    row["sign"] = to_string(a.sign);
    row["in_block"] = a.in_block;
    rows.push_back(std::move(row));
  }
  j["eigen_attribution"] = std::move(rows);
  j["notes"] = c.notes;
  return j;
}

}  // namespace

Json to_json(const IndexReport& r) {
  Json j;
  j["family"] = to_json(r.family);
  j["lambda_max"] = to_json(r.lambda_max);
  j["index_exact"] = optional_json(r.index_exact);
  j["index_lower_bound"] = r.index_lower_bound;
  j["nullity_exact"] = optional_json(r.nullity_exact);
  j["nullity_lower_bound"] = r.nullity_lower_bound;
  j["index_anchor"] = r.index_anchor;
  j["nullity_anchor"] = r.nullity_anchor;
  Json contributions = Json::array();
  for (const auto& c : r.contributions) contributions.push_back(contribution_json(c));
  j["contributions"] = std::move(contributions);
  Json blocks = Json::array();
  for (const auto& b : r.cross_block_notes) {
    Json row;
    row["eigenvalue"] = to_json(b.eigenvalue);
    row["multiplicity"] = b.multiplicity;
    row["q_normal"] = to_json(b.q_normal);
    row["q_tangent"] = to_json(b.q_tangent);
    row["cross"] = to_json(b.cross);
    row["classification"] = to_json(b.classification);
    row["null_certified"] = b.null_certified;
    row["anchor"] = b.anchor;
    blocks.push_back(std::move(row));
  }
  j["blocks"] = std::move(blocks);
  if (r.nullity_split) {
    j["nullity_split"] = {{"total", r.nullity_split->total},
                          {"first_eigen_kernel", r.nullity_split->first_eigen_kernel},
                          {"killing", r.nullity_split->killing},
                          {"vertical", r.nullity_split->vertical}};
  } else {
    j["nullity_split"] = nullptr;
  }
  j["gates"] = r.gates ? to_json(*r.gates) : Json(nullptr);
  j["conjecture"] = optional_json(r.conjecture);
  j["warnings"] = r.warnings;
  j["tail"] = {{"lambda_max", to_json(r.tail.lambda_max)},
               {"next_eigenvalue", to_json(r.tail.next_eigenvalue)},
               {"checks", r.tail.checks}};
  return j;
}

Json to_json(const oracle::VerificationCheck& c) {
  Json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["computed"] = c.computed;
  j["expected"] = c.expected;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  return j;
}

Json to_json(const oracle::VerificationReport& r) {
  Json j;
  j["case"] = r.case_tag;
  j["family"] = r.family;
  j["grid"] = r.grid;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  j["failures"] = r.failures();
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  return j;
}

Json to_json(const CriterionResult& c) {
  Json j;
  j["id"] = c.id;
  j["title"] = c.title;
  j["pass"] = c.pass;
  j["detail"] = c.detail;
  j["budget_seconds"] = c.budget_seconds;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bihindex::cli
