#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "serialize.hpp"

namespace bihindex::cli {

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::spectrum: return "spectrum";
    case Subcommand::quadform: return "quadform";
    case Subcommand::classify: return "classify";
    case Subcommand::verify: return "verify";
    case Subcommand::report: return "report";
  }
  return "unknown";
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::text: return "text";
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
  }
  return "unknown";
}

namespace {

// ---------------------------------------------------------------- parsing

const std::map<std::string, OutputFormat> kFormats{
    {"text", OutputFormat::text}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};
const std::vector<std::string> kFamilies{"tgi", "veronese", "veronese-proj", "clifford", "identity"};
const std::vector<std::string> kCases{"circle", "torus", "sphere", "veronese"};
const std::vector<std::string> kSubbundles{"normal", "tangent", "vertical", "cross", "all"};

template <class T>
CLI::Option* add_optional(CLI::App* app, const std::string& flag, std::optional<T>& target, const std::string& help) {
  return app->add_option_function<T>(flag, [&target](const T& v) { target = v; }, help);
}

void add_family_options(CLI::App* app, CommandRequest& r) {
  app->add_option_function<std::string>("--family", [&r](const std::string& v) { r.family = v; },
                                        "tgi, veronese, veronese-proj, clifford or identity")
      ->required()
      ->check(CLI::IsMember(kFamilies));
  add_optional(app, "--m", r.m, "domain dimension (tgi, veronese, veronese-proj)");
  add_optional(app, "--n", r.n, "target dimension (tgi) or sphere dimension (identity)");
  add_optional(app, "--l", r.l, "factor dimension (clifford)");
}

void add_output_options(CLI::App* app, CommandRequest& r) {
  app->add_option("--format", r.format, "text, json or csv")->transform(CLI::CheckedTransformer(kFormats).description(""))->type_name("{text,json,csv}");
  add_optional(app, "--output", r.output, "write the report to this file instead of stdout");
}

// ------------------------------------------------------------- validation

bool uses(Subcommand s, std::initializer_list<Subcommand> allowed) {
  for (Subcommand a : allowed) {
    if (a == s) return true;
  }
  return false;
}

template <class T>
void reject_unless(const std::optional<T>& value, bool allowed, const std::string& flag, const std::string& context) {
  if (value && !allowed) throw UsageError(flag + " does not apply to " + context);
}

void validate_flags(const CommandRequest& r) {
  using S = Subcommand;
  const S s = r.subcommand;
  const std::string name = to_string(s);
  const bool family_command = uses(s, {S::spectrum, S::quadform, S::classify});
  reject_unless(r.family, family_command, "--family", name);
  reject_unless(r.m, family_command, "--m", name);
  reject_unless(r.n, family_command || s == S::verify, "--n", name);
  reject_unless(r.l, family_command, "--l", name);
  reject_unless(r.lambda_max, uses(s, {S::spectrum, S::classify, S::verify}), "--lambda-max", name);
  reject_unless(r.lambda, s == S::quadform, "--lambda", name);
  reject_unless(r.subbundle, s == S::quadform, "--subbundle", name);
  if (r.refine && s != S::quadform) throw UsageError("--refine does not apply to " + name);
  reject_unless(r.seed, uses(s, {S::verify, S::report}), "--seed", name);
  reject_unless(r.tolerance, s == S::verify, "--tolerance", name);
  reject_unless(r.grid, s == S::verify, "--grid", name);
  reject_unless(r.geometry, s == S::verify, "--case", name);
  reject_unless(r.identity_fields, s == S::verify, "--identity-fields", name);
  if (family_command && !r.family) throw UsageError(name + " requires --family");
  if (s == S::spectrum && !r.lambda_max) throw UsageError("spectrum requires --lambda-max");
  if (s == S::quadform && !r.lambda) throw UsageError("quadform requires --lambda");
  if (s == S::verify && !r.geometry) throw UsageError("verify requires --case");
}

int require_int(const std::optional<int>& v, const std::string& flag, const std::string& family) {
  if (!v) throw UsageError("family " + family + " requires " + flag);
  return *v;
}

ManifoldFamily family_from(const CommandRequest& r) {
  const std::string& tag = *r.family;
  const auto build = [&](auto make) {
    try {
      return make();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  };
  if (tag == "tgi") {
    reject_unless(r.l, false, "--l", "family tgi");
    const int m = require_int(r.m, "--m", tag);
    const int n = require_int(r.n, "--n", tag);
    return build([&] { return ManifoldFamily::tgi(m, n); });
  }
  if (tag == "veronese" || tag == "veronese-proj") {
    reject_unless(r.n, false, "--n", "family " + tag);
    reject_unless(r.l, false, "--l", "family " + tag);
    const int m = require_int(r.m, "--m", tag);
    return build([&] { return tag == "veronese" ? ManifoldFamily::veronese(m) : ManifoldFamily::veronese_projective(m); });
  }
  if (tag == "clifford") {
    reject_unless(r.m, false, "--m", "family clifford");
    reject_unless(r.n, false, "--n", "family clifford");
    const int l = require_int(r.l, "--l", tag);
    return build([&] { return ManifoldFamily::clifford(l); });
  }
  if (tag == "identity") {
    reject_unless(r.m, false, "--m", "family identity");
    reject_unless(r.l, false, "--l", "family identity");
    const int n = require_int(r.n, "--n", tag);
    return build([&] { return ManifoldFamily::identity(n); });
  }
  throw UsageError("unknown family '" + tag + "'");
}

Rational rational_flag(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

oracle::GeometryCase geometry_from(const CommandRequest& r) {
  const std::string& tag = *r.geometry;
  if (tag == "circle") return oracle::CircleInclusion{r.n.value_or(1)};
  if (tag == "sphere") return oracle::SphereInclusion{r.n.value_or(2)};
  reject_unless(r.n, false, "--n", "case " + tag);
  if (tag == "torus") return oracle::TorusClifford{};
  if (tag == "veronese") return oracle::VeroneseSurface{};
  throw UsageError("unknown case '" + tag + "'");
}

// -------------------------------------------------------------- rendering

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string fmt_double(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

/// Fixed-width text table; the last column is not padded.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << row[i];
        if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
      }
      os << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

Json envelope(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string optional_count(const std::optional<std::uint64_t>& exact, std::uint64_t lower) {
  return exact ? std::to_string(*exact) + " (exact)" : ">= " + std::to_string(lower);
}

// ---------------------------------------------------------------- commands

int run_spectrum(const CommandRequest& r, std::ostream& out) {
  const ManifoldFamily family = family_from(r);
  const Rational lambda_max = rational_flag(*r.lambda_max, "--lambda-max");
  if (lambda_max.sign() < 0) throw UsageError("--lambda-max must be >= 0");
  const Spectrum spectrum = family_spectrum(family, lambda_max);

  switch (r.format) {
    case OutputFormat::json: {
      Json j = envelope("spectrum");
      j["family"] = to_json(family);
      j["lambda_max"] = to_json(lambda_max);
      Json rows = Json::array();
      for (const auto& e : spectrum) rows.push_back(to_json(e));
      j["eigenvalues"] = std::move(rows);
      out << dump(j);
      break;
    }
    case OutputFormat::csv:
      out << "value_num,value_den,level,multiplicity\n";
      for (const auto& e : spectrum) {
        out << e.value.numerator() << ',' << e.value.denominator() << ',' << csv_field(level_string(e.level)) << ','
            << e.multiplicity << '\n';
      }
      break;
    case OutputFormat::text: {
      out << family.describe() << ", eigenvalues <= " << lambda_max.str() << '\n';
      Table t({"value", "level", "multiplicity"});
      for (const auto& e : spectrum) t.add({e.value.str(), level_string(e.level), std::to_string(e.multiplicity)});
      t.print(out);
      break;
    }
  }
  return kExitOk;
}

struct QuadformResult {
  std::vector<FormValue> forms;
  std::optional<Rational> cross;
  std::optional<BlockClassification> block;
};

bool has_vertical(const ManifoldFamily& f) {
  if (f.is<CliffordTorus>()) return true;
  if (!f.is<TotallyGeodesicInclusion>()) return false;
  const auto& t = f.as<TotallyGeodesicInclusion>();
  return t.m < t.n;
}

bool has_cross(const ManifoldFamily& f, const Rational& lambda) {
  return f.is<TotallyGeodesicInclusion>() || (f.is<Veronese>() && lambda == first_nonzero_eigenvalue(f).value);
}

int run_quadform(const CommandRequest& r, std::ostream& out) {
  const ManifoldFamily family = family_from(r);
  if (family.is<IdentityMap>()) throw UsageError("quadform: the identity map has no reduced forms");
  const Rational lambda = rational_flag(*r.lambda, "--lambda");
  if (!is_eigenvalue(family, lambda)) {
    throw UsageError("--lambda " + lambda.str() + " is not an eigenvalue of " + family.describe());
  }
  const std::string which = r.subbundle.value_or("all");
  if (std::find(kSubbundles.begin(), kSubbundles.end(), which) == kSubbundles.end()) {
    throw UsageError("--subbundle must be one of normal, tangent, vertical, cross, all");
  }
  if (r.refine && (!family.is<CliffordTorus>() || lambda != first_nonzero_eigenvalue(family).value)) {
    throw UsageError("--refine applies only to clifford at its first eigenvalue");
  }
  if (r.refine && which != "tangent" && which != "all") throw UsageError("--refine applies only to the tangent form");
  if (which == "vertical" && !has_vertical(family)) {
    throw UsageError("no vertical form for " + family.describe());
  }
  if (which == "cross" && !has_cross(family, lambda)) {
    throw UsageError("no cross term for " + family.describe() + " at " + lambda.str());
  }

  const int m = family.domain_dimension();
  QuadformResult res;
  const bool all = which == "all";
  if (all || which == "normal") {
    FormValue f = normal_form(m, lambda);
    res.forms.push_back(std::move(f));
  }
  if (all || which == "tangent") res.forms.push_back(tangent_form(family, lambda, r.refine));
  if ((all && has_vertical(family)) || which == "vertical") res.forms.push_back(vertical_form(family, lambda));
  if ((all && has_cross(family, lambda)) || which == "cross") {
    res.cross = cross_term(family, lambda);
    if (all) {
      res.block = block_definiteness(normal_form(m, lambda).value, tangent_form(family, lambda).value, *res.cross);
    }
  }

  switch (r.format) {
    case OutputFormat::json: {
      Json j = envelope("quadform");
      j["family"] = to_json(family);
      j["lambda"] = to_json(lambda);
      Json forms = Json::array();
      for (const auto& f : res.forms) forms.push_back(to_json(f));
      j["forms"] = std::move(forms);
      j["cross"] = res.cross ? to_json(*res.cross) : Json(nullptr);
      j["block"] = res.block ? to_json(*res.block) : Json(nullptr);
      out << dump(j);
      break;
    }
    case OutputFormat::csv:
      out << "subbundle,value_num,value_den,kind,anchor\n";
      for (const auto& f : res.forms) {
        out << to_string(f.subbundle) << ',' << f.value.numerator() << ',' << f.value.denominator() << ','
            << to_string(f.kind) << ',' << csv_field(f.anchor) << '\n';
      }
      if (res.cross) out << "cross," << res.cross->numerator() << ',' << res.cross->denominator() << ",exact,\n";
      break;
    case OutputFormat::text: {
      out << family.describe() << ", lambda = " << lambda.str() << '\n';
      Table t({"form", "value", "kind", "anchor"});
      for (const auto& f : res.forms) t.add({to_string(f.subbundle), f.value.str(), to_string(f.kind), f.anchor});
      if (res.cross) t.add({"cross", res.cross->str(), "exact", ""});
      t.print(out);
      if (res.block) {
        out << "block: " << to_string(res.block->kind) << ", determinant " << res.block->determinant.str();
        if (res.block->kernel) out << ", kernel (" << res.block->kernel->normal << ", " << res.block->kernel->tangent << ")";
        out << '\n';
      }
      break;
    }
  }
  return kExitOk;
}

void print_classify_text(const IndexReport& r, std::ostream& out) {
  out << r.family.describe() << ", swept up to lambda_max " << r.lambda_max.str() << '\n';
  out << "index    " << optional_count(r.index_exact, r.index_lower_bound) << "  [" << r.index_anchor << "]\n";
  out << "nullity  " << optional_count(r.nullity_exact, r.nullity_lower_bound) << "  [" << r.nullity_anchor << "]\n";
  if (r.nullity_split) {
    out << "nullity split: " << r.nullity_split->first_eigen_kernel << " (first-eigenvalue kernel) + "
        << r.nullity_split->killing << " (Killing) + " << r.nullity_split->vertical << " (vertical)\n";
  }
  out << '\n';
  Table t({"subbundle", "eigenvalue", "mult", "form", "kind", "sign", "block"});
  for (const auto& c : r.contributions) {
    for (const auto& a : c.eigen_attribution) {
      t.add({to_string(c.subbundle), a.eigenvalue.str(), std::to_string(a.multiplicity), a.form_value.str(),
             to_string(a.kind), to_string(a.sign), a.in_block ? "yes" : ""});
    }
  }
  t.print(out);
  out << '\n';
  Table s({"subbundle", "negative", "null", "certified"});
  for (const auto& c : r.contributions) {
    s.add({to_string(c.subbundle), std::to_string(c.negative_count), std::to_string(c.null_count),
           c.certified ? "yes" : "no"});
  }
  s.print(out);
  for (const auto& c : r.contributions) {
    for (const auto& note : c.notes) out << "  " << to_string(c.subbundle) << ": " << note << '\n';
  }
  for (const auto& b : r.cross_block_notes) {
    out << "block at " << b.eigenvalue.str() << ": [[" << b.q_normal.str() << ", " << b.cross.str() << "], ["
        << b.cross.str() << ", " << b.q_tangent.str() << "]] " << to_string(b.classification.kind) << "  [" << b.anchor
        << "]\n";
  }
  if (r.gates) {
    out << "gates: lichnerowicz " << (r.gates->lichnerowicz_pass ? "pass" : "fail") << ", einstein "
        << (r.gates->einstein_pass ? "pass" : "fail") << ", lambda1 " << (r.gates->lambda1_pass ? "pass" : "fail")
        << ", identity stable " << (r.gates->identity_stable ? "yes" : "no") << '\n';
  }
  if (r.conjecture) out << "conjecture: " << *r.conjecture << '\n';
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  out << "tail: next eigenvalue " << r.tail.next_eigenvalue.str() << '\n';
  for (const auto& c : r.tail.checks) out << "  " << c << '\n';
}

int run_classify(const CommandRequest& r, std::ostream& out) {
  const ManifoldFamily family = family_from(r);

  if (family.is<IdentityMap>()) {
    if (r.lambda_max) throw UsageError("--lambda-max does not apply to family identity");
    const int n = family.as<IdentityMap>().n;
    const std::uint64_t nullity = identity_nullity(n);
    const std::string anchor = n == 2 ? "identity of S^2: nullity 6" : "identity of S^n: nullity n(n+1)/2";
    switch (r.format) {
      case OutputFormat::json: {
        Json j = envelope("classify");
        j["family"] = to_json(family);
        j["identity_nullity"] = nullity;
        j["nullity_anchor"] = anchor;
        out << dump(j);
        break;
      }
      case OutputFormat::csv:
        out << "n,identity_nullity\n" << n << ',' << nullity << '\n';
        break;
      case OutputFormat::text:
        out << family.describe() << "\nnullity  " << nullity << " (exact)  [" << anchor << "]\n";
        break;
    }
    return kExitOk;
  }

  std::optional<Rational> lambda_max;
  if (r.lambda_max) {
    lambda_max = rational_flag(*r.lambda_max, "--lambda-max");
    if (auto why = tail_obstruction(family, *lambda_max)) {
      throw UsageError("--lambda-max " + lambda_max->str() + " is too small: " + *why + " (minimal admissible value " +
                       minimal_lambda_max(family).str() + ")");
    }
  }
  const IndexReport report = lambda_max ? classify(family, *lambda_max) : classify(family);

  switch (r.format) {
    case OutputFormat::json: {
      Json j = envelope("classify");
      const Json body = to_json(report);
      for (const auto& [key, value] : body.items()) j[key] = value;
      out << dump(j);
      break;
    }
    case OutputFormat::csv:
      out << "subbundle,eigenvalue_num,eigenvalue_den,multiplicity,form_num,form_den,kind,sign,in_block\n";
      for (const auto& c : report.contributions) {
        for (const auto& a : c.eigen_attribution) {
          out << to_string(c.subbundle) << ',' << a.eigenvalue.numerator() << ',' << a.eigenvalue.denominator() << ','
              << a.multiplicity << ',' << a.form_value.numerator() << ',' << a.form_value.denominator() << ','
              << to_string(a.kind) << ',' << to_string(a.sign) << ',' << (a.in_block ? 1 : 0) << '\n';
        }
      }
      break;
    case OutputFormat::text:
      print_classify_text(report, out);
      break;
  }
  return kExitOk;
}

int run_verify(const CommandRequest& r, std::ostream& out) {
  oracle::VerificationOptions options;
  options.geometry = geometry_from(r);
  if (r.grid) options.grid = *r.grid;
  if (r.seed) options.seed = *r.seed;
  if (r.tolerance) {
    if (!(*r.tolerance > 0.0)) throw UsageError("--tolerance must be > 0");
    options.tolerance = r.tolerance;
  }
  if (r.lambda_max) {
    options.lambda_max = rational_flag(*r.lambda_max, "--lambda-max");
    if (options.lambda_max.sign() < 0) throw UsageError("--lambda-max must be >= 0");
  }
  if (r.identity_fields) {
    if (*r.identity_fields < 0) throw UsageError("--identity-fields must be >= 0");
    options.identity_fields = *r.identity_fields;
  }
  const oracle::VerificationReport report = oracle::verify_geometry(options);

  switch (r.format) {
    case OutputFormat::json: {
      Json j = envelope("verify");
      const Json body = to_json(report);
      for (const auto& [key, value] : body.items()) j[key] = value;
      out << dump(j);
      break;
    }
    case OutputFormat::csv:
      out << "name,anchor,computed,expected,tolerance,pass\n";
      for (const auto& c : report.checks) {
        out << csv_field(c.name) << ',' << csv_field(c.anchor) << ',' << fmt_double(c.computed, 17) << ','
            << fmt_double(c.expected, 17) << ',' << fmt_double(c.tolerance, 17) << ',' << (c.pass ? 1 : 0) << '\n';
      }
      break;
    case OutputFormat::text: {
      out << report.case_tag << " (" << report.family << "), grid " << report.grid << ", seed " << report.seed << '\n';
      Table t({"", "check", "computed", "expected", "tolerance"});
      for (const auto& c : report.checks) {
        t.add({c.pass ? "PASS" : "FAIL", c.name, fmt_double(c.computed, 12), fmt_double(c.expected, 12),
               fmt_double(c.tolerance, 3)});
      }
      t.print(out);
      out << report.checks.size() - report.failures() << "/" << report.checks.size() << " checks passed\n";
      break;
    }
  }
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int run_report(const CommandRequest& r, std::ostream& out) {
  const std::uint64_t seed = r.seed.value_or(0);
  const std::vector<CriterionResult> results = run_acceptance(seed);
  bool all = true;
  for (const auto& c : results) all = all && c.pass;

  switch (r.format) {
    case OutputFormat::json: {
      Json j = envelope("report");
      j["seed"] = seed;
      j["passed"] = all;
      Json rows = Json::array();
      for (const auto& c : results) rows.push_back(to_json(c));
      j["criteria"] = std::move(rows);
      out << dump(j);
      break;
    }
    case OutputFormat::csv:
      out << "id,title,pass,seconds,budget_seconds,detail\n";
      for (const auto& c : results) {
        out << c.id << ',' << csv_field(c.title) << ',' << (c.pass ? 1 : 0) << ',' << fmt_double(c.seconds, 6) << ','
            << fmt_double(c.budget_seconds, 6) << ',' << csv_field(c.detail) << '\n';
      }
      break;
    case OutputFormat::text:
      for (const auto& c : results) {
        out << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << " (" << std::fixed
            << std::setprecision(3) << c.seconds << " s)\n"
            << std::defaultfloat << "      " << c.detail << '\n';
      }
      out << (all ? "all criteria passed" : "some criteria failed") << '\n';
      break;
  }
  return all ? kExitOk : kExitCheckFailed;
}

int dispatch(const CommandRequest& r, std::ostream& out) {
  switch (r.subcommand) {
    case Subcommand::spectrum: return run_spectrum(r, out);
    case Subcommand::quadform: return run_quadform(r, out);
    case Subcommand::classify: return run_classify(r, out);
    case Subcommand::verify: return run_verify(r, out);
    case Subcommand::report: return run_report(r, out);
  }
  return kExitInternal;
}

std::filesystem::path output_path(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

}  // namespace

std::variant<CommandRequest, HelpText> parse(int argc, const char* const* argv) {
  CommandRequest r;
  CLI::App app{"Second-variation index and nullity of biharmonic maps into spheres", "bihindex"};
  app.require_subcommand(1);

  CLI::App* spectrum = app.add_subcommand("spectrum", "list Laplace eigenvalues of a family's domain");
  add_family_options(spectrum, r);
  add_optional(spectrum, "--lambda-max", r.lambda_max, "largest eigenvalue to list, \"p/q\"");
  add_output_options(spectrum, r);

  CLI::App* quadform = app.add_subcommand("quadform", "evaluate the reduced quadratic forms at one eigenvalue");
  add_family_options(quadform, r);
  add_optional(quadform, "--lambda", r.lambda, "eigenvalue, \"p/q\"");
  add_optional(quadform, "--subbundle", r.subbundle, "normal, tangent, vertical, cross or all (default)");
  quadform->add_flag("--refine", r.refine, "use the exact Clifford first-eigenvalue tangent value");
  add_output_options(quadform, r);

  CLI::App* classify_cmd = app.add_subcommand("classify", "index and nullity report");
  add_family_options(classify_cmd, r);
  add_optional(classify_cmd, "--lambda-max", r.lambda_max, "sweep cutoff, \"p/q\" (default: smallest admissible)");
  add_output_options(classify_cmd, r);

  CLI::App* verify = app.add_subcommand("verify", "check the closed forms against an explicit discretised map");
  add_optional(verify, "--case", r.geometry, "circle, torus, sphere or veronese")->required()->check(CLI::IsMember(kCases));
  add_optional(verify, "--n", r.n, "target dimension for circle and sphere");
  add_optional(verify, "--grid", r.grid, "grid resolution (default 64)");
  add_optional(verify, "--seed", r.seed, "seed for random eigenfunctions and fields (default 0)");
  add_optional(verify, "--tolerance", r.tolerance, "relative tolerance applied to every check");
  add_optional(verify, "--lambda-max", r.lambda_max, "largest eigenvalue checked, \"p/q\" (default 20)");
  add_optional(verify, "--identity-fields", r.identity_fields, "random tangent fields per identity (default 10)");
  add_output_options(verify, r);

  CLI::App* report = app.add_subcommand("report", "run the acceptance criteria");
  add_optional(report, "--seed", r.seed, "seed for the randomised criteria (default 0)");
  add_output_options(report, r);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream text;
    std::ostringstream error;
    const int code = app.exit(e, text, error);
    if (code == 0) return HelpText{text.str()};
    std::string msg = error.str();
    while (!msg.empty() && msg.back() == '\n') msg.pop_back();
    throw UsageError(msg.empty() ? e.what() : msg);
  }

  const std::pair<CLI::App*, Subcommand> table[] = {{spectrum, Subcommand::spectrum},
                                                    {quadform, Subcommand::quadform},
                                                    {classify_cmd, Subcommand::classify},
                                                    {verify, Subcommand::verify},
                                                    {report, Subcommand::report}};
  for (const auto& [cmd, sub] : table) {
    if (cmd->parsed()) r.subcommand = sub;
  }
  return r;
}

int run(const CommandRequest& request, std::ostream& out, std::ostream& err) {
  try {
    validate_flags(request);
    if (!request.output) return dispatch(request, out);

    // Render into memory first so a failed run leaves no partial file.
    std::ostringstream buffer;
    const int code = dispatch(request, buffer);
    const std::filesystem::path path = output_path(*request.output);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + path.string());
    file << buffer.str();
    if (!file.flush()) throw std::runtime_error("failed writing " + path.string());
    return code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::variant<CommandRequest, HelpText> parsed;
  try {
    parsed = parse(argc, argv);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  if (const auto* help = std::get_if<HelpText>(&parsed)) {
    out << help->text;
    return kExitOk;
  }
  return run(std::get<CommandRequest>(parsed), out, err);
}

}  // namespace bihindex::cli
