#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "serialize.hpp"

namespace bihindex::cli {
namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bihindex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

TEST(Cli, ClassifyJsonSpecExample) {
  const Result r = invoke({"classify", "--family", "tgi", "--m", "2", "--n", "3", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["index_exact"], 1);
  EXPECT_EQ(j["nullity_exact"], 10);
  EXPECT_EQ(j["nullity_split"]["vertical"], 4);
  EXPECT_FALSE(j["index_anchor"].get<std::string>().empty());
}

TEST(Cli, ClassifyJsonRoundTripsByteIdentically) {
  for (const std::vector<std::string>& family :
       {std::vector<std::string>{"--family", "tgi", "--m", "3", "--n", "5"},
        std::vector<std::string>{"--family", "veronese", "--m", "5"},
        std::vector<std::string>{"--family", "veronese-proj", "--m", "3"},
        std::vector<std::string>{"--family", "clifford", "--l", "2"}}) {
    std::vector<std::string> args{"classify", "--format", "json"};
    args.insert(args.end(), family.begin(), family.end());
    const Result a = invoke(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(dump(Json::parse(a.out)), a.out);
    EXPECT_EQ(invoke(args).out, a.out);
  }
}

// Exact quantities never appear as floats in classification output.
void expect_no_floats(const Json& j, const std::string& path) {
  if (j.is_number_float()) ADD_FAILURE() << "float at " << path;
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) expect_no_floats(v, path + "/" + k);
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) expect_no_floats(j[i], path + "/" + std::to_string(i));
  }
}

TEST(Cli, ExactOutputsCarryIntegerPairs) {
  const Result c = invoke({"classify", "--family", "veronese", "--m", "6", "--format", "json"});
  ASSERT_EQ(c.code, kExitOk);
  const Json j = Json::parse(c.out);
  expect_no_floats(j, "");
  EXPECT_TRUE(j["lambda_max"].contains("num"));
  EXPECT_TRUE(j["gates"]["kappa_threshold"].contains("d"));
  EXPECT_EQ(rational_from_json(j["lambda_max"]), minimal_lambda_max(ManifoldFamily::veronese(6)));
  const Result q = invoke({"quadform", "--family", "veronese", "--m", "2", "--lambda", "4/3", "--format", "json"});
  ASSERT_EQ(q.code, kExitOk) << q.err;
  const Json jq = Json::parse(q.out);
  expect_no_floats(jq, "");
  EXPECT_EQ(rational_from_json(jq["forms"][0]["value"]), Rational(-80, 9));
  EXPECT_EQ(rational_from_json(jq["cross"]), Rational(-32, 9));
}

TEST(Cli, RationalJsonHandlesLargeIntegers) {
  const Rational big = Rational::parse("123456789012345678901234567890/7");
  const Json j = to_json(big);
  EXPECT_TRUE(j["num"].is_string());
  EXPECT_EQ(rational_from_json(j), big);
  EXPECT_THROW((void)rational_from_json(Json::parse("{\"num\": 1.5, \"den\": 1}")), std::invalid_argument);
}

TEST(Cli, SpectrumSpecExample) {
  const Result r = invoke({"spectrum", "--family", "clifford", "--l", "1", "--lambda-max", "0", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "value_num,value_den,level,multiplicity\n0,1,\"(0,0)\",1\n");
  const Result text = invoke({"spectrum", "--family", "clifford", "--l", "1", "--lambda-max", "0"});
  EXPECT_EQ(text.code, kExitOk);
  const Result json = invoke({"spectrum", "--family", "clifford", "--l", "1", "--lambda-max", "0", "--format", "json"});
  EXPECT_EQ(Json::parse(json.out)["eigenvalues"].size(), 1u);
}

TEST(Cli, SpectrumAcceptsRationalCutoff) {
  const Result r = invoke({"spectrum", "--family", "veronese", "--m", "2", "--lambda-max", "13/3", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "value_num,value_den,level,multiplicity\n0,1,0,1\n4,3,1,3\n4,1,2,5\n");
}

TEST(Cli, VerifySpecExampleAndToleranceForcing) {
  const Result ok = invoke({"verify", "--case", "torus", "--grid", "64", "--seed", "7", "--identity-fields", "2"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.err;
  const Result strict = invoke({"verify", "--case", "torus", "--grid", "64", "--seed", "7", "--identity-fields", "2",
                                "--tolerance", "1e-20", "--format", "json"});
  EXPECT_EQ(strict.code, kExitCheckFailed);
  const Json j = Json::parse(strict.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(dump(j), strict.out);
}

TEST(Cli, QuadformText) {
  const Result r = invoke({"quadform", "--family", "tgi", "--m", "2", "--n", "3", "--lambda", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("positive_semidefinite_with_kernel"), std::string::npos);
  EXPECT_NE(r.out.find("kernel (2, 1)"), std::string::npos);
  const Result refined =
      invoke({"quadform", "--family", "clifford", "--l", "5", "--lambda", "20", "--subbundle", "tangent", "--refine"});
  ASSERT_EQ(refined.code, kExitOk) << refined.err;
  EXPECT_NE(refined.out.find("2880"), std::string::npos);
}

TEST(Cli, IdentityFamilyReportsNullity) {
  const Result r = invoke({"classify", "--family", "identity", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["identity_nullity"], 6);
}

TEST(Cli, ValidationErrorsExitTwo) {
  const std::vector<std::vector<std::string>> bad{
      {"classify", "--family", "tgi", "--m", "3", "--n", "2"},
      {"classify", "--family", "tgi", "--m", "2"},
      {"classify", "--family", "clifford", "--l", "1", "--m", "2"},
      {"classify", "--family", "tgi", "--m", "2", "--n", "3", "--grid", "64"},
      {"classify", "--family", "nope", "--m", "2"},
      {"classify", "--family", "veronese", "--m", "6", "--lambda-max", "1"},
      {"spectrum", "--family", "clifford", "--l", "1"},
      {"spectrum", "--family", "clifford", "--l", "1", "--lambda-max", "1.5"},
      {"spectrum", "--family", "clifford", "--l", "1", "--lambda-max", "-1"},
      {"quadform", "--family", "tgi", "--m", "2", "--n", "3", "--lambda", "5"},
      {"quadform", "--family", "veronese", "--m", "2", "--lambda", "4/3", "--subbundle", "vertical"},
      {"quadform", "--family", "clifford", "--l", "1", "--lambda", "8", "--refine"},
      {"verify", "--case", "torus", "--grid", "24"},
      {"verify", "--case", "torus", "--n", "3"},
      {"verify", "--case", "klein"},
      {"verify", "--case", "torus", "--tolerance", "-1"},
      {"report", "--family", "tgi"},
      {"classify", "--family", "tgi", "--m", "2", "--n", "3", "--format", "yaml"},
      {},
      {"frobnicate"},
  };
  for (const auto& args : bad) {
    const Result r = invoke(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, kExitUsage) << joined << "\n" << r.out << r.err;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

TEST(Cli, RunRejectsIrrelevantFieldsInDirectRequests) {
  CommandRequest request;
  request.subcommand = Subcommand::spectrum;
  request.family = "clifford";
  request.l = 1;
  request.lambda_max = "4";
  request.seed = 3;
  std::ostringstream out, err;
  EXPECT_EQ(run(request, out, err), kExitUsage);
  EXPECT_NE(err.str().find("--seed"), std::string::npos);
  request.seed.reset();
  EXPECT_EQ(run(request, out, err), kExitOk);
}

TEST(Cli, HelpExitsZero) {
  const Result r = invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--help"}).code, kExitOk);
}

TEST(Cli, OutputFileResolvesAgainstEnvironmentDirectory) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "bihindex_cli_test";
  std::filesystem::create_directories(dir);
  ASSERT_EQ(setenv(kOutputDirEnv, dir.c_str(), 1), 0);
  const Result r = invoke({"classify", "--family", "tgi", "--m", "1", "--n", "2", "--format", "json", "--output", "r.json"});
  unsetenv(kOutputDirEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream file(dir / "r.json");
  std::stringstream content;
  content << file.rdbuf();
  EXPECT_EQ(Json::parse(content.str())["index_exact"], 1);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace bihindex::cli
