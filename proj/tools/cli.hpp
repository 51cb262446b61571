#pragma once

// Command-line front end. parse() turns argv into a CommandRequest and run()
// executes it; both are separate from main() so tests can drive them.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace bihindex::cli {

enum class Subcommand { spectrum, quadform, classify, verify, report };
enum class OutputFormat { text, json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;

/// Name of the environment variable holding the default output directory.
inline constexpr const char* kOutputDirEnv = "BIHINDEX_OUTPUT_DIR";

/// Every flag is optional here; run() checks which ones the subcommand and
/// family actually use and rejects the rest.
struct CommandRequest {
  Subcommand subcommand = Subcommand::classify;
  std::optional<std::string> family;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> l;
  /// Rationals stay strings ("p/q") until run() parses them exactly.
  std::optional<std::string> lambda_max;
  std::optional<std::string> lambda;
  std::optional<std::string> subbundle;
  bool refine = false;
  OutputFormat format = OutputFormat::text;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<int> grid;
  std::optional<std::string> geometry;
  std::optional<int> identity_fields;
  /// File to write instead of stdout. Relative paths resolve against
  /// $BIHINDEX_OUTPUT_DIR when it is set.
  std::optional<std::string> output;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Help was requested; the text is ready to print and the exit status is 0.
struct HelpText {
  std::string text;
};

/// Throws UsageError on unknown flags or malformed values.
std::variant<CommandRequest, HelpText> parse(int argc, const char* const* argv);

/// Executes the request, writing the report to `out` (or the output file)
/// and diagnostics to `err`. Returns one of the kExit* codes.
int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

/// parse() followed by run(), with usage errors mapped to kExitUsage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string to_string(Subcommand s);
std::string to_string(OutputFormat f);

}  // namespace bihindex::cli
