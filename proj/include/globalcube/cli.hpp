#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "globalcube/probability.hpp"

namespace globalcube::cli {

inline constexpr const char* kToolName = "globalcube";
inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kSeedEnv = "GLOBALCUBE_SEED";

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitPrecondition = 2,
  kExitResourceGuard = 3,
  kExitUnknownSubcommand = 64,
  kExitMalformed = 65,
  kExitIo = 74,
};

// Parameter value types understood by the validator.
enum class ParamType { integer, integer_list, real, real_list, probability, probability_list, text, path, grid, choice };

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::text;
  std::string default_value;  // empty: no default
  std::string help;
  std::vector<std::string> choices;  // for ParamType::choice
};

struct Campaign {
  std::string name;
  std::string summary;
  std::vector<std::string> operations;  // module.operation names served here
  std::vector<ParamSpec> params;
};

// Every subcommand with its parameter schema, in display order.
const std::vector<Campaign>& catalog();
const Campaign* find_campaign(std::string_view name);

// Throws ParseError when `value` is not a valid `spec` value.
void validate_param(const ParamSpec& spec, const std::string& value);

// --- config ---------------------------------------------------------------

// `key = value` lines; '#' starts a comment. Throws ParseError on bad lines
// or repeated keys.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::string format_config_text(const std::map<std::string, std::string>& values);

struct GridAxis {
  std::string name;
  long first = 0;
  long last = 0;
  long step = 1;
  std::vector<long> values() const;
};

// "n=500..10000:500 t=1..20" (axes separated by spaces or ';'; step defaults to 1).
std::vector<GridAxis> parse_grid(std::string_view text);

struct CampaignConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;  // validated, defaults filled in
  std::string output;                         // empty: stdout
  std::string format = "json";                // json | csv
  int workers = 1;
};

/// Typed read access to a validated parameter map; malformed values throw ParseError.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& values) : values_(values) {}

  bool has(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  long integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  double real(const std::string& key) const;
  Probability probability(const std::string& key) const;
  std::vector<long> integer_list(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;
  std::vector<Probability> probability_list(const std::string& key) const;

 private:
  const std::map<std::string, std::string>& values_;
};

/// Runs one campaign and renders its report. Errors propagate as exceptions.
void run_campaign(const CampaignConfig& config, std::ostream& out);

/// Full command line entry point: returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace globalcube::cli
