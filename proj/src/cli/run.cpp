#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "globalcube/cli.hpp"
#include "globalcube/errors.hpp"

namespace globalcube::cli {

namespace {

const char* type_name(ParamType t) {
  switch (t) {
    case ParamType::integer: return "integer";
    case ParamType::integer_list: return "integer-list";
    case ParamType::real: return "real";
    case ParamType::real_list: return "real-list";
    case ParamType::probability: return "probability";
    case ParamType::probability_list: return "probability-list";
    case ParamType::text: return "text";
    case ParamType::path: return "path";
    case ParamType::grid: return "grid";
    case ParamType::choice: return "choice";
  }
  return "text";
}

void print_usage(std::ostream& os) {
  os << "usage: " << kToolName
     << " <subcommand> [--key value ...] [--config file] [--output path] [--format json|csv] [--workers N]\n"
     << "       " << kToolName << " list\n       " << kToolName << " --version\n\nsubcommands:\n";
  for (const auto& c : catalog()) os << "  " << c.name << std::string(c.name.size() < 20 ? 20 - c.name.size() : 1, ' ') << c.summary << '\n';
}

void print_catalog(std::ostream& os) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& c : catalog()) {
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    for (const auto& p : c.params) {
      nlohmann::ordered_json j{{"name", p.name}, {"type", type_name(p.type)}, {"default", p.default_value}, {"help", p.help}};
      if (!p.choices.empty()) j["choices"] = p.choices;
      params.push_back(j);
    }
    out.push_back({{"name", c.name}, {"summary", c.summary}, {"operations", c.operations}, {"params", params}});
  }
  os << out.dump(2) << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_workers(const std::string& s) {
  int w = 0;
  try {
    std::size_t used = 0;
    w = std::stoi(s, &used);
    if (used != s.size()) w = 0;
  } catch (const std::exception&) {
    w = 0;
  }
  if (w < 1 || w > 256) throw ParseError("--workers must be an integer in 1..256");
  return w;
}

// Builds the validated configuration: defaults, then config file, then flags.
CampaignConfig build_config(const Campaign& campaign, const std::map<std::string, std::string>& flags,
                            const std::string& config_path) {
  std::map<std::string, std::string> merged;
  for (const auto& p : campaign.params) merged[p.name] = p.default_value;
  std::string output, format = "json", workers = "1";
  auto apply = [&](const std::string& key, const std::string& value) {
    if (key == "output")
      output = value;
    else if (key == "format")
      format = value;
    else if (key == "workers")
      workers = value;
    else if (merged.count(key))
      merged[key] = value;
    else
      throw ParseError("unknown parameter '" + key + "' for " + campaign.name);
  };
  if (!config_path.empty())
    for (const auto& [k, v] : parse_config_text(read_file(config_path))) apply(k, v);
  for (const auto& [k, v] : flags) apply(k, v);

  for (const auto& p : campaign.params) {
    auto& v = merged[p.name];
    if (p.name == "seed" && v.empty()) {
      const char* env = std::getenv(kSeedEnv);
      v = env && *env ? env : "1";
    }
    if (!v.empty()) validate_param(p, v);
  }
  if (format != "json" && format != "csv") throw ParseError("--format must be json or csv");
  CampaignConfig cfg;
  cfg.subcommand = campaign.name;
  cfg.params = std::move(merged);
  cfg.output = output;
  cfg.format = format;
  cfg.workers = parse_workers(workers);
  return cfg;
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (argc < 2) {
    print_usage(err);
    return kExitUnknownSubcommand;
  }
  const std::string name = argv[1];
  if (name == "-h" || name == "--help" || name == "help") {
    print_usage(out);
    return kExitOk;
  }
  if (name == "--version") {
    out << kToolName << ' ' << kVersion << '\n';
    return kExitOk;
  }
  if (name == "list") {
    print_catalog(out);
    return kExitOk;
  }
  const Campaign* campaign = find_campaign(name);
  if (!campaign) {
    err << kToolName << ": unknown subcommand '" << name << "'\n";
    print_usage(err);
    return kExitUnknownSubcommand;
  }

  try {
    CLI::App app(campaign->summary, std::string(kToolName) + " " + campaign->name);
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const auto& p : campaign->params)
      options[p.name] = app.add_option("--" + p.name, values[p.name], p.help);
    std::string config_path, output, format, workers;
    app.add_option("--config", config_path, "key = value file; flags take precedence");
    auto* out_opt = app.add_option("--output", output, "write the report here instead of stdout");
    auto* fmt_opt = app.add_option("--format", format, "json or csv");
    auto* wrk_opt = app.add_option("--workers", workers, "threads for Monte Carlo campaigns");
    try {
      app.parse(argc - 1, argv + 1);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << kToolName << ' ' << campaign->name << ": " << e.what() << '\n';
      return kExitMalformed;
    }
    std::map<std::string, std::string> flags;
    for (const auto& [k, opt] : options)
      if (opt->count() > 0) flags[k] = values[k];
    if (out_opt->count()) flags["output"] = output;
    if (fmt_opt->count()) flags["format"] = format;
    if (wrk_opt->count()) flags["workers"] = workers;

    const auto cfg = build_config(*campaign, flags, config_path);
    if (cfg.output.empty()) {
      run_campaign(cfg, out);
    } else {
      std::ostringstream buffer;
      run_campaign(cfg, buffer);
      std::ofstream file(cfg.output);
      if (!file) throw IoError("cannot write " + cfg.output);
      file << buffer.str();
      if (!file) throw IoError("write failed for " + cfg.output);
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << kToolName << ": malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const IoError& e) {
    err << kToolName << ": i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ResourceGuardError& e) {
    err << kToolName << ": resource guard: " << e.what() << '\n';
    return kExitResourceGuard;
  } catch (const PreconditionError& e) {
    err << kToolName << ": precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << kToolName << ": internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace globalcube::cli
