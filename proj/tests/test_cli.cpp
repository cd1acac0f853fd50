#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "globalcube/cli.hpp"
#include "globalcube/errors.hpp"
#include "globalcube/io.hpp"

using namespace globalcube;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "globalcube");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("globalcube_test_" + name);
  std::ofstream(path) << content;
  return path;
}

Json payload_without_clock(const std::string& s) {
  auto j = Json::parse(s);
  j.erase("wall_clock_s");
  return j;
}

}  // namespace

TEST_CASE("cube family file round trip") {
  const cube::CubeFamily f(5, {0x1, 0x1f, 0x0a});
  std::stringstream ss;
  io::write_cube_family(ss, f);
  CHECK(io::read_cube_family(ss) == f);
  std::istringstream bad("cube n=3\n# comment\n\n1\nzz\n");
  CHECK_THROWS_AS(io::read_cube_family(bad), ParseError);
  std::istringstream wide("cube n=2\n7\n");
  CHECK_THROWS_AS(io::read_cube_family(wide), ParseError);
  CHECK_THROWS_AS(io::load_cube_family("/nonexistent/file"), IoError);
}

TEST_CASE("permutation family and bit matrix round trip") {
  const families::PermFamily f(3, {families::Permutation({2, 3, 1}), families::Permutation({1, 2, 3})});
  std::stringstream ss;
  io::write_perm_family(ss, f);
  CHECK(io::read_perm_family(ss) == f);
  std::istringstream bad("perm n=3\n1 1 2\n");
  CHECK_THROWS_AS(io::read_perm_family(bad), ParseError);

  const auto x = embed::BitMatrix::from_bitstring(3, "100011010");
  std::stringstream sm;
  io::write_bit_matrix(sm, x);
  CHECK(io::read_bit_matrix(sm) == x);
}

TEST_CASE("coefficient csv round trip") {
  const fourier::FourierCoeffs c(2, 0.3, {0.5, -0.25, 1e-17, 3.0});
  std::stringstream ss;
  io::write_coefficients_csv(ss, c);
  const auto back = io::read_coefficients_csv(ss);
  CHECK(back.coeffs() == c.coeffs());
  CHECK(back.bias() == c.bias());
}

TEST_CASE("catalog covers every subcommand once") {
  const std::set<std::string> expected = {
      "fourier-roundtrip", "noise-check", "fkg-suite", "globalness", "extract-global", "level-d-audit", "sharp-probe",
      "search-max", "search-max-cube", "verify-ak", "counterexample", "stability", "coupling", "hall-bound", "bump",
      "chain", "audit-claim52", "audit-bootstrap", "audit-prop41", "basis-bound", "r-audit"};
  std::set<std::string> names, ops;
  for (const auto& c : cli::catalog()) {
    CHECK(names.insert(c.name).second);
    for (const auto& op : c.operations) CHECK_MESSAGE(ops.insert(op).second, op);
  }
  CHECK(names == expected);
  for (const char* op : {"families.max_t_intersecting", "families.ak_family", "globalness.level_d_audit",
                         "embed.hall_bound", "bump.audit_claim52", "fourier.transform", "cube.fkg_check"})
    CHECK_MESSAGE(ops.count(op) == 1, op);
}

TEST_CASE("schemas round trip through the config parser") {
  for (const auto& c : cli::catalog()) {
    std::map<std::string, std::string> defaults;
    for (const auto& p : c.params)
      if (!p.default_value.empty()) defaults[p.name] = p.default_value;
    CHECK(cli::parse_config_text(cli::format_config_text(defaults)) == defaults);
    for (const auto& p : c.params)
      if (!p.default_value.empty()) CHECK_NOTHROW(cli::validate_param(p, p.default_value));
  }
  CHECK_THROWS_AS(cli::parse_config_text("n = 1\nn = 2\n"), ParseError);
  CHECK_THROWS_AS(cli::parse_config_text("just words\n"), ParseError);
}

TEST_CASE("grid parsing") {
  const auto axes = cli::parse_grid("n=500..10000:500 t=1..20");
  REQUIRE(axes.size() == 2);
  CHECK(axes[0].values().size() == 20);
  CHECK(axes[1].values().front() == 1);
  CHECK(cli::parse_grid("n=1..3;t=2..2").size() == 2);
  CHECK_THROWS_AS(cli::parse_grid("n=5..1"), ParseError);
  CHECK_THROWS_AS(cli::parse_grid("n=1..5:0"), ParseError);
  CHECK_THROWS_AS(cli::parse_grid("n=1-5"), ParseError);
}

TEST_CASE("cli examples") {
  const auto a = run({"fourier-roundtrip", "--n", "10", "--p", "0.25", "--trials", "100", "--seed", "7"});
  REQUIRE(a.code == 0);
  CHECK(Json::parse(a.out)["results"]["max_roundtrip_error"].get<double>() <= 1e-10);

  const auto b = run({"search-max", "--n", "4", "--t", "1"});
  REQUIRE(b.code == 0);
  const auto rb = Json::parse(b.out)["results"];
  CHECK(rb["max_size"] == 6);
  CHECK(rb["all_umvirates"] == true);

  const auto c = run({"hall-bound", "--n", "2", "--p", "0.5", "--mode", "exact"});
  REQUIRE(c.code == 0);
  CHECK(Json::parse(c.out)["results"]["mu_U"].get<double>() == doctest::Approx(0.4375));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUnknownSubcommand);
  CHECK(run({"no-such-thing"}).code == cli::kExitUnknownSubcommand);
  CHECK(run({"search-max", "--bogus", "1"}).code == cli::kExitMalformed);
  CHECK(run({"search-max", "--n", "four"}).code == cli::kExitMalformed);
  CHECK(run({"search-max", "--n", "4", "--format", "xml"}).code == cli::kExitMalformed);
  CHECK(run({"noise-check", "--q", "0.5", "--p", "0.3", "--n", "2"}).code == cli::kExitPrecondition);
  CHECK(run({"search-max", "--n", "9", "--t", "1"}).code == cli::kExitResourceGuard);
  CHECK(run({"globalness", "--family", "/nonexistent/family.txt"}).code == cli::kExitIo);
  CHECK(run({"globalness"}).code == cli::kExitMalformed);
  CHECK(run({"basis-bound", "--config", "/nonexistent/config"}).code == cli::kExitIo);
  const auto help = run({"search-max", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--max_witnesses") != std::string::npos);
  CHECK(run({"list"}).code == 0);
}

TEST_CASE("errors carry distinct messages") {
  std::set<std::string> prefixes;
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"no-such-thing"}, {"search-max", "--n", "four"}, {"globalness", "--family", "/nonexistent/f"}}) {
    const auto r = run(args);
    prefixes.insert(r.err.substr(0, r.err.find(':', std::string("globalcube").size() + 2)));
  }
  CHECK(prefixes.size() == 3);
}

TEST_CASE("config files, flag precedence and file output") {
  const auto cfg = temp_file("cfg.txt", "# basis settings\nn = 5\nt = 2\n");
  const auto a = run({"basis-bound", "--config", cfg.string()});
  REQUIRE(a.code == 0);
  CHECK(Json::parse(a.out)["results"]["exact_count"] == 31);
  const auto b = run({"basis-bound", "--config", cfg.string(), "--t", "5"});
  CHECK(Json::parse(b.out)["results"]["exact_count"] == 1);
  const auto bad = temp_file("bad.txt", "n = 5\nwhatever = 2\n");
  CHECK(run({"basis-bound", "--config", bad.string()}).code == cli::kExitMalformed);

  const auto out = std::filesystem::temp_directory_path() / "globalcube_test_out.csv";
  const auto c = run({"basis-bound", "--n", "4", "--format", "csv", "--output", out.string()});
  REQUIRE(c.code == 0);
  CHECK(c.out.empty());
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,t,exact_count,binom_bound,two_n_bound");
  CHECK(run({"basis-bound", "--output", "/nonexistent/dir/x.json"}).code == cli::kExitIo);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> exact = {"verify-ak", "--t_max", "4", "--r_max", "2"};
  CHECK(payload_without_clock(run(exact).out) == payload_without_clock(run(exact).out));
  const std::vector<std::string> mc = {"hall-bound", "--n", "12", "--mode", "mc", "--samples", "3000", "--seed", "5"};
  const auto one = payload_without_clock(run(mc).out);
  CHECK(one == payload_without_clock(run(mc).out));
  auto par = mc;
  par.insert(par.end(), {"--workers", "2"});
  auto two = payload_without_clock(run(par).out);
  CHECK(two["results"] == one["results"]);
}

TEST_CASE("seed falls back to the environment") {
  const std::vector<std::string> args = {"hall-bound", "--n", "10", "--mode", "mc", "--samples", "500"};
  setenv(cli::kSeedEnv, "99", 1);
  const auto env = payload_without_clock(run(args).out);
  unsetenv(cli::kSeedEnv);
  CHECK(env["config"]["seed"] == "99");
  auto explicit_args = args;
  explicit_args.insert(explicit_args.end(), {"--seed", "99"});
  CHECK(payload_without_clock(run(explicit_args).out)["results"] == env["results"]);
  CHECK(payload_without_clock(run(args).out)["config"]["seed"] == "1");
}
