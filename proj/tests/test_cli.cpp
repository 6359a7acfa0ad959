#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "hflow/cli.hpp"

using namespace hflow;
namespace fs = std::filesystem;

namespace {
std::string env(const char *name)
{
  const char *v = std::getenv(name);
  return v ? v : "";
}

fs::path out_root()
{
  static const fs::path d = [] {
    const fs::path p = fs::temp_directory_path() / "hflow_test_cli";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int run_bin(const std::string &args)
{
  const std::string cmd = "\"" + env("HFLOW_BIN") + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

int run_scenario(const std::string &kind, const fs::path &file, const std::string &tag)
{
  return run_bin(kind + " --scenario \"" + file.string() + "\" --out \"" + (out_root() / tag).string() + "\" --threads 1");
}

fs::path scenario(const std::string &name) { return fs::path(env("HFLOW_SCENARIOS")) / (name + ".json"); }

fs::path write_scenario(const std::string &tag, const json &doc)
{
  const fs::path p = out_root() / (tag + ".json");
  write_text(p, doc.dump(2));
  return p;
}

json summary(const std::string &tag) { return read_json(out_root() / tag / "summary.json"); }
}  // namespace

TEST_CASE("scenario parsing", "[cli]")
{
  CHECK_THROWS_AS(cli::parse_scenario(json::array()), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_scenario(json::parse(R"({"name": "x"})")), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_scenario(json::parse(R"({"kind": "nope"})")), cli::ConfigError);
  const auto s = cli::parse_scenario(json::parse(R"({"name": "x", "kind": "flow"})"));
  CHECK(s.kind == "flow");
  CHECK(s.provenance().hash == scenario_hash(s.doc));
}

TEST_CASE("bundled scenarios pass through the binary", "[cli]")
{
  if (env("HFLOW_BIN").empty() || env("HFLOW_SCENARIOS").empty()) { SKIP("HFLOW_BIN / HFLOW_SCENARIOS not set"); }
  for (const auto &[kind, name] :
       std::vector<std::pair<std::string, std::string>>{{"ops-eval", "ops-neg-z4"},
                                                        {"ops-eval", "ops-positive-example"},
                                                        {"qc-check", "qc-neg-z4"},
                                                        {"qc-check", "qc-positive-example"},
                                                        {"qc-check", "qc-linear-profile"},
                                                        {"flow", "flow-linear-profile"}}) {
    INFO(name);
    CHECK(run_scenario(kind, scenario(name), name) == 0);
    const json s = summary(name);
    CHECK(s.at("passed") == true);
    CHECK(s.at("scenario_hash") == scenario_hash(read_json(scenario(name))));
  }
  // outputs carry the scenario hash
  const std::string hash = scenario_hash(read_json(scenario("ops-neg-z4")));
  std::ifstream in(out_root() / "ops-neg-z4" / "ops.csv");
  std::string first;
  std::getline(in, first);
  CHECK(first == "# scenario_hash: " + hash);
  CHECK(fs::exists(out_root() / "qc-neg-z4" / "witness.json"));
  CHECK(fs::exists(out_root() / "flow-linear-profile" / "manifest.json"));
}

TEST_CASE("exit codes", "[cli]")
{
  if (env("HFLOW_BIN").empty() || env("HFLOW_SCENARIOS").empty()) { SKIP("HFLOW_BIN / HFLOW_SCENARIOS not set"); }
  json doc = read_json(scenario("ops-neg-z4"));

  SECTION("a failed check exits with 1")
  {
    doc["checks"] = json::array({{{"metric", "max_abs_L"}, {"ge", 1.0}}});
    CHECK(run_scenario("ops-eval", write_scenario("fail", doc), "fail") == 1);
    CHECK(summary("fail").at("failures").size() == 1);
  }

  SECTION("configuration errors exit with 2")
  {
    CHECK(run_scenario("qc-check", scenario("ops-neg-z4"), "mismatch") == 2);
    doc["field"] = {{"name", "no-such-field"}};
    CHECK(run_scenario("ops-eval", write_scenario("unknown", doc), "unknown") == 2);
    doc = read_json(scenario("ops-neg-z4"));
    doc["checks"] = json::array({{{"metric", "no_such_metric"}, {"le", 1.0}}});
    CHECK(run_scenario("ops-eval", write_scenario("badmetric", doc), "badmetric") == 2);
    const fs::path broken = out_root() / "broken.json";
    write_text(broken, "{ \"kind\": ");
    CHECK(run_scenario("ops-eval", broken, "broken") == 2);
    CHECK(run_bin("ops-eval --scenario /no/such/file.json --out /tmp/x") == 2);
    CHECK(run_bin("bogus-kind --scenario \"" + scenario("ops-neg-z4").string() + "\" --out /tmp/x") == 2);
  }

  SECTION("a short full report")
  {
    const json rep = {{"name", "short"}, {"kind", "full-report"}, {"criteria", {1, 2, 4}}};
    CHECK(run_scenario("full-report", write_scenario("report", rep), "report") == 0);
    CHECK(summary("report").at("metrics").at("criteria_failed") == 0);
    CHECK(fs::exists(out_root() / "report" / "report.csv"));
  }
}
