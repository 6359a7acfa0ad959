#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "hflow/cli.hpp"
#include "hflow/parallel.hpp"

int main(int argc, char **argv)
{
  using hflow::cli::ExitCode;

  CLI::App app{"Horizontal curvature flow toolkit on the Heisenberg group"};
  std::string kind, scenario_path, out_dir;
  unsigned threads = 0;
  app.add_option("kind", kind, "ops-eval | qc-check | minkowski | flow | full-report")
    ->required()
    ->check(CLI::IsMember(hflow::cli::scenario_kinds()));
  app.add_option("--scenario", scenario_path, "scenario JSON file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--threads", threads, "worker cap (default: HFLOW_THREADS, then all cores)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::config_error);
  }
  if (threads > 0) { hflow::set_thread_count(threads); }

  try {
    const auto scn = hflow::cli::load_scenario(scenario_path);
    if (scn.kind != kind) {
      throw hflow::cli::ConfigError("scenario kind '" + scn.kind + "' does not match command '" + kind + "'");
    }
    const auto rep = hflow::cli::run(scn, out_dir, [](const std::string &line) {
      std::printf("%s\n", line.c_str());
      std::fflush(stdout);
    });
    for (const auto &[name, value] : rep.metrics) {
      std::printf("%s = %s\n", name.c_str(), hflow::format_double(value).c_str());
    }
    for (const auto &f : rep.failures) { std::fprintf(stderr, "check failed: %s\n", f.c_str()); }
    return static_cast<int>(rep.passed() ? ExitCode::ok : ExitCode::check_failed);
  } catch (const hflow::cli::ConfigError &e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return static_cast<int>(ExitCode::config_error);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return static_cast<int>(ExitCode::check_failed);
  }
}
