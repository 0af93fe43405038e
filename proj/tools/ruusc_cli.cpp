#include "ruusc/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"ruusc: sampled verification of radial representation statements"};

  std::string spec_path, suite_path;
  ruusc::RunOptions options;
  std::uint64_t seed = 0;
  bool seed_set = false;

  app.add_option("--spec", spec_path, "single problem description (JSON)");
  app.add_option("--suite", suite_path, "suite file listing problem descriptions");
  app.add_option("--out", options.out_dir, "output directory for reports")->capture_default_str();
  app.add_option("--seed", seed, "override the seed of every spec")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_option("--threads", options.threads, "worker threads for inner loops")
      ->capture_default_str();
  app.add_option("--resolution-scale", options.resolution_scale,
                 "multiplies estimator sample counts (convergence studies)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (seed_set) options.seed_override = seed;
  if (spec_path.empty() == suite_path.empty()) {
    std::fprintf(stderr, "exactly one of --spec or --suite is required\n");
    return ruusc::kSpecError;
  }

  if (!spec_path.empty()) {
    const ruusc::RunOutcome out = ruusc::run_problem_file(spec_path, options);
    std::printf("%s: %s", out.statement.empty() ? "spec" : out.statement.c_str(),
                out.verdict.c_str());
    if (!out.message.empty()) std::printf(" (%s)", out.message.c_str());
    std::printf("\n");
    return out.exit_code;
  }

  std::vector<ruusc::RunOutcome> outcomes;
  const int worst = ruusc::run_suite_file(suite_path, options, &outcomes);
  for (const auto& o : outcomes)
    std::printf("%-28s %-10s max_gap=%g  %.0f ms\n", o.statement.c_str(), o.verdict.c_str(),
                o.max_gap, o.runtime_ms);
  if (outcomes.empty()) std::fprintf(stderr, "empty or unreadable suite\n");
  return worst;
}
