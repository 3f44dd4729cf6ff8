#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "rdlab/rdlab.h"

int main(int argc, char** argv) {
  std::vector<std::string> commands;
  for (const char* const* c = rdlab_commands(); *c; ++c) commands.emplace_back(*c);

  CLI::App app{"rdlab: relativistic position-operator and covariance laboratory"};
  app.set_version_flag("--version", rdlab_version());
  std::string command, config_path, out_dir;
  std::uint64_t seed = 0;
  app.add_option("command", command, "experiment to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--config", config_path, "key=value configuration file")->required();
  app.add_option("--out", out_dir, "output directory (default: output.dir from the config)");
  app.add_option("--seed", seed, "seed for randomized checks")->default_val(0);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  rdlab_config* cfg = nullptr;
  if (rdlab_config_load(config_path.c_str(), &cfg) != RDLAB_OK) {
    std::fprintf(stderr, "rdlab: %s\n", rdlab_last_error());
    return 2;
  }
  if (out_dir.empty()) {
    const char* dir = nullptr;
    if (rdlab_config_value(cfg, "output.dir", &dir) != RDLAB_OK) {
      std::fprintf(stderr, "rdlab: %s\n", rdlab_last_error());
      rdlab_config_free(cfg);
      return 2;
    }
    out_dir = dir;
  }

  rdlab_report* report = nullptr;
  const rdlab_status st = rdlab_run(cfg, command.c_str(), out_dir.c_str(), seed, &report);
  rdlab_config_free(cfg);
  if (st != RDLAB_OK) {
    std::fprintf(stderr, "rdlab %s: %s\n", command.c_str(), rdlab_last_error());
    return 2;
  }
  const int passed = rdlab_report_passed(report);
  std::printf("%s: %s (%s/%s.report.json)\n", command.c_str(), passed ? "PASS" : "FAIL", out_dir.c_str(),
              command.c_str());
  rdlab_report_free(report);
  return passed ? 0 : 1;
}
