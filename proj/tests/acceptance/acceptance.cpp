// One PASS/FAIL line per acceptance criterion, each backed by its experiment at default settings.
#include <CLI11.hpp>
#include <iostream>

#include "chaoslab/error.hpp"
#include "chaoslab/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string cache_dir;
  app.add_option("--criterion", only, "run a single criterion (1-9)");
  app.add_option("--cache-dir", cache_dir, "partition table cache");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  bool ran = false;
  for (const auto& e : chaoslab::exp::registry()) {
    if (only != 0 && e.criterion != only) continue;
    ran = true;
    chaoslab::exp::Config config;
    config.experiment = e.name;
    config.cache_dir = cache_dir;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    try {
      const auto result = chaoslab::exp::run(config);
      pass = result.passed();
      seconds = result.seconds;
      for (const auto& c : result.checks)
        if (!c.pass) detail += (detail.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " [" + c.detail + "]");
    } catch (const std::exception& ex) {
      detail = std::string("error: ") + ex.what();
    }
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << e.criterion << " (" << e.name << ", " << seconds
              << " s)" << (detail.empty() ? "" : ": " + detail) << std::endl;
    all_pass = all_pass && pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return all_pass ? 0 : 1;
}
