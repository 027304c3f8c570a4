#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chaoslab/density.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/experiments.hpp"
#include "chaoslab/kacsphere.hpp"
#include "chaoslab/stats.hpp"

namespace {

using namespace chaoslab;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Density cache_density(const std::string& name) {
  if (name == "gaussian") return Density::gaussian();
  if (name == "bimodal") return Density::bimodal();
  if (name == "skewed-bimodal") return Density::skewed_bimodal();
  throw Error(ErrorCode::invalid_argument, "partition tables are cached for gaussian, bimodal, skewed-bimodal");
}

int run_experiment(exp::Config config, const std::string& config_file, const CLI::App& run_cmd) {
  if (!config_file.empty()) {
    // file first, then every flag given on the command line wins
    auto file = exp::config_from_json(slurp(config_file));
    if (run_cmd.count("--density")) file.density = config.density;
    if (run_cmd.count("--custom-grid")) file.custom_grid = config.custom_grid;
    if (run_cmd.count("--ns")) file.ns = config.ns;
    if (run_cmd.count("--mc-reps")) file.mc_reps = config.mc_reps;
    if (run_cmd.count("--reference-size")) file.reference_size = config.reference_size;
    if (run_cmd.count("--seed")) file.seed = config.seed;
    if (run_cmd.count("--s")) file.s = config.s;
    if (run_cmd.count("--k")) file.k = config.k;
    if (run_cmd.count("--output")) file.output = config.output;
    if (run_cmd.count("--format")) file.format = config.format;
    if (run_cmd.count("--exact")) file.exact = config.exact;
    if (run_cmd.count("--cache-dir")) file.cache_dir = config.cache_dir;
    if (!config.experiment.empty()) file.experiment = config.experiment;
    config = file;
  }
  if (exp::find_experiment(config.experiment) == nullptr) {
    std::cerr << "unknown experiment '" << config.experiment << "'; see `chaoslab list`\n";
    return 2;
  }
  if (config.format != "csv" && config.format != "json") {
    std::cerr << "format must be csv or json\n";
    return 2;
  }
  const auto result = exp::run(config);
  if (config.output.empty()) {
    if (config.format == "csv")
      exp::write_csv(std::cout, result);
    else
      std::cout << exp::summary_json(result, config) << '\n';
  } else {
    std::ofstream csv(config.output + ".csv"), json(config.output + ".json");
    if (!csv || !json) throw Error(ErrorCode::io_error, "cannot write " + config.output + ".{csv,json}");
    exp::write_csv(csv, result);
    json << exp::summary_json(result, config) << '\n';
  }
  const auto* e = exp::find_experiment(config.experiment);
  for (const auto& c : result.checks)
    std::cerr << (c.pass ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
  if (!result.passed()) {
    std::cerr << "criterion " << e->criterion << " (" << e->name << ") failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaoslab: quantitative chaos experiments"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker cap (0 = all cores)");

  exp::Config config;
  std::string config_file;
  auto* run_cmd = app.add_subcommand("run", "run one experiment");
  run_cmd->add_option("name", config.experiment, "experiment name")->required();
  run_cmd->add_option("--config", config_file, "JSON configuration file; flags override it");
  run_cmd->add_option("--density", config.density, "gaussian | uniform | bimodal | skewed-bimodal | custom");
  run_cmd->add_option("--custom-grid", config.custom_grid, "file of 'x value' lines for --density custom");
  run_cmd->add_option("--ns", config.ns, "N values")->delimiter(',');
  run_cmd->add_option("--mc-reps", config.mc_reps, "Monte Carlo replicas");
  run_cmd->add_option("--reference-size", config.reference_size, "reference sample size M");
  run_cmd->add_option("--seed", config.seed, "master seed");
  run_cmd->add_option("--s", config.s, "Sobolev order s");
  run_cmd->add_option("--k", config.k, "moment order k");
  run_cmd->add_option("--output", config.output, "write <output>.csv and <output>.json");
  run_cmd->add_option("--format", config.format, "stdout format: csv | json");
  run_cmd->add_flag("--exact", config.exact, "exact oracles only");
  run_cmd->add_option("--cache-dir", config.cache_dir, "partition table cache directory");
  run_cmd->add_option("--threads", threads, "worker cap (0 = all cores)");

  auto* list_cmd = app.add_subcommand("list", "list experiments");

  auto* cache_cmd = app.add_subcommand("cache", "partition table cache");
  cache_cmd->require_subcommand(1);
  std::string cache_dir, cache_name = "bimodal";
  std::size_t max_n = 1024;
  auto* build_cmd = cache_cmd->add_subcommand("build", "build and store a table");
  build_cmd->add_option("--density", cache_name, "gaussian | bimodal | skewed-bimodal");
  build_cmd->add_option("--max-n", max_n, "largest N");
  build_cmd->add_option("--cache-dir", cache_dir, "cache directory");
  auto* clear_cmd = cache_cmd->add_subcommand("clear", "delete all cached tables");
  clear_cmd->add_option("--cache-dir", cache_dir, "cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  set_thread_limit(threads);

  try {
    if (*list_cmd) {
      for (const auto& e : exp::registry())
        std::cout << e.name << " → " << e.anchor << "    [criterion " << e.criterion << "] " << e.summary << '\n';
      return 0;
    }
    if (*run_cmd) return run_experiment(config, config_file, *run_cmd);
    const std::filesystem::path dir = cache_dir.empty() ? kac::default_cache_dir() : std::filesystem::path(cache_dir);
    if (*build_cmd) {
      const auto f = cache_density(cache_name);
      kac::PartitionTable::cached(f, max_n, dir);
      std::cout << (dir / kac::PartitionTable::cache_name(f.id(), max_n, {})).string() << '\n';
      return 0;
    }
    if (*clear_cmd) {
      std::size_t removed = 0;
      if (std::filesystem::exists(dir))
        for (const auto& entry : std::filesystem::directory_iterator(dir))
          if (entry.path().extension() == ".cptbl") removed += std::filesystem::remove(entry.path());
      std::cout << "removed " << removed << " tables from " << dir.string() << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::invalid_argument ? 2 : 1;
  }
  return 2;
}
