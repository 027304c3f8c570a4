#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "chaoslab/fit.hpp"
#include "chaoslab/rng.hpp"

namespace chaoslab::exp {

struct Config {
  std::string experiment;
  std::string density;          // "" = the experiment's own choice; gaussian | uniform | bimodal | custom
  std::string custom_grid;      // file of "x value" lines, for density = custom
  std::vector<int> ns;          // empty = experiment default
  std::size_t mc_reps = 0;      // 0 = experiment default
  std::size_t reference_size = 0;
  std::uint64_t seed = kDefaultSeed;
  double s = 0.0;               // 0 = experiment default
  double k = 4.0;
  std::string output;           // file stem; empty = stdout
  std::string format = "csv";   // csv | json
  bool exact = false;           // identities: exact oracles only
  std::string cache_dir;        // partition tables; empty = default_cache_dir()
};

struct Row {
  long n;
  std::string quantity;
  double value;
  double std_err;
  std::string meta;
};

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct Fit {
  std::string quantity;
  RateReport report;
};

struct Result {
  std::string experiment;
  std::vector<Row> rows;
  std::vector<Check> checks;
  std::vector<Fit> fits;
  double seconds = 0.0;

  bool passed() const;
  void row(long n, std::string quantity, double value, double std_err = 0.0, std::string meta = {});
  void check(std::string name, bool pass, std::string detail = {});
};

struct Experiment {
  std::string name;
  std::string anchor;  // label of the result in the paper it reproduces
  int criterion;       // acceptance criterion number
  std::string summary;
  std::function<Result(const Config&)> run;
};

const std::vector<Experiment>& registry();
const Experiment* find_experiment(const std::string& name);

/// Runs the experiment and stamps the wall-clock time.
Result run(const Config& config);

void write_csv(std::ostream& os, const Result& result);
/// JSON summary: checks, fits, rows, wall-clock and the resolved configuration.
std::string summary_json(const Result& result, const Config& config);

/// Reads a JSON configuration object; unknown keys are rejected.
Config config_from_json(const std::string& text);
std::string config_to_json(const Config& config);

}  // namespace chaoslab::exp
