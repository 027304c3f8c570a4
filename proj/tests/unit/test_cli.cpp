#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "chaoslab/error.hpp"
#include "chaoslab/experiments.hpp"

using namespace chaoslab;

TEST_CASE("registry covers every criterion once") {
  const auto& reg = exp::registry();
  CHECK(reg.size() == 9);
  std::set<int> criteria;
  std::set<std::string> names;
  for (const auto& e : reg) {
    criteria.insert(e.criterion);
    names.insert(e.name);
    CHECK(!e.anchor.empty());
    CHECK(exp::find_experiment(e.name) == &e);
  }
  CHECK(criteria.size() == 9);
  CHECK(*criteria.begin() == 1);
  CHECK(*criteria.rbegin() == 9);
  CHECK(names.count("poincare-rate") == 1);
  CHECK(exp::find_experiment("poincare-rate")->anchor == "estim:Poincaré2");
  CHECK(exp::find_experiment("nope") == nullptr);
}

TEST_CASE("CSV output is deterministic for a fixed seed") {
  exp::Config c;
  c.experiment = "identities";
  std::ostringstream a, b;
  exp::write_csv(a, exp::run(c));
  exp::write_csv(b, exp::run(c));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("experiment,N,quantity,value,stderr,meta\n", 0) == 0);
}

TEST_CASE("configuration JSON round trip") {
  exp::Config c;
  c.experiment = "clt-rate";
  c.ns = {4, 8, 16};
  c.seed = 7;
  c.density = "uniform";
  const auto back = exp::config_from_json(exp::config_to_json(c));
  CHECK(back.experiment == c.experiment);
  CHECK(back.ns == c.ns);
  CHECK(back.seed == 7);
  CHECK(back.density == "uniform");
  CHECK_THROWS(exp::config_from_json(R"({"experiment": "clt-rate", "bogus": 1})"));
}

TEST_CASE("summary JSON carries checks and configuration") {
  exp::Config c;
  c.experiment = "identities";
  const auto r = exp::run(c);
  const auto js = exp::summary_json(r, c);
  CHECK(js.find("\"checks\"") != std::string::npos);
  CHECK(js.find("identities") != std::string::npos);
}

TEST_CASE("custom grid files are read, standardized and keyed by content") {
  const auto dir = std::filesystem::temp_directory_path() / "chaoslab-unit-custom";
  std::filesystem::create_directories(dir);
  const auto path = dir / "laplace.txt";
  {
    std::ofstream out(path);
    out.precision(17);
    const double half = 8.0, h = 2 * half / 1024;
    for (int i = 0; i < 1024; ++i) {
      const double x = -half + i * h;
      out << x << ' ' << std::exp(-std::abs(x) * std::sqrt(2.0)) << '\n';
    }
  }
  exp::Config c;
  c.experiment = "conditioned-products";
  c.density = "custom";
  c.custom_grid = path.string();
  c.ns = {32, 64, 128, 256};
  c.cache_dir = (dir / "cache").string();
  const auto r = exp::run(c);
  CHECK(r.passed());
  bool keyed = false;
  for (const auto& e : std::filesystem::directory_iterator(dir / "cache"))
    keyed = keyed || e.path().filename().string().rfind("custom_", 0) == 0;
  CHECK(keyed);

  c.custom_grid = (dir / "missing.txt").string();
  CHECK_THROWS_AS(exp::run(c), Error);
  std::filesystem::remove_all(dir);
}
