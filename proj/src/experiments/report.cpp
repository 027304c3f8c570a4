#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "chaoslab/error.hpp"
#include "chaoslab/experiments.hpp"

namespace chaoslab::exp {

using nlohmann::json;

namespace {

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json fit_json(const RateReport& r) {
  return {{"ns", r.ns},
          {"values", r.values},
          {"slope", r.fitted_slope},
          {"intercept", r.fitted_intercept},
          {"slope_ci", {r.slope_ci.first, r.slope_ci.second}},
          {"residual_rms", r.residual_rms}};
}

}  // namespace

bool Result::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Result::row(long n, std::string quantity, double value, double std_err, std::string meta) {
  rows.push_back({n, std::move(quantity), value, std_err, std::move(meta)});
}

void Result::check(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

Result run(const Config& config) {
  const auto* e = find_experiment(config.experiment);
  require(e != nullptr, ErrorCode::invalid_argument, "unknown experiment '" + config.experiment + "'");
  const auto start = std::chrono::steady_clock::now();
  auto result = e->run(config);
  result.experiment = e->name;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_csv(std::ostream& os, const Result& result) {
  os << "experiment,N,quantity,value,stderr,meta\n";
  for (const auto& r : result.rows)
    os << result.experiment << ',' << r.n << ',' << csv_field(r.quantity) << ',' << number(r.value) << ','
       << number(r.std_err) << ',' << csv_field(r.meta) << '\n';
}

std::string summary_json(const Result& result, const Config& config) {
  json checks = json::array(), fits = json::array(), rows = json::array();
  for (const auto& c : result.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  for (const auto& f : result.fits) {
    auto j = fit_json(f.report);
    j["quantity"] = f.quantity;
    fits.push_back(std::move(j));
  }
  for (const auto& r : result.rows)
    rows.push_back({{"N", r.n}, {"quantity", r.quantity}, {"value", r.value}, {"stderr", r.std_err}, {"meta", r.meta}});
  json out = {{"experiment", result.experiment},
              {"passed", result.passed()},
              {"wall_clock_seconds", result.seconds},
              {"checks", checks},
              {"fits", fits},
              {"rows", rows},
              {"config", json::parse(config_to_json(config))}};
  return out.dump(2);
}

Config config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), ErrorCode::invalid_argument, "config must be a JSON object");
  Config c;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "experiment") c.experiment = v.get<std::string>();
      else if (key == "density") c.density = v.get<std::string>();
      else if (key == "custom_grid") c.custom_grid = v.get<std::string>();
      else if (key == "ns") c.ns = v.get<std::vector<int>>();
      else if (key == "mc_reps") c.mc_reps = v.get<std::size_t>();
      else if (key == "reference_size") c.reference_size = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "s") c.s = v.get<double>();
      else if (key == "k") c.k = v.get<double>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "exact") c.exact = v.get<bool>();
      else if (key == "cache_dir") c.cache_dir = v.get<std::string>();
      else fail(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      fail(ErrorCode::invalid_argument, "config key '" + key + "' has the wrong type");
    }
  }
  return c;
}

std::string config_to_json(const Config& c) {
  json j = {{"experiment", c.experiment}, {"density", c.density},     {"custom_grid", c.custom_grid},
            {"ns", c.ns},                 {"mc_reps", c.mc_reps},     {"reference_size", c.reference_size},
            {"seed", c.seed},             {"s", c.s},                 {"k", c.k},
            {"output", c.output},         {"format", c.format},       {"exact", c.exact},
            {"cache_dir", c.cache_dir}};
  return j.dump();
}

}  // namespace chaoslab::exp
