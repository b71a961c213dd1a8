#include "mtum/config.hpp"

#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mtum/boundary_spec.hpp"
#include "mtum/error.hpp"

namespace mtum {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& why) { throw Error(ErrorCode::ParseError, why); }

std::uint64_t positive_integer(const json& j, const char* key) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    fail(std::string("'") + key + "' must be a positive integer");
  }
  return j.get<std::uint64_t>();
}

double real(const json& j, const char* key) {
  if (!j.is_number()) fail(std::string("'") + key + "' must be a number");
  return j.get<double>();
}

SimulationConfig from_json(const json& doc) {
  if (!doc.is_object()) fail("config must be a JSON object");
  for (const char* key : {"theta", "boundaries", "windows", "sample_sizes"}) {
    if (!doc.contains(key)) fail(std::string("missing '") + key + "'");
  }

  std::vector<double> cuts;
  const json& b = doc.at("boundaries");
  SimulationConfig config;
  if (b.is_string()) {
    config.boundaries = parse_boundary_spec(b.get<std::string>());
  } else if (b.is_array()) {
    for (const auto& c : b) cuts.push_back(real(c, "boundaries"));
    if (!cuts.empty() && cuts.front() == 0.0) cuts.erase(cuts.begin());
    try {
      config.boundaries = GroupBoundaries(std::move(cuts));
    } catch (const Error& e) {
      fail(e.what());
    }
  } else {
    fail("'boundaries' must be a spec string or an array of cuts");
  }

  config.theta = real(doc.at("theta"), "theta");
  if (!(config.theta > 0.0)) fail("'theta' must be positive");

  const json& windows = doc.at("windows");
  if (!windows.is_array() || windows.empty()) fail("'windows' must be a non-empty array");
  for (const auto& w : windows) {
    if (w.is_array() && w.size() == 2) {
      config.windows.push_back({real(w[0], "windows"), real(w[1], "windows")});
    } else if (w.is_object() && w.contains("t") && w.contains("T")) {
      config.windows.push_back({real(w.at("t"), "t"), real(w.at("T"), "T")});
    } else {
      fail("each window must be [t, T] or {\"t\": .., \"T\": ..}");
    }
  }

  const json& sizes = doc.at("sample_sizes");
  if (!sizes.is_array() || sizes.empty()) fail("'sample_sizes' must be a non-empty array");
  for (const auto& n : sizes) config.sample_sizes.push_back(positive_integer(n, "sample_sizes"));

  if (doc.contains("replications_per_batch")) {
    config.replications_per_batch =
        positive_integer(doc.at("replications_per_batch"), "replications_per_batch");
  }
  if (doc.contains("batches")) config.batches = positive_integer(doc.at("batches"), "batches");
  config.seed = kDefaultSeed;
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned()) fail("'seed' must be a non-negative integer");
    config.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    const json& t = doc.at("threads");
    if (!t.is_number_unsigned()) fail("'threads' must be a non-negative integer");
    config.threads = t.get<unsigned>();
  }
  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) fail("'label' must be a string");
    config.label = doc.at("label").get<std::string>();
  }
  return config;
}

}  // namespace

SimulationConfig parse_simulation_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

SimulationConfig parse_simulation_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_simulation_config(in);
}

}  // namespace mtum
