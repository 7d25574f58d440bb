#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <map>
#include <string>

#include "classical.hpp"
#include "core.hpp"
#include "io.hpp"
#include "sections.hpp"

namespace bundleqm::config {

using json = nlohmann::json;

/// Batch-run settings. JSON keys mirror the field names; every key is
/// optional and unknown keys are rejected.
///
///   {"m": 1, "omega": 1, "grid": {"half_width": 8, "points": 257},
///    "fock_truncation": 32, "quadrature_order": 128,
///    "tolerances": {"ccr": 1e-4}, "output_dir": "bundleqm-out",
///    "convention": "mathematical"}
///
/// The grid extends half_width * w in x and half_width / w in p.
struct RunConfig {
  double m = 1.0;
  double omega = 1.0;
  double grid_half_width = 8.0;
  std::size_t grid_points = 257;
  std::size_t fock_truncation = 32;
  std::size_t quadrature_order = 128;
  std::map<std::string, double> tolerances;
  std::string output_dir = "bundleqm-out";
  FrequencyConvention convention = FrequencyConvention::mathematical;

  OscillatorParams params() const { return OscillatorParams(m, omega); }

  Grid2D grid() const {
    const double w = params().w();
    return {{-grid_half_width * w, grid_half_width * w, grid_points},
            {-grid_half_width / w, grid_half_width / w, grid_points}};
  }

  double tolerance(const std::string& key, double fallback) const {
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }

  void validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); };
    if (!(m > 0.0) || !std::isfinite(m)) fail("m must be positive");
    if (!(omega > 0.0) || !std::isfinite(omega)) fail("omega must be positive");
    if (!(grid_half_width > 0.0)) fail("grid.half_width must be positive");
    if (grid_points < 3) fail("grid.points must be at least 3");
    if (quadrature_order < 2 * fock_truncation + 2)
      fail("quadrature_order must be at least 2 * fock_truncation + 2");
    for (const auto& [k, v] : tolerances)
      if (!(v > 0.0)) fail("tolerance '" + k + "' must be positive");
    if (output_dir.empty()) fail("output_dir is empty");
  }
};

inline const char* to_string(FrequencyConvention c) {
  return c == FrequencyConvention::mathematical ? "mathematical" : "physical";
}

inline FrequencyConvention parse_convention(const std::string& s) {
  if (s == "mathematical") return FrequencyConvention::mathematical;
  if (s == "physical") return FrequencyConvention::physical;
  throw Error(ErrorKind::ConfigError, "convention must be 'mathematical' or 'physical'");
}

inline RunConfig from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");
  RunConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const json& v = it.value();
      if (k == "m") c.m = v.get<double>();
      else if (k == "omega") c.omega = v.get<double>();
      else if (k == "fock_truncation") c.fock_truncation = v.get<std::size_t>();
      else if (k == "quadrature_order") c.quadrature_order = v.get<std::size_t>();
      else if (k == "output_dir") c.output_dir = v.get<std::string>();
      else if (k == "convention") c.convention = parse_convention(v.get<std::string>());
      else if (k == "tolerances") c.tolerances = v.get<std::map<std::string, double>>();
      else if (k == "grid") {
        for (auto g = v.begin(); g != v.end(); ++g) {
          if (g.key() == "half_width") c.grid_half_width = g.value().get<double>();
          else if (g.key() == "points") c.grid_points = g.value().get<std::size_t>();
          else throw Error(ErrorKind::ConfigError, "unknown grid key '" + g.key() + "'");
        }
      } else {
        throw Error(ErrorKind::ConfigError, "unknown config key '" + k + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("config value has the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

inline json to_json(const RunConfig& c) {
  return {{"m", c.m},
          {"omega", c.omega},
          {"grid", {{"half_width", c.grid_half_width}, {"points", c.grid_points}}},
          {"fock_truncation", c.fock_truncation},
          {"quadrature_order", c.quadrature_order},
          {"tolerances", c.tolerances},
          {"output_dir", c.output_dir},
          {"convention", to_string(c.convention)}};
}

inline RunConfig load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_text(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, path.string() + ": " + e.what());
  }
  return from_json(j);
}

/// BUNDLEQM_OUT, when set and non-empty, replaces the configured directory.
inline std::filesystem::path output_root(const RunConfig& c) {
  if (const char* env = std::getenv("BUNDLEQM_OUT"); env && *env) return env;
  return c.output_dir;
}

/// UTC stamp such as 20260101T120000Z.
inline std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

/// <root>/run-<id>, created if needed. The id defaults to the UTC stamp;
/// pass a fixed id for reproducible paths.
inline std::filesystem::path run_directory(const RunConfig& c, const std::string& run_id = {}) {
  const std::string id = run_id.empty() ? utc_stamp() : run_id;
  if (id.find('/') != std::string::npos || id == "." || id == "..")
    throw Error(ErrorKind::ConfigError, "run id must be a plain name");
  const auto dir = output_root(c) / ("run-" + id);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

}  // namespace bundleqm::config
