#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "radial_sw/radial_sw.hpp"

namespace rsw::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeakSettings {
  double t_c = 0.5;
  double h_r = 0.3;
  double h_t = 0.3;
  double eps0 = 1e-2;
  int halvings = 6;
};

struct VerifySettings {
  bool entropy = true;
  bool conservation = true;
  std::optional<WeakSettings> weak;
  int times = 20;
  std::optional<double> r_max;  // truncation radius for Q and M
};

struct OracleSettings {
  std::vector<int> N{1000};
  double r_max = 5.0;
  std::vector<double> times;
};

struct Scenario {
  std::string name = "scenario";
  PseudoRiemannData data;
  double t_max = 10.0;
  std::vector<double> r_grid;
  std::vector<double> t_grid;
  VerifySettings verify;
  OracleSettings oracle;
  std::set<std::string> expect_fail;
  std::filesystem::path out_dir = ".";
};

namespace detail {

inline const json& need(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return need(j, key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

/// A grid is either an explicit array or {"from", "to", "count"}.
inline std::vector<double> grid(const json& j, const char* key) {
  const json& g = need(j, key);
  std::vector<double> out;
  if (g.is_array()) {
    for (const auto& x : g) {
      if (!x.is_number()) throw ConfigError(std::string("grid '") + key + "' must hold numbers");
      out.push_back(x.get<double>());
    }
  } else if (g.is_object()) {
    const double a = get<double>(g, "from");
    const double b = get<double>(g, "to");
    const int k = get<int>(g, "count");
    if (k < 1) throw ConfigError(std::string("grid '") + key + "': count must be >= 1");
    for (int i = 0; i < k; ++i) out.push_back(k == 1 ? a : a + (b - a) * i / (k - 1));
  } else {
    throw ConfigError(std::string("grid '") + key + "' must be an array or a range");
  }
  if (out.empty()) throw ConfigError(std::string("grid '") + key + "' is empty");
  if (!std::is_sorted(out.begin(), out.end())) throw ConfigError(std::string("grid '") + key + "' is not sorted");
  return out;
}

}  // namespace detail

inline Scenario parse_scenario(const json& j, bool need_data = true) {
  using namespace detail;
  if (!j.is_object()) throw ConfigError("config root must be an object");
  if (get<int>(j, "schema_version") != kSchemaVersion) {
    throw ConfigError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  Scenario s;
  s.name = get_or<std::string>(j, "name", s.name);

  if (need_data || j.contains("data")) {
    const json& d = need(j, "data");
    s.data.n = get<int>(d, "n");
    s.data.R = get<double>(d, "R");
    s.data.rho_l = get<double>(d, "rho_l");
    s.data.u_l = get<double>(d, "u_l");
    s.data.rho_r = get<double>(d, "rho_r");
    s.data.u_r = get<double>(d, "u_r");
    try {
      s.data.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }

  s.t_max = get_or<double>(j, "t_max", s.t_max);
  if (!(s.t_max > 0.0)) throw ConfigError("t_max must be > 0");

  if (j.contains("sample")) {
    const json& g = j.at("sample");
    s.r_grid = grid(g, "r");
    s.t_grid = grid(g, "t");
    if (s.r_grid.front() < 0.0) throw ConfigError("sample r grid must be >= 0");
    if (s.t_grid.front() < 0.0 || s.t_grid.back() > s.t_max) throw ConfigError("sample t grid must lie in [0, t_max]");
  }

  if (j.contains("verify")) {
    const json& v = j.at("verify");
    s.verify.entropy = get_or<bool>(v, "entropy", true);
    s.verify.conservation = get_or<bool>(v, "conservation", true);
    s.verify.times = get_or<int>(v, "times", 20);
    if (s.verify.times < 2) throw ConfigError("verify.times must be >= 2");
    if (v.contains("r_max")) s.verify.r_max = get<double>(v, "r_max");
    if (v.contains("weak") && !v.at("weak").is_boolean()) {
      const json& w = v.at("weak");
      WeakSettings ws;
      ws.t_c = get_or<double>(w, "t_c", ws.t_c);
      ws.h_r = get_or<double>(w, "h_r", ws.h_r);
      ws.h_t = get_or<double>(w, "h_t", ws.h_t);
      ws.eps0 = get_or<double>(w, "eps0", ws.eps0);
      ws.halvings = get_or<int>(w, "halvings", ws.halvings);
      if (!(ws.h_r > 0.0 && ws.h_t > 0.0 && ws.eps0 > 0.0) || ws.halvings < 1) {
        throw ConfigError("verify.weak: widths and eps0 must be > 0, halvings >= 1");
      }
      s.verify.weak = ws;
    } else if (get_or<bool>(v, "weak", false)) {
      s.verify.weak = WeakSettings{};
    }
  }

  if (j.contains("expect_fail")) {
    for (const auto& x : j.at("expect_fail")) {
      if (!x.is_string()) throw ConfigError("expect_fail must list check names");
      s.expect_fail.insert(x.get<std::string>());
    }
  }

  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    s.oracle.N = get_or<std::vector<int>>(o, "N", s.oracle.N);
    s.oracle.r_max = get_or<double>(o, "r_max", s.oracle.r_max);
    s.oracle.times = grid(o, "times");
    if (s.oracle.N.empty()) throw ConfigError("oracle.N is empty");
    for (int n : s.oracle.N) {
      if (n < 2) throw ConfigError("oracle.N entries must be >= 2");
    }
    if (!(s.oracle.r_max > s.data.R)) throw ConfigError("oracle.r_max must exceed R");
    if (s.oracle.times.front() < 0.0) throw ConfigError("oracle times must be >= 0");
  }

  if (j.contains("output")) s.out_dir = get_or<std::string>(j.at("output"), "dir", ".");
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& path, bool need_data = true) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_scenario(j, need_data);
}

}  // namespace rsw::cli
