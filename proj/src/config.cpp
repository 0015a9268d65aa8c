#include "ufg/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

#include "ufg/errors.hpp"
#include "ufg/rational.hpp"

#ifndef UFG_DEFAULT_CONFIG
#define UFG_DEFAULT_CONFIG "config/h2.json"
#endif

namespace ufg {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw InvalidInput("unknown config key '" + where + it.key() + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidInput("config key '" + where + key + "' has the wrong type");
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput("config: " + what);
}

}  // namespace

Config config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  reject_unknown(j, {"version", "delta", "step", "tau", "seed", "threads", "search", "budget", "calibration"}, "");
  Config c;
  read(j, "delta", c.delta, "");
  read(j, "step", c.step, "");
  read(j, "tau", c.tau, "");
  read(j, "seed", c.seed, "");
  read(j, "threads", c.threads, "");
  if (j.contains("search")) {
    const json& s = j.at("search");
    require(s.is_object(), "search must be an object");
    reject_unknown(s,
                   {"low_size", "long_part", "gromov_test", "move", "drop", "m_coefficient", "separation_eps",
                    "spectrum_len", "fallback_len", "separation_radius", "max_iter", "max_m", "basepoints"},
                   "search.");
    SearchConfig& o = c.search;
    read(s, "low_size", o.low_size, "search.");
    read(s, "long_part", o.long_part, "search.");
    read(s, "gromov_test", o.gromov_test, "search.");
    read(s, "move", o.move, "search.");
    read(s, "drop", o.drop, "search.");
    read(s, "m_coefficient", o.m_coefficient, "search.");
    read(s, "separation_eps", o.separation_eps, "search.");
    read(s, "spectrum_len", o.spectrum_len, "search.");
    read(s, "fallback_len", o.fallback_len, "search.");
    read(s, "separation_radius", o.separation_radius, "search.");
    read(s, "max_iter", o.max_iter, "search.");
    read(s, "max_m", o.max_m, "search.");
    if (s.contains("basepoints")) {
      std::vector<std::vector<double>> pts;
      read(s, "basepoints", pts, "search.");
      o.basepoints.clear();
      for (const auto& p : pts) {
        require(p.size() == 2, "basepoints entries must be [re, im]");
        o.basepoints.push_back(make_half_plane_point(p[0], p[1]));
      }
      require(!o.basepoints.empty(), "basepoints must be nonempty");
    }
  }
  if (j.contains("budget")) {
    const json& b = j.at("budget");
    require(b.is_object(), "budget must be an object");
    reject_unknown(b, {"memory_bytes", "element_bits"}, "budget.");
    read(b, "memory_bytes", c.budget.memory_bytes, "budget.");
    read(b, "element_bits", c.budget.element_bits, "budget.");
  }
  require(std::isfinite(c.delta) && c.delta >= 0.0, "delta must be finite and nonnegative");
  require(std::isfinite(c.step) && c.step > 0.0, "step must be positive");
  require(std::isfinite(c.tau) && c.tau >= 0.0, "tau must be nonnegative");
  require(c.threads >= 0, "threads must be nonnegative");
  require(c.search.spectrum_len >= 0 && c.search.fallback_len >= 0 && c.search.separation_radius >= 0,
          "search lengths must be nonnegative");
  require(c.search.max_iter > 0, "max_iter must be positive");
  require(c.search.max_m >= 1, "max_m must be at least 1");
  return c;
}

json to_json(const Config& c) {
  json pts = json::array();
  for (const auto& p : c.search.basepoints) pts.push_back({p.re, p.im});
  const SearchConfig& s = c.search;
  return json{{"delta", c.delta},
              {"step", c.step},
              {"tau", c.tau},
              {"seed", c.seed},
              {"threads", c.threads},
              {"search",
               {{"low_size", s.low_size},
                {"long_part", s.long_part},
                {"gromov_test", s.gromov_test},
                {"move", s.move},
                {"drop", s.drop},
                {"m_coefficient", s.m_coefficient},
                {"separation_eps", s.separation_eps},
                {"spectrum_len", s.spectrum_len},
                {"fallback_len", s.fallback_len},
                {"separation_radius", s.separation_radius},
                {"max_iter", s.max_iter},
                {"max_m", s.max_m},
                {"basepoints", pts}}},
              {"budget", {{"memory_bytes", c.budget.memory_bytes}, {"element_bits", c.budget.element_bits}}}};
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config file '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

std::uint64_t config_hash(const Config& c) {
  json j = to_json(c);
  j.erase("threads");  // does not affect results
  return fnv1a(j.dump());
}

std::string default_config_path() { return UFG_DEFAULT_CONFIG; }

Config load_default_config() {
  std::ifstream probe(default_config_path());
  if (!probe) return Config{};
  return load_config(default_config_path());
}

std::size_t memory_budget_from_env(std::size_t fallback) {
  const char* v = std::getenv("UFG_MEMORY_BUDGET");
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (end == v) throw InvalidInput("UFG_MEMORY_BUDGET is not a number");
  unsigned long long mult = 1;
  if (*end == 'K' || *end == 'k') mult = 1ULL << 10;
  if (*end == 'M' || *end == 'm') mult = 1ULL << 20;
  if (*end == 'G' || *end == 'g') mult = 1ULL << 30;
  if (mult != 1) ++end;
  if (*end != '\0') throw InvalidInput("UFG_MEMORY_BUDGET has a bad suffix");
  return static_cast<std::size_t>(n * mult);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace ufg
