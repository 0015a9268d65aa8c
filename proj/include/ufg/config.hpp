#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ufg/space.hpp"

namespace ufg {

// Four-point constant of H^2 estimated by the delta-estimate command
// (sup of sampled defects times 1.5); config/h2.json carries the same value.
inline constexpr double kCalibratedDelta = 1.03972;

struct SearchConfig {
  double low_size = 100.0;     // stop descent when |S|_x <= low_size * delta
  double long_part = 50.0;     // S0 = { a : |ax - x| >= long_part * delta }
  double gromov_test = 20.0;   // case-1 threshold on (a1 x . a x)_x
  double move = 20.0;          // descent step toward a1 x
  double drop = 10.0;          // required size drop per step
  double m_coefficient = 722.0;
  double separation_eps = 380.0;
  int spectrum_len = 6;
  int fallback_len = 4;
  int separation_radius = 3;
  int max_iter = 10000;
  long long max_m = 65536;
  std::vector<HalfPlanePoint> basepoints{{0.0, 1.0}, {0.0, 4.0}, {0.0, 0.25}, {1.0, 1.0}, {-1.0, 1.0}};
};

struct BudgetConfig {
  std::size_t memory_bytes = std::size_t{1} << 30;
  std::size_t element_bits = std::size_t{1} << 22;
};

struct Config {
  double delta = kCalibratedDelta;
  double step = 1e-2;
  double tau = 1e-9;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  SearchConfig search;
  BudgetConfig budget;
};

// Missing keys keep their defaults; unknown keys and bad values throw InvalidInput.
Config config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Config& c);
Config load_config(const std::string& path);

// Stable hash of the canonical JSON serialization.
std::uint64_t config_hash(const Config& c);

// Path of the shipped config; the built-in defaults when it is unreadable.
std::string default_config_path();
Config load_default_config();

// UFG_MEMORY_BUDGET (bytes, optional K/M/G suffix) overrides the fallback.
std::size_t memory_budget_from_env(std::size_t fallback);

std::string hex64(std::uint64_t v);

}  // namespace ufg
