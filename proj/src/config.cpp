#include "ncball/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "json.hpp"
#include "ncball/errors.hpp"

namespace ncball {

namespace {

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

Config load_config_file(const std::string& path, const Config& base) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw InputError("config file '" + path + "' must hold a JSON object");

  static const std::set<std::string> known = {"boundary_tol", "rank_tol", "cond_cap", "vanish_tol",
                                               "coisometry_tol", "probe_tol", "root_of_unity_tol", "jh_residual",
                                               "max_root_order", "fock_dim_cap", "amplification_cap", "seed"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw InputError("config file '" + path + "': unknown key '" + key + "'");

  Config cfg = base;
  read_field(j, "boundary_tol", cfg.boundary_tol);
  read_field(j, "rank_tol", cfg.rank_tol);
  read_field(j, "cond_cap", cfg.cond_cap);
  read_field(j, "vanish_tol", cfg.vanish_tol);
  read_field(j, "coisometry_tol", cfg.coisometry_tol);
  read_field(j, "probe_tol", cfg.probe_tol);
  read_field(j, "root_of_unity_tol", cfg.root_of_unity_tol);
  read_field(j, "jh_residual", cfg.jh_residual);
  read_field(j, "max_root_order", cfg.max_root_order);
  read_field(j, "fock_dim_cap", cfg.fock_dim_cap);
  read_field(j, "amplification_cap", cfg.amplification_cap);
  read_field(j, "seed", cfg.seed);
  return cfg;
}

EnvironmentOverrides read_environment() {
  EnvironmentOverrides env;
  if (const char* tol = std::getenv("NCBALL_TOL"); tol && *tol) {
    char* end = nullptr;
    const double value = std::strtod(tol, &end);
    if (*end != '\0' || !(value > 0.0)) throw InputError("NCBALL_TOL must be a positive number");
    env.tol = value;
  }
  if (const char* seed = std::getenv("NCBALL_SEED"); seed && *seed) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(seed, &end, 10);
    if (*end != '\0') throw InputError("NCBALL_SEED must be an unsigned integer");
    env.seed = value;
  }
  return env;
}

}  // namespace ncball
