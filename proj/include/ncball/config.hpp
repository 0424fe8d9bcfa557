#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace ncball {

/// Numerical tolerances and size caps shared by every module.
///
/// `Config{}` holds the built-in defaults. The CLI layers a JSON config file
/// and the NCBALL_TOL / NCBALL_SEED environment variables on top of them.
struct Config {
  /// Joint spectral radii within this distance of 1 count as boundary points.
  double boundary_tol = 1e-9;
  /// Relative singular-value threshold for rank decisions.
  double rank_tol = 1e-10;
  /// Similarities with a larger condition number are flagged.
  double cond_cap = 1e8;
  /// Relative tolerance for generator vanishing.
  double vanish_tol = 1e-10;
  double coisometry_tol = 1e-8;
  /// Slack for sampled maximum-principle / Schwarz probes.
  double probe_tol = 1e-6;
  double root_of_unity_tol = 1e-10;
  /// Jordan-Holder reconstruction residual, relative to the row norm.
  double jh_residual = 1e-8;
  std::size_t max_root_order = 64;
  std::size_t fock_dim_cap = 200000;
  std::size_t amplification_cap = std::size_t{1} << 16;
  std::uint64_t seed = 20170213;
};

/// Reads a JSON object whose keys match the field names above; missing keys
/// keep the values of `base`. Throws InputError on malformed files.
Config load_config_file(const std::string& path, const Config& base = {});

/// Values taken from NCBALL_TOL and NCBALL_SEED, when set.
struct EnvironmentOverrides {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

/// Throws InputError if a variable is set but does not parse.
EnvironmentOverrides read_environment();

}  // namespace ncball
