#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cshl/dynamics.hpp"
#include "cshl/scenario.hpp"

namespace cshl {

/// Everything a run needs. Sections in the config file mirror the nesting here:
///
///   [grid]      n, L
///   [time]      T, dt, record_every
///   [run]       mode, strict_zero_mode, normalize_gauge, output_dir
///   [potential] coeffs = [0, 1, -2, 1], alpha
///   [scenario]  kind, amplitude, sigma, center1, center2, q1, q2, winding,
///               omega, scale, seed, noise, file
///   [checks]    energy_tol, constraint_tol, data_tol
///   [scan]      b_min, b_max, b_step, b_prime, eps, s_min, s_max, s_step, s_resolution
///   [probe]     samples, seed, p, max_angle
struct RunConfig {
  struct GridSection {
    int n = 128;
    double length = 16.0 * 3.14159265358979323846;
  } grid;
  struct TimeSection {
    double t_final = 1.0;
    double dt = 1e-3;
    int record_every = 10;
  } time;
  SplitMode mode = SplitMode::inhom;
  bool strict_zero_mode = false;
  bool normalize_gauge = false;
  std::filesystem::path output_dir = "cshl-out";
  std::vector<double> potential = {0.0, 1.0, -2.0, 1.0};  // r (1 - r)^2
  double alpha = 0.0;
  ScenarioSpec scenario;
  struct Checks {
    double energy_tol = 1e-6;
    double constraint_tol = 1e-6;
    double data_tol = 1e-10;
  } checks;
  struct Scan {
    double b_min = 0.5125, b_max = 0.9875, b_step = 0.0125;
    double b_prime = 0.5001, eps = 1e-4;
    double s_min = 0.0, s_max = 1.0, s_step = 0.025;
    double s_resolution = 1e-4;
  } scan;
  struct Probe {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    double p = 4.0;
    double max_angle = 10.0;
  } probe;

  std::map<std::string, int> source_lines;  // key -> line it was last set from (0: command line)

  ZeroModePolicy policy() const noexcept {
    return strict_zero_mode ? ZeroModePolicy::strict : ZeroModePolicy::legislate;
  }
  Potential make_potential() const;

  /// Applies one `section.key = value` assignment; line is reported in errors (0: command line).
  void set(const std::string& key, const std::string& value, int line = 0);
  /// Throws ConfigError naming the first offending field.
  void validate() const;
  /// Fully resolved config in the file format; parse_config(to_toml()) reproduces *this.
  std::string to_toml() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace cshl
