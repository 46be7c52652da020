#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cshl/field.hpp"

namespace cshl {

/// Initial Higgs data. Every scenario sets phi_t0 = i omega phi0.
struct ScenarioSpec {
  std::string kind = "gaussian";  // zero | gaussian | plane_wave | winding | file
  double amplitude = 0.5;
  double sigma = 0.0;             // 0: L / 8
  double center1 = -1.0, center2 = -1.0;  // negative: grid center
  int q1 = 1, q2 = 0;             // carrier wave modes (gaussian, plane_wave)
  int winding = 1;
  double omega = 1.0;             // plane_wave ignores this and uses <k>
  double scale = 1.0;             // multiplies phi0 and phi_t0
  std::uint64_t seed = 0;         // perturbation seed (0: none)
  double noise = 0.0;             // band-limited perturbation amplitude
  std::filesystem::path file;     // state directory for kind = file
};

struct HiggsData {
  ScalarField phi0, phi_t0;
};

HiggsData make_scenario(const Grid& grid, const ScenarioSpec& spec);

/// (L/pi)^2 sum_j sin^2(pi (x_j - c_j) / L): squared distance on the torus, smooth and periodic.
double periodic_distance_sq(double x1, double x2, double c1, double c2, double length);

}  // namespace cshl
