#pragma once

// Test fixtures: random smooth states and Lorenz-compatible data.

#include <cstdint>
#include <random>

#include "cshl/gauge.hpp"
#include "cshl/scenario.hpp"
#include "cshl/state.hpp"

namespace fixture {

using namespace cshl;

/// Random smooth state with no constraint relation between its parts.
inline GaugeState random_state(const Grid& g, std::uint64_t seed, int band = 0) {
  const int m = band > 0 ? band : g.n() / 6;
  GaugeState s = GaugeState::zero(g);
  for (int mu = 0; mu < 3; ++mu) {
    s.a[mu] = random_band_limited(g, m, seed * 16 + mu, true) * 0.3;
    s.a_t[mu] = random_band_limited(g, m, seed * 16 + 3 + mu, true) * 0.3;
  }
  s.phi = random_band_limited(g, m, seed * 16 + 6, false) * 0.5;
  s.phi_t = random_band_limited(g, m, seed * 16 + 7, false) * 0.5;
  return s;
}

/// Gaussian Higgs data with a random centre, width, carrier and amplitude.
inline ScenarioSpec random_gaussian_spec(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScenarioSpec spec;
  spec.kind = "gaussian";
  spec.amplitude = 0.2 + 0.6 * u(rng);
  spec.sigma = g.length() * (0.08 + 0.08 * u(rng));
  spec.center1 = g.length() * u(rng);
  spec.center2 = g.length() * u(rng);
  spec.q1 = static_cast<int>(u(rng) * 5) - 2;
  spec.q2 = static_cast<int>(u(rng) * 5) - 2;
  spec.omega = 0.5 + u(rng);
  return spec;
}

/// Lorenz- and Gauss-compatible state built from random Gaussian data.
inline GaugeState compatible_state(const Grid& g, std::uint64_t seed,
                                   const Potential& v = Potential::standard()) {
  const HiggsData d = make_scenario(g, random_gaussian_spec(g, seed));
  return build_compatible_data(d.phi0, d.phi_t0, v);
}

/// Smooth gauge function with chi(0) and d_t chi(0) of sup norm `amp`.
inline GaugeFunction smooth_gauge(const Grid& g, std::uint64_t seed, int band = 3, double amp = 0.3) {
  auto part = [&](std::uint64_t k) {
    const ScalarField f = random_band_limited(g, band, k, true);
    return f * (amp / f.max_abs());
  };
  return GaugeFunction(part(seed), part(seed + 1));
}

/// Default gaussian scenario, compatible.
inline GaugeState gaussian_state(const Grid& g, double scale = 1.0) {
  ScenarioSpec spec;
  spec.scale = scale;
  const HiggsData d = make_scenario(g, spec);
  return build_compatible_data(d.phi0, d.phi_t0, Potential::standard());
}

}  // namespace fixture
