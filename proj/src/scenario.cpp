#include "cshl/scenario.hpp"

#include <cmath>
#include <numbers>

#include "cshl/errors.hpp"
#include "cshl/state.hpp"

namespace cshl {

double periodic_distance_sq(double x1, double x2, double c1, double c2, double length) {
  const double pi = std::numbers::pi;
  const double s1 = std::sin(pi * (x1 - c1) / length), s2 = std::sin(pi * (x2 - c2) / length);
  return (length / pi) * (length / pi) * (s1 * s1 + s2 * s2);
}

HiggsData make_scenario(const Grid& grid, const ScenarioSpec& spec) {
  const double L = grid.length();
  const double sigma = spec.sigma > 0.0 ? spec.sigma : L / 8.0;
  const double c1 = spec.center1 >= 0.0 ? spec.center1 : L / 2.0;
  const double c2 = spec.center2 >= 0.0 ? spec.center2 : L / 2.0;
  const double a = spec.amplitude;
  double omega = spec.omega;
  const cplx i(0.0, 1.0);

  ScalarField phi = ScalarField::zeros(grid, false);
  if (spec.kind == "zero") {
  } else if (spec.kind == "gaussian") {
    const double k1 = grid.k0() * spec.q1, k2 = grid.k0() * spec.q2;
    phi = ScalarField::from_function(grid, [&](double x1, double x2) {
      const double d2 = periodic_distance_sq(x1, x2, c1, c2, L);
      return a * std::exp(-d2 / (sigma * sigma)) * std::polar(1.0, k1 * x1 + k2 * x2);
    });
  } else if (spec.kind == "plane_wave") {
    const double k1 = grid.k0() * spec.q1, k2 = grid.k0() * spec.q2;
    omega = std::sqrt(1.0 + k1 * k1 + k2 * k2);
    phi = ScalarField::plane_wave(grid, spec.q1, spec.q2, a);
  } else if (spec.kind == "winding") {
    // (X + iY)^w with X, Y periodic displacements keeps the vortex smooth on the torus.
    const int w = std::abs(spec.winding);
    const double sign = spec.winding < 0 ? -1.0 : 1.0;
    const double h = L / (2.0 * std::numbers::pi);
    phi = ScalarField::from_function(grid, [&](double x1, double x2) {
      const double X = h * std::sin((x1 - c1) / h), Y = h * std::sin((x2 - c2) / h);
      const double d2 = periodic_distance_sq(x1, x2, c1, c2, L);
      return a * std::pow(cplx(X, sign * Y) / sigma, w) * std::exp(-d2 / (sigma * sigma));
    });
  } else if (spec.kind == "file") {
    const GaugeState s = read_state(spec.file);
    if (!(s.grid() == grid)) throw InvalidRange("scenario file grid does not match the configured grid");
    return {s.phi * spec.scale, s.phi_t * spec.scale};
  } else {
    throw InvalidRange("unknown scenario '" + spec.kind + "'");
  }

  if (spec.noise != 0.0 && spec.seed != 0) {
    const ScalarField r = random_band_limited(grid, grid.n() / 8, spec.seed, false);
    phi += r * (spec.noise / r.l2_norm());  // noise is the L2 norm of the perturbation
  }
  phi = phi * spec.scale;
  const ScalarField phi_t = phi * (i * omega);
  return {phi.with_real_flag(false), phi_t.with_real_flag(false)};
}

}  // namespace cshl
