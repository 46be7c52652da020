#include <doctest.h>

#include "cshl/diagnostics.hpp"
#include "cshl/gauge.hpp"
#include "oracles.hpp"
#include "states.hpp"

using namespace cshl;

namespace {

GaugeFunction random_gauge(const Grid& g, std::uint64_t seed, int band = 4) {
  return fixture::smooth_gauge(g, seed, band, 0.5);
}

ScalarField divergence(const GaugeState& s) {
  return spatial_derivative(s.a[1], 1) + spatial_derivative(s.a[2], 2);
}

}  // namespace

TEST_SUITE("gauge") {

TEST_CASE("zero potential gives zero gauge function") {
  const Grid g(16, 5.0);
  const GaugeFunction chi = solve_gauge_function(GaugeState::zero(g));
  for (double t : {0.0, 0.7}) CHECK(chi.chi(t).max_abs() == 0.0);
}

TEST_CASE("single-mode d'Alembert solution") {
  const Grid g(16, 2.0 * std::numbers::pi);
  GaugeState s = GaugeState::zero(g);
  const int m1 = 2, m2 = 1;
  auto cosine = [&](double x1, double x2) { return std::cos(m1 * x1 + m2 * x2); };
  s.a[0] = oracle::sample(g, cosine, true);
  const GaugeFunction chi = solve_gauge_function(s);
  const double k = std::hypot(m1, m2);
  for (double t : {0.0, 0.3, 1.7}) {
    const ScalarField expect =
        oracle::sample(g, [&](double x1, double x2) { return -std::sin(t * k) / k * cosine(x1, x2); }, true);
    const ScalarField got = chi.chi(t);
    CHECK(oracle::l2(oracle::physical(got - expect)) < 1e-13 * g.n());
    const ScalarField rate =
        oracle::sample(g, [&](double x1, double x2) { return -std::cos(t * k) * cosine(x1, x2); }, true);
    CHECK(relative_l2(chi.chi_t(t), rate) < 1e-13);
  }
}

TEST_CASE("divergence-free potentials need no spatial gauge part") {
  const Grid g(32, 7.0);
  const ScalarField psi = random_band_limited(g, 8, 3, true);
  GaugeState s = GaugeState::zero(g);
  s.a[1] = spatial_derivative(psi, 2);
  s.a[2] = -spatial_derivative(psi, 1);
  s.a[0] = random_band_limited(g, 8, 4, true);
  const GaugeFunction chi = solve_gauge_function(s);
  CHECK(chi.f().max_abs() < 1e-13);
  CHECK(relative_l2(chi.g(), -s.a[0]) < 1e-13);
}

TEST_CASE("the gauge function solves the free wave equation") {
  const Grid g(32, 2.0 * std::numbers::pi);
  const GaugeFunction chi = random_gauge(g, 5, 3);
  const double t = 0.4, d = 1e-3;
  // fourth-order second difference in time
  const ScalarField tt = (chi.chi(t + 2 * d) * -1.0 + chi.chi(t + d) * 16.0 - chi.chi(t) * 30.0 +
                          chi.chi(t - d) * 16.0 - chi.chi(t - 2 * d)) *
                         (1.0 / (12 * d * d));
  CHECK(relative_l2(tt, chi.laplacian(t)) < 1e-8);
  // the mean is affine in time
  CHECK(std::abs(chi.chi(2.0).mean() - (chi.f().mean() + 2.0 * chi.g().mean())) < 1e-13);
}

TEST_CASE("gauge function matches the divergence of A") {
  const Grid g(32, 9.0);
  const GaugeState s = fixture::random_state(g, 7);
  const GaugeFunction chi = solve_gauge_function(s);
  ScalarField target = -divergence(s);  // d^j A_j
  target -= ScalarField::constant(g, target.mean());
  CHECK(relative_l2(chi.laplacian(0.0), target) < 1e-10);
}

TEST_CASE("constant gauge rotates the phase only") {
  const Grid g(16, 4.0);
  const GaugeState s = fixture::random_state(g, 2);
  const GaugeState r = apply_gauge(s, GaugeFunction::constant(g, 0.8));
  for (int mu = 0; mu < 3; ++mu) {
    CHECK(relative_l2(r.a[mu], s.a[mu]) < 1e-15);
    CHECK(relative_l2(r.a_t[mu], s.a_t[mu]) < 1e-15);
  }
  CHECK(relative_l2(r.phi, s.phi * std::polar(1.0, 0.8)) < 1e-15);
  CHECK(relative_l2(r.phi_t, s.phi_t * std::polar(1.0, 0.8)) < 1e-15);
}

TEST_CASE("gauging with chi then -chi is the identity") {
  const Grid g(32, 6.0);
  GaugeState s = fixture::random_state(g, 9);
  s.time = 0.35;
  const GaugeFunction chi = random_gauge(g, 11);
  const GaugeState back = apply_gauge(apply_gauge(s, chi), chi.negated());
  CHECK(relative_l2(back.phi, s.phi) < 1e-12);
  CHECK(relative_l2(back.phi_t, s.phi_t) < 1e-12);
  for (int mu = 0; mu < 3; ++mu) {
    CHECK(relative_l2(back.a[mu], s.a[mu]) < 1e-12);
    CHECK(relative_l2(back.a_t[mu], s.a_t[mu]) < 1e-12);
  }
}

TEST_CASE("the solved gauge normalizes the potential") {
  const Grid g(32, 9.0);
  const GaugeState compatible = fixture::compatible_state(g, 3);
  const GaugeState moved = apply_gauge(compatible, random_gauge(g, 13));
  CHECK(divergence(moved).max_abs() > 1e-3);
  const GaugeState fixed = apply_gauge(moved, solve_gauge_function(moved));
  CHECK(fixed.a[0].max_abs() < 1e-10);
  CHECK(divergence(fixed).max_abs() < 1e-10);
  // and lands on the compatible potential built from J_0(0)
  CHECK(relative_l2(fixed.a[1], compatible.a[1]) < 1e-8);
  CHECK(relative_l2(fixed.a[2], compatible.a[2]) < 1e-8);
}

TEST_CASE("gauging preserves the Lorenz condition and gauge-invariant quantities") {
  // exp(i chi) phi is not band-limited; at n = 32 invariance only holds to 1e-3
  const Grid g(96, 9.0);
  const GaugeState s = fixture::compatible_state(g, 5);
  const GaugeState r = apply_gauge(s, random_gauge(g, 17));
  const ScalarField lorenz = r.a_t[0] - divergence(r);
  CHECK(lorenz.l2_norm() < 1e-8);
  const InvarianceReport rep = invariance_report(s, r);
  CHECK(rep.d_curvature < 1e-10);
  CHECK(rep.d_current < 1e-10);
  CHECK(rep.d_energy < 1e-10);
  CHECK(rep.d_abs_phi < 1e-10);
  const Potential v = Potential::standard();
  CHECK(energy(r, v) == doctest::Approx(energy(s, v)).epsilon(1e-10));
  const auto j1 = current(s), j2 = current(r);
  for (int mu = 0; mu < 3; ++mu) CHECK(relative_l2(j2.j[mu], j1.j[mu]) < 1e-10);
}

TEST_CASE("a non-gauge change is detected") {
  const Grid g(32, 9.0);
  const GaugeState s = fixture::compatible_state(g, 6);
  GaugeState t = s;
  for (int mu = 0; mu < 3; ++mu) {
    t.a[mu] = t.a[mu] * 2.0;
    t.a_t[mu] = t.a_t[mu] * 2.0;
  }
  CHECK(invariance_report(s, t).d_curvature > 0.1);
}

}
