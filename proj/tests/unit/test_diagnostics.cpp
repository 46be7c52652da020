#include <doctest.h>

#include "cshl/diagnostics.hpp"
#include "cshl/dynamics.hpp"
#include "cshl/errors.hpp"
#include "cshl/gauge.hpp"
#include "oracles.hpp"
#include "states.hpp"

using namespace cshl;

namespace {

// Re <f, g> by the rectangle rule
double real_inner(const ScalarField& f, const ScalarField& g) {
  const auto a = oracle::physical(f);
  const auto b = oracle::physical(g);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
  return s * f.grid().area() / double(a.size());
}

MonitorSeries series_of(std::vector<double> t, std::vector<double> l2, std::vector<double> kin) {
  MonitorSeries m;
  const std::size_t n = t.size();
  m.times = std::move(t);
  m.charge_l2 = std::move(l2);
  m.kinetic = std::move(kin);
  for (auto* c : {&m.energy, &m.charge, &m.i_t, &m.v1, &m.v2, &m.gauss, &m.lorenz}) c->assign(n, 0.0);
  return m;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("energy examples") {
  const Grid g(16, 5.0);
  const Potential v = Potential::standard();
  GaugeState s = GaugeState::zero(g);
  CHECK(energy(s, v) == 0.0);
  s.phi = ScalarField::constant(g, 1.0).with_real_flag(false);
  CHECK(std::abs(energy(s, v)) < 1e-14);
  for (double c : {0.3, 0.8, 1.4}) {
    s.phi = ScalarField::constant(g, c).with_real_flag(false);
    CHECK(energy(s, v) == doctest::Approx(g.area() * c * c * std::pow(1 - c * c, 2)).epsilon(1e-13));
  }
  // a pure carrier wave: |D_1 phi|^2 = k^2 |phi|^2 when A vanishes
  s.phi = ScalarField::plane_wave(g, 3, 0, 0.1);
  const double k = 3 * g.k0();
  const double r = 0.01;
  CHECK(energy(s, v) == doctest::Approx(g.area() * (k * k * r + r * (1 - r) * (1 - r))).epsilon(1e-12));
}

TEST_CASE("energy density integrates to the energy") {
  const Grid g(32, 7.0);
  const GaugeState s = fixture::compatible_state(g, 4);
  const Potential v = Potential::standard();
  const ScalarField e = energy_density(s, v);
  CHECK(e.max_imag() < 1e-14);
  CHECK(e.mean().real() * g.area() == doctest::Approx(energy(s, v)).epsilon(1e-13));
  // pointwise oracle
  double direct = 0.0;
  const auto phi = oracle::physical(s.phi);
  for (int mu = 0; mu < 3; ++mu) {
    const auto d = oracle::physical(covariant_derivative(s, mu));
    for (auto z : d) direct += std::norm(z);
  }
  for (auto z : phi) direct += v.value(std::norm(z));
  CHECK(direct * g.area() / (g.n() * g.n()) == doctest::Approx(energy(s, v)).epsilon(1e-12));
}

TEST_CASE("I(t) examples") {
  const Grid g(16, 4.0);
  GaugeState s = GaugeState::zero(g);
  CHECK(i_of_t(s) == 0.0);
  s.phi = ScalarField::constant(g, 0.5).with_real_flag(false);
  CHECK(i_of_t(s) == doctest::Approx(0.5 * g.length()));
  s.a[1] = ScalarField::constant(g, 2.0);
  // D_1 phi = -i A_1 phi up to sign, norm 2 * 0.5 * L
  CHECK(i_of_t(s) == doctest::Approx(0.5 * g.length() + 1.0 * g.length()));
  CHECK(covariant_kinetic(s) == doctest::Approx(g.area()));
}

TEST_CASE("I(t) against the covariant derivative norms") {
  const Grid g(32, 6.0);
  const GaugeState s = fixture::random_state(g, 3);
  double expect = s.phi.l2_norm(), kin = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    const double d = covariant_derivative(s, mu).l2_norm();
    expect += d;
    kin += d * d;
  }
  CHECK(i_of_t(s) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(covariant_kinetic(s) == doctest::Approx(kin).epsilon(1e-14));
}

TEST_CASE("monitor series validation") {
  MonitorSeries m = series_of({0, 1, 2}, {1, 1, 1}, {0, 0, 0});
  CHECK_NOTHROW(m.validate());
  MonitorSeries back = series_of({0, -1, -2}, {1, 1, 1}, {0, 0, 0});
  CHECK_NOTHROW(back.validate());
  MonitorSeries flat = series_of({0, 0, 1}, {1, 1, 1}, {0, 0, 0});
  CHECK_THROWS(flat.validate());
  m.v1.pop_back();
  CHECK_THROWS(m.validate());
}

TEST_CASE("energy inequality examples") {
  const MonitorSeries ok = series_of({0, 1, 2}, {4, 4, 4}, {1.0, 2.0, 2.9});
  CHECK(energy_inequality_check(ok, 0.0, 3.0));
  CHECK(energy_inequality_check(ok, 0.0, 3.0).worst_index == 2);
  const MonitorSeries bad = series_of({0, 1, 2}, {4, 4, 4}, {1.0, 3.5, 2.0});
  const BoundCheck b = energy_inequality_check(bad, 0.0, 3.0);
  CHECK_FALSE(b);
  CHECK(b.worst_index == 1);
  CHECK(b.worst_margin == doctest::Approx(-0.5));
  // alpha^2 ||phi||^2 absorbs the excess
  CHECK(energy_inequality_check(bad, 0.5, 3.0));
}

TEST_CASE("Gronwall bound examples") {
  // alpha = 0: ||phi(t)|| <= ||phi(0)|| + t sqrt|E0|
  const MonitorSeries lin = series_of({0, 1, 2}, {1, 3.9, 8.9}, {0, 0, 0});
  CHECK(gronwall_bound_check(lin, 0.0, 1.0));
  const MonitorSeries over = series_of({0, 1, 2}, {1, 4.2, 8.9}, {0, 0, 0});
  const BoundCheck b = gronwall_bound_check(over, 0.0, 1.0);
  CHECK_FALSE(b);
  CHECK(b.worst_index == 1);
  // alpha > 0: exp(2 alpha t)(||phi0||^2 + t |E0| / alpha)
  const double a = 0.5, e0 = 2.0;
  const double cap = std::exp(2 * a) * (1 + e0 / a);
  CHECK(gronwall_bound_check(series_of({0, 1}, {1, cap * 0.999}, {0, 0}), a, e0));
  CHECK_FALSE(gronwall_bound_check(series_of({0, 1}, {1, cap * 1.01}, {0, 0}), a, e0));
  // times count from the first record
  CHECK(gronwall_bound_check(series_of({5, 6}, {1, 3.9}, {0, 0}), 0.0, 1.0));
}

TEST_CASE("the charge rate equals 2 Re <phi, D_0 phi>") {
  const Grid g(32, 4.0 * std::numbers::pi);
  EvolveOptions o;
  o.store_states = true;
  const double dt = 2e-3;
  const Trajectory t = evolve(fixture::gaussian_state(g), 10 * dt, dt, Potential::standard(), SplitMode::inhom, o);
  const auto& q = t.monitors.charge_l2;
  for (int k : {2, 5, 8}) {
    const double fd = (q[k - 2] - 8 * q[k - 1] + 8 * q[k + 1] - q[k + 2]) / (12 * dt);
    const GaugeState& s = t.states[k];
    const double exact = 2.0 * real_inner(s.phi, covariant_derivative(s, 0));
    CHECK(fd == doctest::Approx(exact).epsilon(1e-6).scale(1e-6));
    CHECK(q[k] == doctest::Approx(std::pow(s.phi.l2_norm(), 2)).epsilon(1e-13));
  }
}

TEST_CASE("diagnostics are gauge invariant") {
  const Grid g(96, 9.0);
  const GaugeState s = fixture::compatible_state(g, 8);
  const GaugeFunction chi = fixture::smooth_gauge(g, 21, 4, 0.4);
  const GaugeState r = apply_gauge(s, chi);
  const Potential v = Potential::standard();
  CHECK(energy(r, v) == doctest::Approx(energy(s, v)).epsilon(1e-10));
  CHECK(i_of_t(r) == doctest::Approx(i_of_t(s)).epsilon(1e-10));
  CHECK(covariant_kinetic(r) == doctest::Approx(covariant_kinetic(s)).epsilon(1e-10));
  CHECK(relative_l2(energy_density(r, v), energy_density(s, v)) < 1e-9);
}

TEST_CASE("bounds hold along a short run") {
  const Grid g(32, 4.0 * std::numbers::pi);
  const GaugeState s0 = fixture::gaussian_state(g);
  const Potential v = Potential::standard();
  const Trajectory t = evolve(s0, 0.2, 0.01, v);
  const double e0 = energy(s0, v);
  CHECK(energy_inequality_check(t.monitors, 0.0, e0));
  CHECK(gronwall_bound_check(t.monitors, 0.0, e0));
  for (double e : t.monitors.energy) CHECK(e == doctest::Approx(e0).epsilon(1e-8));
}

}
