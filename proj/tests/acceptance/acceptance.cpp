// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Runs the full-size problems (N = 128), so expect a few minutes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cshl/config.hpp"
#include "cshl/diagnostics.hpp"
#include "cshl/dynamics.hpp"
#include "cshl/gauge.hpp"
#include "cshl/grid.hpp"
#include "cshl/norms.hpp"
#include "cshl/runner.hpp"
#include "cshl/spectral.hpp"
#include "states.hpp"

using namespace cshl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* spec, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, spec, args...);
  return buf;
}

const Grid& big_grid() {
  static const Grid g(128, 16.0 * std::numbers::pi);
  return g;
}

Trajectory quiet_evolve(const GaugeState& s0, double T, double dt, int record_every,
                        SplitMode mode = SplitMode::inhom) {
  EvolveOptions o;
  o.record_every = record_every;
  o.warn = [](const std::string&) {};
  return evolve(s0, T, dt, Potential::standard(), mode, o);
}

double energy_drift(const MonitorSeries& m) {
  const double e0 = m.energy.front();
  double worst = 0.0;
  for (double e : m.energy) worst = std::max(worst, std::abs(e - e0) / std::max(1.0, std::abs(e0)));
  return worst;
}

// The reference run shared by criteria 2, 3 and 8.
const Trajectory& reference_run() {
  static const Trajectory t = quiet_evolve(fixture::gaussian_state(big_grid()), 1.0, 1e-3, 10);
  return t;
}

Outcome threshold() {
  const auto t0 = Clock::now();
  RunConfig cfg;
  cfg.output_dir = std::filesystem::temp_directory_path() / "cshl-acceptance-scan";
  std::ostringstream log;
  const RunReport r = run_norm_scan(cfg, log);
  const double elapsed = seconds_since(t0);
  const double s = scan_minimal_s(0.625, 0.5 + 1e-4, 1e-4);
  const bool ok = std::abs(s - 0.375) <= 1e-3 && r.ok() && elapsed < 1.0;
  return {ok, fmt("minimal s = %.5f at b = 5/8 (full scan %.3f s)", s, elapsed)};
}

Outcome constraints() {
  const GaugeState s0 = fixture::gaussian_state(big_grid());
  const Monitors m0 = constraint_monitors(s0);
  const MonitorSeries& m = reference_run().monitors;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    worst = std::max({worst, m.v1[i], m.v2[i], m.gauss[i], m.lorenz[i]});
  return {worst < 1e-6 && m0.max() < 1e-10, fmt("initial %.2e, max over run %.2e", m0.max(), worst)};
}

Outcome energy_conservation() {
  const double d1 = energy_drift(reference_run().monitors);
  const Trajectory half = quiet_evolve(fixture::gaussian_state(big_grid()), 1.0, 5e-4, 20);
  const double d2 = energy_drift(half.monitors);
  const double ratio = d1 / std::max(d2, 1e-300);
  return {d1 < 1e-6 && ratio >= 8.0, fmt("drift %.2e (dt = 1e-3), %.2e (dt = 5e-4), ratio %.2f", d1, d2, ratio)};
}

Outcome gauge_covariance() {
  const Grid& g = big_grid();
  const GaugeState s0 = fixture::gaussian_state(g);
  const GaugeFunction chi = fixture::smooth_gauge(g, 41, 3, 0.3);
  const double T = 0.5, dt = 2e-3;
  const GaugeState a = quiet_evolve(apply_gauge(s0, chi), T, dt, 1000).final_state;
  const GaugeState b = apply_gauge(quiet_evolve(s0, T, dt, 1000).final_state, chi);
  const InvarianceReport r = invariance_report(b, a);
  const double worst = std::max({r.d_curvature, r.d_current, r.d_energy, r.d_abs_phi});
  return {worst < 1e-6, fmt("F %.1e, J %.1e, E %.1e, |phi| %.1e", r.d_curvature, r.d_current, r.d_energy,
                            r.d_abs_phi)};
}

Outcome null_structure() {
  const Grid g(64, 16.0 * std::numbers::pi);
  double worst = 0.0, worst_b3 = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GaugeState s = fixture::compatible_state(g, seed);
    for (SplitMode mode : {SplitMode::inhom, SplitMode::hom_gauge}) {
      const BilinearTerms b = bilinear_terms(split(s, mode));
      // A_mu d^mu phi from the truncated inputs, as the stepper sees them
      const ScalarField direct =
          dealias(dealias(s.a[0]) * dealias(s.phi_t) - dealias(s.a[1]) * dealias(spatial_derivative(s.phi, 1)) -
                  dealias(s.a[2]) * dealias(spatial_derivative(s.phi, 2)));
      worst = std::max(worst, relative_l2(b.b1 - b.b2 - b.b3, direct));
      if (mode == SplitMode::hom_gauge) worst_b3 = std::max(worst_b3, b.b3.l2_norm() / direct.l2_norm());
    }
  }
  return {worst < 1e-8 && worst_b3 < 1e-8, fmt("max residual %.2e, hom-gauge b3 share %.2e", worst, worst_b3)};
}

Outcome decompositions() {
  const Grid g(64, 10.0);
  double dc = 0.0, rt = 0.0, rz = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ScalarField a1 = random_band_limited(g, 20, seed, true), a2 = random_band_limited(g, 20, seed + 1000, true);
    for (SplitMode mode : {SplitMode::inhom, SplitMode::hom_gauge}) {
      const DivCurl d = divcurl_decompose(a1, a2, mode);
      dc = std::max({dc, relative_l2(d.df[0] + d.cf[0] + d.smooth[0], a1),
                     relative_l2(d.df[1] + d.cf[1] + d.smooth[1], a2)});
    }
    const GaugeState s = fixture::random_state(g, seed, 20);
    for (SplitMode mode : {SplitMode::inhom, SplitMode::hom_gauge}) {
      const GaugeState r = unsplit(split(s, mode));
      for (int mu = 0; mu < 3; ++mu)
        rt = std::max({rt, relative_l2(r.a[mu], s.a[mu]), relative_l2(r.a_t[mu], s.a_t[mu])});
      rt = std::max({rt, relative_l2(r.phi, s.phi), relative_l2(r.phi_t, s.phi_t)});
    }
    ScalarField f = random_band_limited(g, 20, seed + 2000, false);
    rz = std::max(rz, riesz_identity_residual(f, RieszKind::inhom));
    f -= ScalarField::constant(g, f.mean());
    rz = std::max(rz, riesz_identity_residual(f, RieszKind::hom));
  }
  return {std::max({dc, rt, rz}) < 1e-12, fmt("div/curl %.1e, round trip %.1e, Riesz %.1e", dc, rt, rz)};
}

Outcome linear_regime() {
  const Grid& g = big_grid();
  const GaugeState s0 = fixture::gaussian_state(g, 1e-6);
  const double T = 1.0;
  const GaugeState s1 = quiet_evolve(s0, T, 1e-2, 1000).final_state;
  const auto w = wave_tables(g);
  const ScalarField p0 = s0.phi.to_spectral(), q0 = s0.phi_t.to_spectral();
  std::vector<cplx> exact(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k = w->kbracket[i];
    exact[i] = std::cos(k * T) * p0[i] + std::sin(k * T) / k * q0[i];
  }
  const ScalarField ref = ScalarField(g, exact, Representation::spectral).to_physical();
  const double err = relative_l2(s1.phi, ref);
  return {err < 1e-8, fmt("relative error %.2e", err)};
}

Outcome bounds() {
  const Trajectory& t = reference_run();
  const double e0 = t.monitors.energy.front();
  const BoundCheck a = energy_inequality_check(t.monitors, 0.0, e0);
  const BoundCheck b = gronwall_bound_check(t.monitors, 0.0, e0);
  return {a.holds && b.holds,
          fmt("energy margin %.3e, Gronwall margin %.3e over %zu records", a.worst_margin, b.worst_margin,
              t.monitors.size())};
}

Outcome probes() {
  const std::vector<int> scales{1, 2, 4, 8};
  const int trials = 20;
  std::string detail = "growth";
  bool ok = true;
  const Exponents bad[] = {{-1, 0, 0, 0, 0.6, 0.6}, {0, -0.5, -0.5, 0, 0.6, 0.6}, {-0.25, -0.25, -0.25, -0.5, 0.5, 0.5}};
  for (const Exponents& e : bad) {
    const ProductRatio r = empirical_product_ratio(e, trials, 1, scales);
    const double growth = r.scale_max.back() / r.scale_max.front();
    ok = ok && growth >= 4.0;
    detail += fmt(" %.1fx", growth);
  }
  // admissible: no scale may exceed 1.5 times the scale-1 value
  detail += "; admissible";
  const auto catalog = reduction_catalog(0.45, 0.625, 0.5001, 1e-4);
  for (const char* name : {"qform-1", "bilinear-1", "poly-step-hi"}) {
    const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const Reduction& r) { return r.name == name; });
    if (it == catalog.end()) return {false, std::string("missing reduction ") + name};
    const ProductRatio r = empirical_product_ratio(it->e, trials, 1, scales);
    const double peak = *std::max_element(r.scale_max.begin(), r.scale_max.end());
    ok = ok && peak <= 1.5 * r.scale_max.front();
    detail += fmt(" %s %.2f", name, r.scale_max.back() / r.scale_max.front());
  }
  const double m1 = angle_bound_check(1000000, 1).max_constant;
  const double m2 = angle_bound_check(1000000, 2).max_constant;
  ok = ok && m1 <= 10.0 && m2 <= 10.0 && std::abs(m1 - m2) <= 0.2 * std::min(m1, m2);
  detail += fmt("; angle %.4f / %.4f", m1, m2);
  return {ok, detail};
}

Outcome convergence() {
  const GaugeState s0 = fixture::gaussian_state(big_grid());
  const double T = 0.5;
  auto run = [&](double dt) { return quiet_evolve(s0, T, dt, 1000).final_state; };
  const GaugeState u1 = run(0.05), u2 = run(0.025), u4 = run(0.0125);
  auto dist = [](const GaugeState& a, const GaugeState& b) {
    double s = 0.0;
    for (int mu = 0; mu < 3; ++mu) s += std::pow((a.a[mu] - b.a[mu]).l2_norm(), 2);
    s += std::pow((a.phi - b.phi).l2_norm(), 2);
    return std::sqrt(s);
  };
  const double order = std::log2(dist(u1, u2) / dist(u2, u4));
  return {order >= 3.8, fmt("observed order %.2f", order)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"threshold", threshold},
      {"constraint propagation", constraints},
      {"energy conservation", energy_conservation},
      {"gauge covariance", gauge_covariance},
      {"null structure", null_structure},
      {"decompositions", decompositions},
      {"linear regime", linear_regime},
      {"energy bounds", bounds},
      {"product law and angle probes", probes},
      {"integrator order", convergence},
  };
  int failures = 0, k = 0;
  for (const auto& [name, check] : criteria) {
    ++k;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
