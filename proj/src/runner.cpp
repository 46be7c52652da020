#include "cshl/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cshl/diagnostics.hpp"
#include "cshl/errors.hpp"
#include "cshl/gauge.hpp"
#include "cshl/norms.hpp"
#include "cshl/scenario.hpp"

namespace cshl {

namespace {

using json = nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void prepare(const RunConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);
  write_text(cfg.output_dir / "config.toml", cfg.to_toml());
}

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::object();
  for (const auto& c : checks) out[c.name] = {{"passed", c.passed}, {"value", c.value}, {"limit", c.limit}};
  return out;
}

void finish(RunReport& r, const RunConfig& cfg, const char* file, std::ostream& log) {
  r.summary["checks"] = checks_json(r.checks);
  r.summary["passed"] = r.ok();
  r.summary["config"] = cfg.to_toml();
  write_text(cfg.output_dir / file, r.summary.dump(2) + "\n");
  for (const auto& c : r.checks)
    log << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << c.value << " (limit " << c.limit << ")\n";
}

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::vector<double> b_grid(const RunConfig::Scan& sc) {
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double b = sc.b_min + k * sc.b_step;
    if (b > sc.b_max + 1e-12) break;
    if (!(b > 0.5 && b < 1.0)) throw InvalidRange("scan: b = " + fmt(b) + " lies outside (1/2, 1)");
    out.push_back(b);
  }
  return out;
}

}  // namespace

bool RunReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

GaugeState initial_state(const RunConfig& cfg) {
  const Grid grid(cfg.grid.n, cfg.grid.length);
  const HiggsData data = make_scenario(grid, cfg.scenario);
  GaugeState s = build_compatible_data(data.phi0, data.phi_t0, cfg.make_potential(), cfg.policy());
  if (cfg.normalize_gauge) s = apply_gauge(s, solve_gauge_function(s, cfg.policy()));
  return s;
}

RunReport run_simulation(const RunConfig& cfg, std::ostream& log) {
  prepare(cfg);
  const Potential V = cfg.make_potential();
  const GaugeState s0 = initial_state(cfg);
  const double initial = constraint_monitors(s0).max();
  const double e0 = energy(s0, V);

  EvolveOptions opts;
  opts.record_every = cfg.time.record_every;
  opts.policy = cfg.policy();
  opts.warn = [&log](const std::string& w) { log << "warning: " << w << "\n"; };

  RunReport r;
  Trajectory traj{{}, {}, 0.0, 0, 1, cfg.mode, s0};
  try {
    traj = evolve(s0, cfg.time.t_final, cfg.time.dt, V, cfg.mode, opts);
  } catch (const StepUnstable& e) {
    r.summary["error"] = e.what();
    r.summary["unstable_time"] = e.time();
    r.checks.push_back({"stable", false, e.time(), cfg.time.t_final});
    finish(r, cfg, "summary.json", log);
    throw;
  }
  const MonitorSeries& m = traj.monitors;
  write_monitors_csv(cfg.output_dir / "monitors.csv", m);

  double drift = 0.0, cmax = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    drift = std::max(drift, std::abs(m.energy[i] - e0) / std::max(1.0, std::abs(e0)));
    cmax = std::max({cmax, m.v1[i], m.v2[i], m.gauss[i], m.lorenz[i]});
  }
  const BoundCheck ineq = energy_inequality_check(m, V.alpha(), e0);
  const BoundCheck gron = gronwall_bound_check(m, V.alpha(), e0);

  r.checks = {
      {"initial_residual", initial < cfg.checks.data_tol, initial, cfg.checks.data_tol},
      {"energy_drift", drift < cfg.checks.energy_tol, drift, cfg.checks.energy_tol},
      {"constraint_max", cmax < cfg.checks.constraint_tol, cmax, cfg.checks.constraint_tol},
      {"energy_inequality", ineq.holds, ineq.worst_margin, 0.0},
      {"gronwall", gron.holds, gron.worst_margin, 0.0},
  };
  r.summary["mode"] = to_string(cfg.mode);
  r.summary["steps"] = traj.steps;
  r.summary["dt_used"] = traj.dt;
  r.summary["records"] = m.size();
  r.summary["energy_initial"] = e0;
  r.summary["energy_drift"] = drift;
  r.summary["constraint_max"] = cmax;
  r.summary["initial_residual"] = initial;
  r.summary["energy_inequality_ok"] = ineq.holds;
  r.summary["gronwall_ok"] = gron.holds;
  r.summary["charge_l2_final"] = m.charge_l2.back();
  finish(r, cfg, "summary.json", log);
  return r;
}

RunReport run_norm_scan(const RunConfig& cfg, std::ostream& log) {
  prepare(cfg);
  const auto& sc = cfg.scan;
  if (!(sc.b_prime > 0.5 && sc.b_prime < 1.0)) throw InvalidRange("scan: b_prime must lie in (1/2, 1)");
  const std::vector<double> bs = b_grid(sc);

  RunReport r;
  std::ofstream th(cfg.output_dir / "thresholds.csv");
  th << "b,b_prime,eps,threshold,scan_minimal_s\n";
  json rows = json::array();
  for (double b : bs) {
    const double t = condition_set_threshold(b, sc.b_prime, sc.eps);
    const double s = scan_minimal_s(b, sc.b_prime, sc.eps, 0.0, 1.0, sc.s_resolution);
    th << fmt(b) << ',' << fmt(sc.b_prime) << ',' << fmt(sc.eps) << ',' << fmt(t, "%.10g") << ','
       << fmt(s, "%.10g") << '\n';
    rows.push_back({{"b", b}, {"threshold", t}, {"scan_minimal_s", std::isnan(s) ? json() : json(s)}});
    if (std::abs(b - 0.625) < 1e-9) {
      r.checks.push_back({"golden_threshold", std::abs(t - 0.375) <= 1e-3, t, 0.375});
      r.checks.push_back({"golden_scan", std::abs(s - 0.375) <= 1e-3, s, 0.375});
    }
  }

  std::ofstream pl(cfg.output_dir / "product_law.csv");
  pl << "s,b,b_prime,holds,binding_condition\n";
  std::size_t admissible = 0, total = 0;
  for (double b : bs)
    for (long k = 0;; ++k) {
      const double s = sc.s_min + k * sc.s_step;
      if (s > sc.s_max + 1e-12) break;
      std::string binding;
      const bool holds = reductions_hold(s, b, sc.b_prime, sc.eps, &binding);
      pl << fmt(s) << ',' << fmt(b) << ',' << fmt(sc.b_prime) << ',' << (holds ? 1 : 0) << ",\"" << binding
         << "\"\n";
      admissible += holds;
      ++total;
    }
  r.summary["thresholds"] = rows;
  r.summary["grid_points"] = total;
  r.summary["admissible_points"] = admissible;
  finish(r, cfg, "scan.json", log);
  log << "scanned " << bs.size() << " values of b, " << total << " product-law points\n";
  return r;
}

RunReport run_check_data(const RunConfig& cfg, std::ostream& log) {
  prepare(cfg);
  const GaugeState s = initial_state(cfg);
  const Monitors m = constraint_monitors(s);
  const ConstraintResiduals c = constraint_residuals(s);
  RunReport r;
  r.summary["v1"] = m.v1;
  r.summary["v2"] = m.v2;
  r.summary["gauss"] = m.w;
  r.summary["lorenz"] = m.u;
  r.summary["charge"] = c.charge;
  r.summary["energy"] = energy(s, cfg.make_potential());
  r.checks.push_back({"initial_residual", m.max() < cfg.checks.data_tol, m.max(), cfg.checks.data_tol});
  finish(r, cfg, "check.json", log);
  return r;
}

RunReport run_probe(const RunConfig& cfg, std::ostream& log) {
  prepare(cfg);
  const GaugeState s = initial_state(cfg);
  const ProbeReport p = inequality_probes(s, cfg.probe.p);
  const AngleCheck a = angle_bound_check(cfg.probe.samples, cfg.probe.seed);
  RunReport r;
  r.summary["inequalities"] = {{"current", p.current},     {"holder", p.holder}, {"covariant", p.covariant},
                               {"gv", p.gv},               {"aprime", p.aprime}};
  r.summary["angle_max"] = a.max_constant;
  r.summary["angle_samples"] = a.samples;
  const bool finite = std::isfinite(p.current) && std::isfinite(p.holder) && std::isfinite(p.covariant) &&
                      std::isfinite(p.gv) && std::isfinite(p.aprime);
  r.checks.push_back({"ratios_finite", finite, finite ? 1.0 : 0.0, 1.0});
  r.checks.push_back({"angle_max", a.max_constant <= cfg.probe.max_angle, a.max_constant, cfg.probe.max_angle});
  finish(r, cfg, "probe.json", log);
  return r;
}

}  // namespace cshl
