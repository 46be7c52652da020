#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cshl/config.hpp"
#include "cshl/diagnostics.hpp"
#include "cshl/dynamics.hpp"
#include "cshl/errors.hpp"
#include "cshl/norms.hpp"
#include "cshl/runner.hpp"
#include "cshl/spectral.hpp"

namespace py = pybind11;
using namespace cshl;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Grid grid_of(const CArray& a, double length) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("expected a square 2-d array");
  return Grid(static_cast<int>(a.shape(0)), length);
}

ScalarField to_field(const CArray& a, double length, bool real = false) {
  const Grid g = grid_of(a, length);
  std::vector<cplx> v(a.data(), a.data() + a.size());
  return ScalarField(g, std::move(v), Representation::physical, real);
}

py::array to_array(const ScalarField& f, bool real) {
  const ScalarField p = f.to_physical();
  const auto n = static_cast<py::ssize_t>(p.grid().n());
  const auto v = p.values();
  if (real) {
    py::array_t<double> out({n, n});
    auto* d = out.mutable_data();
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i].real();
    return out;
  }
  CArray out({n, n});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict state_to_dict(const GaugeState& s) {
  py::dict d;
  py::list a, a_t;
  for (int mu = 0; mu < 3; ++mu) {
    a.append(to_array(s.a[mu], true));
    a_t.append(to_array(s.a_t[mu], true));
  }
  d["a"] = a;
  d["a_t"] = a_t;
  d["phi"] = to_array(s.phi, false);
  d["phi_t"] = to_array(s.phi_t, false);
  d["time"] = s.time;
  d["length"] = s.grid().length();
  return d;
}

GaugeState state_from_dict(const py::dict& d) {
  const double length = d["length"].cast<double>();
  const auto a = d["a"].cast<std::vector<CArray>>();
  const auto a_t = d["a_t"].cast<std::vector<CArray>>();
  if (a.size() != 3 || a_t.size() != 3) throw py::value_error("a and a_t need three components");
  GaugeState s = GaugeState::zero(grid_of(d["phi"].cast<CArray>(), length));
  for (int mu = 0; mu < 3; ++mu) {
    s.a[mu] = to_field(a[mu], length, true);
    s.a_t[mu] = to_field(a_t[mu], length, true);
  }
  s.phi = to_field(d["phi"].cast<CArray>(), length);
  s.phi_t = to_field(d["phi_t"].cast<CArray>(), length);
  if (d.contains("time")) s.time = d["time"].cast<double>();
  s.validate();
  return s;
}

py::dict monitors_to_dict(const MonitorSeries& m) {
  py::dict d;
  d["t"] = m.times;
  d["energy"] = m.energy;
  d["charge"] = m.charge;
  d["charge_l2"] = m.charge_l2;
  d["kinetic"] = m.kinetic;
  d["i_t"] = m.i_t;
  d["v1"] = m.v1;
  d["v2"] = m.v2;
  d["gauss"] = m.gauss;
  d["lorenz"] = m.lorenz;
  return d;
}

RunConfig make_config(const std::string& text, const std::vector<std::string>& overrides) {
  RunConfig cfg = parse_config(text);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(kv, 0, "expected key=value");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

// Returns (passed, summary json text, log text).
py::tuple run_command(const std::string& command, const RunConfig& cfg) {
  std::ostringstream log;
  RunReport r;
  {
    py::gil_scoped_release release;
    if (command == "simulate")
      r = run_simulation(cfg, log);
    else if (command == "scan-norms")
      r = run_norm_scan(cfg, log);
    else if (command == "check-data")
      r = run_check_data(cfg, log);
    else if (command == "probe")
      r = run_probe(cfg, log);
    else
      throw py::value_error("unknown command '" + command + "'");
  }
  return py::make_tuple(r.ok(), r.summary.dump(), log.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudo-spectral Chern-Simons-Higgs solver and wave-Sobolev tools";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidRange>(m, "InvalidRange", PyExc_ValueError);
  py::register_exception<StepUnstable>(m, "StepUnstable", PyExc_ArithmeticError);
  py::register_exception<SingularZeroMode>(m, "SingularZeroMode", PyExc_ArithmeticError);

  py::class_<RunConfig>(m, "Config")
      .def(py::init([](const std::string& text, const std::vector<std::string>& overrides) {
             return make_config(text, overrides);
           }),
           py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{})
      .def("set", [](RunConfig& c, const std::string& k, const std::string& v) { c.set(k, v); })
      .def("validate", &RunConfig::validate)
      .def("to_toml", &RunConfig::to_toml)
      .def_property(
          "output_dir", [](const RunConfig& c) { return c.output_dir.string(); },
          [](RunConfig& c, const std::string& p) { c.output_dir = p; });

  m.def("run", &run_command, py::arg("command"), py::arg("config"));

  m.def("initial_state", [](const RunConfig& c) { return state_to_dict(initial_state(c)); });
  m.def(
      "evolve",
      [](const py::dict& state, double T, double dt, const std::string& mode, int record_every) {
        const GaugeState s0 = state_from_dict(state);
        EvolveOptions o;
        o.record_every = record_every;
        o.warn = [](const std::string&) {};
        const SplitMode sm = split_mode_from_string(mode);
        const Trajectory t = [&] {
          py::gil_scoped_release release;
          return evolve(s0, T, dt, Potential::standard(), sm, o);
        }();
        return py::make_tuple(state_to_dict(t.final_state), monitors_to_dict(t.monitors));
      },
      py::arg("state"), py::arg("T"), py::arg("dt"), py::arg("mode") = "inhom", py::arg("record_every") = 1);
  m.def("energy", [](const py::dict& s) { return energy(state_from_dict(s), Potential::standard()); });
  m.def("constraint_max", [](const py::dict& s) { return constraint_monitors(state_from_dict(s)).max(); });

  m.def(
      "sobolev_norm",
      [](const CArray& f, double length, double s, bool homogeneous) {
        return sobolev_norm(to_field(f, length), s, homogeneous);
      },
      py::arg("f"), py::arg("length"), py::arg("s"), py::arg("homogeneous") = false);
  m.def(
      "lp_norm", [](const CArray& f, double length, double p) { return lp_norm(to_field(f, length), p); },
      py::arg("f"), py::arg("length"), py::arg("p"));
  m.def(
      "riesz",
      [](const CArray& f, double length, int j, bool homogeneous) {
        const auto mult = homogeneous ? Multiplier::riesz_hom(j) : Multiplier::riesz_inhom(j);
        return to_array(apply_multiplier(to_field(f, length), mult), false);
      },
      py::arg("f"), py::arg("length"), py::arg("j"), py::arg("homogeneous") = true);
  m.def(
      "frac_lap",
      [](const CArray& f, double length, double s, bool homogeneous) {
        const auto mult = homogeneous ? Multiplier::frac_lap_hom(s) : Multiplier::frac_lap_inhom(s);
        return to_array(apply_multiplier(to_field(f, length), mult), false);
      },
      py::arg("f"), py::arg("length"), py::arg("s"), py::arg("homogeneous") = false);

  m.def("condition_set_threshold", &condition_set_threshold, py::arg("b"), py::arg("b_prime") = 0.5001,
        py::arg("eps") = 1e-4);
  m.def(
      "scan_minimal_s",
      [](double b, double b_prime, double eps, double resolution) {
        return scan_minimal_s(b, b_prime, eps, 0.0, 1.0, resolution);
      },
      py::arg("b"), py::arg("b_prime") = 0.5001, py::arg("eps") = 1e-4, py::arg("resolution") = 1e-4);
  m.def(
      "product_law",
      [](double s0, double s1, double s2, double b0, double b1, double b2) {
        const ProductLawReport r = product_law_report({s0, s1, s2, b0, b1, b2});
        return py::make_tuple(r.holds, r.binding());
      },
      py::arg("s0"), py::arg("s1"), py::arg("s2"), py::arg("b0"), py::arg("b1"), py::arg("b2"));
  m.def(
      "angle_bound_check",
      [](std::size_t samples, std::uint64_t seed) {
        py::gil_scoped_release release;
        return angle_bound_check(samples, seed).max_constant;
      },
      py::arg("samples") = 100000, py::arg("seed") = 1);
}
