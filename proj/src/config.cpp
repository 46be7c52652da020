#include "cshl/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cshl/errors.hpp"

namespace cshl {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Drops a trailing '#' comment unless it sits inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

struct Reader {
  const std::string& key;
  const std::string& raw;
  int line;

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(key, line, what); }

  double real() const {
    const std::string v = trim(raw);
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) fail("expected a number, got '" + v + "'");
    if (!std::isfinite(out)) fail("value must be finite");
    return out;
  }
  long long integer() const {
    const std::string v = trim(raw);
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) fail("expected an integer, got '" + v + "'");
    return out;
  }
  std::uint64_t unsigned_integer() const {
    const long long v = integer();
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }
  bool boolean() const {
    const std::string v = trim(raw);
    if (v == "true") return true;
    if (v == "false") return false;
    fail("expected true or false, got '" + v + "'");
  }
  std::string string() const { return unquote(trim(raw)); }
  std::vector<double> list() const {
    std::string v = trim(raw);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail("expected a list like [0, 1, -2, 1]");
    v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;
      out.push_back(Reader{key, item, line}.real());
    }
    return out;
  }
};

using Setter = std::function<void(RunConfig&, const Reader&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n", [](RunConfig& c, const Reader& r) { c.grid.n = static_cast<int>(r.integer()); }},
      {"grid.L", [](RunConfig& c, const Reader& r) { c.grid.length = r.real(); }},
      {"time.T", [](RunConfig& c, const Reader& r) { c.time.t_final = r.real(); }},
      {"time.dt", [](RunConfig& c, const Reader& r) { c.time.dt = r.real(); }},
      {"time.record_every", [](RunConfig& c, const Reader& r) { c.time.record_every = static_cast<int>(r.integer()); }},
      {"run.mode",
       [](RunConfig& c, const Reader& r) {
         try {
           c.mode = split_mode_from_string(r.string());
         } catch (const std::exception&) {
           r.fail("expected inhom or homgauge");
         }
       }},
      {"run.strict_zero_mode", [](RunConfig& c, const Reader& r) { c.strict_zero_mode = r.boolean(); }},
      {"run.normalize_gauge", [](RunConfig& c, const Reader& r) { c.normalize_gauge = r.boolean(); }},
      {"run.output_dir", [](RunConfig& c, const Reader& r) { c.output_dir = r.string(); }},
      {"potential.coeffs", [](RunConfig& c, const Reader& r) { c.potential = r.list(); }},
      {"potential.alpha", [](RunConfig& c, const Reader& r) { c.alpha = r.real(); }},
      {"scenario.kind", [](RunConfig& c, const Reader& r) { c.scenario.kind = r.string(); }},
      {"scenario.amplitude", [](RunConfig& c, const Reader& r) { c.scenario.amplitude = r.real(); }},
      {"scenario.sigma", [](RunConfig& c, const Reader& r) { c.scenario.sigma = r.real(); }},
      {"scenario.center1", [](RunConfig& c, const Reader& r) { c.scenario.center1 = r.real(); }},
      {"scenario.center2", [](RunConfig& c, const Reader& r) { c.scenario.center2 = r.real(); }},
      {"scenario.q1", [](RunConfig& c, const Reader& r) { c.scenario.q1 = static_cast<int>(r.integer()); }},
      {"scenario.q2", [](RunConfig& c, const Reader& r) { c.scenario.q2 = static_cast<int>(r.integer()); }},
      {"scenario.winding", [](RunConfig& c, const Reader& r) { c.scenario.winding = static_cast<int>(r.integer()); }},
      {"scenario.omega", [](RunConfig& c, const Reader& r) { c.scenario.omega = r.real(); }},
      {"scenario.scale", [](RunConfig& c, const Reader& r) { c.scenario.scale = r.real(); }},
      {"scenario.seed", [](RunConfig& c, const Reader& r) { c.scenario.seed = r.unsigned_integer(); }},
      {"scenario.noise", [](RunConfig& c, const Reader& r) { c.scenario.noise = r.real(); }},
      {"scenario.file", [](RunConfig& c, const Reader& r) { c.scenario.file = r.string(); }},
      {"checks.energy_tol", [](RunConfig& c, const Reader& r) { c.checks.energy_tol = r.real(); }},
      {"checks.constraint_tol", [](RunConfig& c, const Reader& r) { c.checks.constraint_tol = r.real(); }},
      {"checks.data_tol", [](RunConfig& c, const Reader& r) { c.checks.data_tol = r.real(); }},
      {"scan.b_min", [](RunConfig& c, const Reader& r) { c.scan.b_min = r.real(); }},
      {"scan.b_max", [](RunConfig& c, const Reader& r) { c.scan.b_max = r.real(); }},
      {"scan.b_step", [](RunConfig& c, const Reader& r) { c.scan.b_step = r.real(); }},
      {"scan.b_prime", [](RunConfig& c, const Reader& r) { c.scan.b_prime = r.real(); }},
      {"scan.eps", [](RunConfig& c, const Reader& r) { c.scan.eps = r.real(); }},
      {"scan.s_min", [](RunConfig& c, const Reader& r) { c.scan.s_min = r.real(); }},
      {"scan.s_max", [](RunConfig& c, const Reader& r) { c.scan.s_max = r.real(); }},
      {"scan.s_step", [](RunConfig& c, const Reader& r) { c.scan.s_step = r.real(); }},
      {"scan.s_resolution", [](RunConfig& c, const Reader& r) { c.scan.s_resolution = r.real(); }},
      {"probe.samples", [](RunConfig& c, const Reader& r) { c.probe.samples = r.unsigned_integer(); }},
      {"probe.seed", [](RunConfig& c, const Reader& r) { c.probe.seed = r.unsigned_integer(); }},
      {"probe.p", [](RunConfig& c, const Reader& r) { c.probe.p = r.real(); }},
      {"probe.max_angle", [](RunConfig& c, const Reader& r) { c.probe.max_angle = r.real(); }},
  };
  return table;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value, int line) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(key, line, "unknown key");
  it->second(*this, Reader{key, value, line});
  source_lines[key] = line;
}

Potential RunConfig::make_potential() const { return Potential::polynomial(potential, alpha); }

void RunConfig::validate() const {
  auto check = [this](bool ok, const char* field, const std::string& what) {
    if (ok) return;
    const auto it = source_lines.find(field);
    throw ConfigError(field, it == source_lines.end() ? 0 : it->second, what);
  };
  check(grid.n % 2 == 0 && grid.n >= 8 && grid.n <= 4096, "grid.n", "must be even and within [8, 4096]");
  check(grid.length > 0.0, "grid.L", "must be positive");
  check(time.t_final > 0.0, "time.T", "must be positive");
  check(time.dt > 0.0, "time.dt", "must be positive");
  check(time.record_every >= 1, "time.record_every", "must be at least 1");
  check(!potential.empty() && potential[0] == 0.0, "potential.coeffs", "needs V(0) = 0, so the first coefficient must be 0");
  check(alpha >= 0.0, "potential.alpha", "must be non-negative");
  const auto& sc = scenario;
  check(sc.kind == "zero" || sc.kind == "gaussian" || sc.kind == "plane_wave" || sc.kind == "winding" ||
            sc.kind == "file",
        "scenario.kind", "expected zero, gaussian, plane_wave, winding or file");
  check(sc.amplitude >= 0.0, "scenario.amplitude", "must be non-negative");
  check(sc.sigma >= 0.0, "scenario.sigma", "must be non-negative (0 selects L/8)");
  check(sc.center1 < grid.length, "scenario.center1", "must lie inside the box (negative selects the center)");
  check(sc.center2 < grid.length, "scenario.center2", "must lie inside the box (negative selects the center)");
  check(std::abs(sc.q1) < grid.n / 3 && std::abs(sc.q2) < grid.n / 3, "scenario.q1",
        "carrier modes must stay below n/3");
  check(std::abs(sc.winding) <= 8, "scenario.winding", "must lie within [-8, 8]");
  check(sc.noise >= 0.0, "scenario.noise", "must be non-negative");
  check(sc.kind != "file" || !sc.file.empty(), "scenario.file", "required for kind = file");
  check(checks.energy_tol > 0.0, "checks.energy_tol", "must be positive");
  check(checks.constraint_tol > 0.0, "checks.constraint_tol", "must be positive");
  check(checks.data_tol > 0.0, "checks.data_tol", "must be positive");
  check(scan.b_step > 0.0, "scan.b_step", "must be positive");
  check(scan.s_step > 0.0, "scan.s_step", "must be positive");
  check(scan.s_resolution > 0.0, "scan.s_resolution", "must be positive");
  check(scan.eps > 0.0, "scan.eps", "must be positive");
  check(probe.samples >= 1, "probe.samples", "must be at least 1");
  check(probe.p > 2.0, "probe.p", "must exceed 2");
}

std::string RunConfig::to_toml() const {
  std::ostringstream o;
  o << "[grid]\nn = " << grid.n << "\nL = " << num(grid.length) << "\n\n";
  o << "[time]\nT = " << num(time.t_final) << "\ndt = " << num(time.dt) << "\nrecord_every = " << time.record_every
    << "\n\n";
  o << "[run]\nmode = " << quoted(to_string(mode)) << "\nstrict_zero_mode = " << (strict_zero_mode ? "true" : "false")
    << "\nnormalize_gauge = " << (normalize_gauge ? "true" : "false") << "\noutput_dir = " << quoted(output_dir.string())
    << "\n\n";
  o << "[potential]\ncoeffs = [";
  for (std::size_t i = 0; i < potential.size(); ++i) o << (i ? ", " : "") << num(potential[i]);
  o << "]\nalpha = " << num(alpha) << "\n\n";
  const auto& sc = scenario;
  o << "[scenario]\nkind = " << quoted(sc.kind) << "\namplitude = " << num(sc.amplitude) << "\nsigma = " << num(sc.sigma)
    << "\ncenter1 = " << num(sc.center1) << "\ncenter2 = " << num(sc.center2) << "\nq1 = " << sc.q1
    << "\nq2 = " << sc.q2 << "\nwinding = " << sc.winding << "\nomega = " << num(sc.omega)
    << "\nscale = " << num(sc.scale) << "\nseed = " << sc.seed << "\nnoise = " << num(sc.noise)
    << "\nfile = " << quoted(sc.file.string()) << "\n\n";
  o << "[checks]\nenergy_tol = " << num(checks.energy_tol) << "\nconstraint_tol = " << num(checks.constraint_tol)
    << "\ndata_tol = " << num(checks.data_tol) << "\n\n";
  o << "[scan]\nb_min = " << num(scan.b_min) << "\nb_max = " << num(scan.b_max) << "\nb_step = " << num(scan.b_step)
    << "\nb_prime = " << num(scan.b_prime) << "\neps = " << num(scan.eps) << "\ns_min = " << num(scan.s_min)
    << "\ns_max = " << num(scan.s_max) << "\ns_step = " << num(scan.s_step)
    << "\ns_resolution = " << num(scan.s_resolution) << "\n\n";
  o << "[probe]\nsamples = " << probe.samples << "\nseed = " << probe.seed << "\np = " << num(probe.p)
    << "\nmax_angle = " << num(probe.max_angle) << "\n";
  return o.str();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("", line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("", line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError("", line, "missing key");
    cfg.set(section.empty() ? key : section + "." + key, s.substr(eq + 1), line);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cshl
