#include "cshl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "cshl/errors.hpp"
#include "cshl/fft.hpp"

namespace cshl {

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

double power_or_one(double base, double exponent) { return exponent == 0.0 ? 1.0 : std::pow(base, exponent); }

}  // namespace

double sobolev_norm(const ScalarField& f, double s, bool homogeneous, ZeroModePolicy policy) {
  require_finite(f, "sobolev_norm input");
  const ScalarField spec = f.to_spectral();
  const auto c = spec.values();
  if (homogeneous && s < 0.0) check_zero_mode(f.grid(), c, policy, "homogeneous Sobolev norm");
  const auto t = wave_tables(f.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double w;
    if (homogeneous)
      w = t->kabs[i] == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(t->kabs[i], 2.0 * s);
    else
      w = power_or_one(t->kbracket[i], 2.0 * s);
    sum += w * std::norm(c[i]);
  }
  return std::sqrt(sum * f.grid().area());
}

double lp_norm(const ScalarField& f, double p) {
  const ScalarField phys = f.to_physical();
  if (std::isinf(p)) return phys.max_abs();
  if (!(p >= 1.0)) throw InvalidRange("lp_norm: p must be >= 1");
  double sum = 0.0;
  for (const auto& z : phys.values()) sum += std::pow(std::abs(z), p);
  return std::pow(sum * f.grid().cell_area(), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Space-time fields

std::vector<double> tukey_window(int nt, double taper) {
  std::vector<double> w(static_cast<std::size_t>(nt), 1.0);
  if (nt < 2 || taper <= 0.0) return w;
  taper = std::min(taper, 1.0);
  const double edge = taper * (nt - 1) / 2.0;
  for (int i = 0; i < nt; ++i) {
    const double d = std::min<double>(i, nt - 1 - i);
    if (d < edge) w[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * d / edge));
  }
  return w;
}

SpaceTimeField::SpaceTimeField(std::vector<ScalarField> samples, double dt, TimeWindow window, double taper)
    : grid_(samples.empty() ? throw InvalidRange("SpaceTimeField: no samples") : samples.front().grid()),
      nt_(static_cast<int>(samples.size())),
      dt_(dt) {
  if (!(dt > 0.0)) throw InvalidRange("SpaceTimeField: dt must be positive");
  const std::size_t m = grid_.size();
  const auto w = window == TimeWindow::tukey ? tukey_window(nt_, taper) : std::vector<double>(nt_, 1.0);
  spectrum_.resize(m * nt_);
  for (int it = 0; it < nt_; ++it) {
    if (!(samples[it].grid() == grid_)) throw std::invalid_argument("SpaceTimeField: grid mismatch");
    const ScalarField p = samples[it].to_physical();
    require_finite(p, "space-time sample");
    for (std::size_t i = 0; i < m; ++i) spectrum_[it * m + i] = w[it] * p[i];
  }
  fft::forward_3d(nt_, grid_.n(), spectrum_);
}

SpaceTimeField SpaceTimeField::from_trajectory(const Trajectory& traj, int component, TimeWindow window) {
  if (traj.states.size() < 2) throw InvalidRange("SpaceTimeField: trajectory needs stored states");
  if (component < -1 || component > 2) throw std::invalid_argument("SpaceTimeField: component out of range");
  std::vector<ScalarField> samples;
  samples.reserve(traj.states.size());
  for (const auto& s : traj.states) samples.push_back(component < 0 ? s.phi : s.a[component]);
  const double dt = std::abs(traj.states[1].time - traj.states[0].time);
  return SpaceTimeField(std::move(samples), dt, window);
}

double SpaceTimeField::tau(int it) const {
  const int m = it < (nt_ + 1) / 2 ? it : it - nt_;
  return 2.0 * std::numbers::pi * m / (nt_ * dt_);
}

namespace {

template <class Weight>
double space_time_norm(const SpaceTimeField& u, Weight weight) {
  const auto t = wave_tables(u.grid());
  const std::size_t m = u.grid().size();
  const auto& c = u.spectrum();
  double sum = 0.0;
  for (int it = 0; it < u.steps(); ++it) {
    const double tau = u.tau(it);
    for (std::size_t i = 0; i < m; ++i) sum += weight(tau, i, *t) * std::norm(c[it * m + i]);
  }
  return std::sqrt(sum * u.steps() * u.dt() * u.grid().area());
}

}  // namespace

double wave_sobolev_norm(const SpaceTimeField& u, double s, double b) {
  return space_time_norm(u, [&](double tau, std::size_t i, const WaveTables& t) {
    return power_or_one(t.kbracket[i], 2.0 * s) * power_or_one(bracket(std::abs(tau) - t.kabs[i]), 2.0 * b);
  });
}

double xsb_norm(const SpaceTimeField& u, double s, double b, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("xsb_norm: sign must be +1 or -1");
  if (b == 0.0) return wave_sobolev_norm(u, s, 0.0);
  return space_time_norm(u, [&](double tau, std::size_t i, const WaveTables& t) {
    return power_or_one(t.kbracket[i], 2.0 * s) * std::pow(bracket(-tau + sign * t.kabs[i]), 2.0 * b);
  });
}

// ---------------------------------------------------------------------------
// Product law

namespace {

constexpr int kConditions = 14;

constexpr const char* kConditionNames[kConditions] = {
    "b0+b1+b2 > 1/2",
    "b0+b1 >= 0",
    "b0+b2 >= 0",
    "b1+b2 >= 0",
    "s0+s1+s2 > 3/2-(b0+b1+b2)",
    "s0+s1+s2 > 1-min(b0+b1,b0+b2,b1+b2)",
    "s0+s1+s2 > 1/2-min(b0,b1,b2)",
    "s0+s1+s2 > 3/4",
    "(s0+b0)+2s1+2s2 > 1",
    "2s0+(s1+b1)+2s2 > 1",
    "2s0+2s1+(s2+b2) > 1",
    "s1+s2 >= max(0,-b0)",
    "s0+s2 >= max(0,-b1)",
    "s0+s1 >= max(0,-b2)",
};

constexpr bool kStrict[kConditions] = {true, false, false, false, true, true, true,
                                       true, true, true, true, false, false, false};

// lhs - rhs of each condition
std::array<double, kConditions> slacks(const Exponents& e) {
  const double S = e.s0 + e.s1 + e.s2;
  const double B = e.b0 + e.b1 + e.b2;
  return {
      B - 0.5,
      e.b0 + e.b1,
      e.b0 + e.b2,
      e.b1 + e.b2,
      S - (1.5 - B),
      S - (1.0 - std::min({e.b0 + e.b1, e.b0 + e.b2, e.b1 + e.b2})),
      S - (0.5 - std::min({e.b0, e.b1, e.b2})),
      S - 0.75,
      (e.s0 + e.b0) + 2.0 * e.s1 + 2.0 * e.s2 - 1.0,
      2.0 * e.s0 + (e.s1 + e.b1) + 2.0 * e.s2 - 1.0,
      2.0 * e.s0 + 2.0 * e.s1 + (e.s2 + e.b2) - 1.0,
      e.s1 + e.s2 - std::max(0.0, -e.b0),
      e.s0 + e.s2 - std::max(0.0, -e.b1),
      e.s0 + e.s1 - std::max(0.0, -e.b2),
  };
}

bool satisfied(double slack, bool strict) { return strict ? slack > 0.0 : slack >= 0.0; }

}  // namespace

ProductLawReport product_law_report(const Exponents& e) {
  const auto sl = slacks(e);
  ProductLawReport r;
  for (int i = 0; i < kConditions; ++i) {
    const bool ok = satisfied(sl[i], kStrict[i]);
    r.holds = r.holds && ok;
    r.conditions.push_back({kConditionNames[i], sl[i], kStrict[i], ok, std::abs(sl[i]) <= 1e-12});
  }
  return r;
}

std::string ProductLawReport::binding() const {
  const ConditionResult* best = nullptr;
  for (const auto& c : conditions) {
    if (!c.holds) return c.name;
    if (!best || c.slack < best->slack) best = &c;
  }
  return best ? best->name : std::string();
}

bool product_law_holds(const Exponents& e) {
  const auto sl = slacks(e);
  for (int i = 0; i < kConditions; ++i)
    if (!satisfied(sl[i], kStrict[i])) return false;
  return true;
}

std::vector<Reduction> reduction_catalog(double s, double b, double bp, double eps) {
  const double h = 0.5;
  std::vector<Reduction> out = {
      // quadratic null forms in the A equation
      {"qform-1", {1 - s, s, s - h, h - b - eps, bp, bp}},
      {"qform-2", {1 - s, s, s - h, 1 - b - eps, bp - h, bp}},
      {"qform-3", {1 - s, s, s - h, 1 - b - eps, bp, bp - h}},
      {"qform-4", {1 - s, s + 1.5, s - h, 0, bp, bp}},
      // cubic term of the A equation, rough factor first
      {"cubic-rough-outer", {1 - s, s - 1, s + h, 1 - b - eps, b, b - h}},
      {"cubic-rough-inner", {-s - h, s + h, s + h, h - b, bp, bp}},
      // cubic term of the A equation, all factors at regularity s
      {"cubic-smooth-outer", {1 - s, s, s - h, 1 - b - eps, 0, bp}},
      {"cubic-smooth-inner", {-s, s, s + h, 0, b, bp}},
      // bilinear terms of the phi equation
      {"bilinear-1", {h - s, s, s, h - bp - eps, b, bp}},
      {"bilinear-2", {h - s, s + h, s - h, h - bp - eps, b, bp}},
      {"bilinear-3", {h - s, s, s, 1 - bp - eps, b, bp - h}},
      {"bilinear-4", {h - s, s + h, s - h, 1 - bp - eps, b, bp - h}},
      {"bilinear-5", {h - s, s, s, 1 - bp - eps, b - h, bp}},
      {"bilinear-6", {h - s, s + h, s - h, 1 - bp - eps, b - h, bp}},
      {"bilinear-extra-1", {h - s, s + 2, s - h, 0, b, bp}},
      {"bilinear-extra-2", {h - s, s, s + 1.5, 0, b, bp}},
      // A_mu A^mu phi
      {"quadratic-a-outer", {h - s, s, s, 1 - bp - eps, b, 0}},
      {"quadratic-a-inner", {-s, s, s + h, 0, b, bp}},
  };
  // polynomial potential: one step of the inductive chain at both ends of theta
  const double delta = s < h ? eps + (h - s) / 2 : eps;
  const double theta_hi = 1 - delta - eps;
  if (theta_hi >= 0) {
    for (double theta : {0.0, theta_hi}) {
      const double sigma = s - h + theta, beta = bp - 1 + eps + theta;
      out.push_back({theta == 0.0 ? "poly-step-lo" : "poly-step-hi",
                     {-sigma, s + h, sigma + delta, -beta, bp, beta + delta}});
    }
  } else {
    out.push_back({"poly-step-empty", {0, 0, 0, 0, 0, 0}});
  }
  return out;
}

bool reductions_hold(double s, double b, double bp, double eps, std::string* binding) {
  const auto catalog = reduction_catalog(s, b, bp, eps);
  if (!binding) {
    for (const auto& r : catalog)
      if (!product_law_holds(r.e)) return false;
    return true;
  }
  // with a binding requested: the first failure, or the tightest condition overall
  double tightest = std::numeric_limits<double>::infinity();
  for (const auto& r : catalog) {
    const ProductLawReport rep = product_law_report(r.e);
    if (!rep.holds) {
      *binding = r.name + ": " + rep.binding();
      return false;
    }
    for (const auto& c : rep.conditions)
      if (c.slack < tightest) {
        tightest = c.slack;
        *binding = r.name + ": " + c.name;
      }
  }
  return true;
}

double scan_minimal_s(double b, double bp, double eps, double lo, double hi, double step) {
  if (!(step > 0.0)) throw InvalidRange("scan step must be positive");
  const long k0 = static_cast<long>(std::ceil(lo / step - 1e-9));
  const long k1 = static_cast<long>(std::floor(hi / step + 1e-9));
  for (long k = k0; k <= k1; ++k)
    if (reductions_hold(k * step, b, bp, eps)) return k * step;
  return std::numeric_limits<double>::quiet_NaN();
}

double condition_set_threshold(double b, double bp, double eps) {
  if (!(b > 0.5 && b < 1.0)) throw InvalidRange("condition_set_threshold: b must lie in (1/2, 1)");
  if (!(bp > 0.5 && bp < 1.0)) throw InvalidRange("condition_set_threshold: b' must lie in (1/2, 1)");
  if (!(eps > 0.0)) throw InvalidRange("condition_set_threshold: eps must be positive");
  const double c1 = std::max({b - 0.5, 0.25, 1.0 / 6.0 + b / 3.0, b / 2.0});
  const double c1b = std::max({1.0 - b, b - 0.5, 0.25, b / 3.0});
  const double c2 = std::max({bp - 0.5, 0.25, bp / 3.0, 1.0 - b});
  // With delta = eps + (1/2 - s)/2 below s = 1/2, the bound s > b' - 2 delta
  // reduces to b' < 1/2 + 2 eps; otherwise s must reach 1/2.
  const double c3 = bp < 0.5 + 2.0 * eps ? bp - 0.5 : std::max(0.5, bp - 2.0 * eps);
  return std::max({c1, c1b, c2, c3});
}

// ---------------------------------------------------------------------------
// Empirical product ratio

namespace {

constexpr int kLatticeN = 64;   // spatial modes per axis, period 2 pi
constexpr int kLatticeM = 80;   // temporal modes, period 2 pi
constexpr int kModesPerField = 12;

struct Lattice {
  static std::size_t index(int mt, int m1, int m2) {
    auto wrap = [](int m, int n) { return static_cast<std::size_t>(((m % n) + n) % n); };
    return (wrap(mt, kLatticeM) * kLatticeN + wrap(m1, kLatticeN)) * kLatticeN + wrap(m2, kLatticeN);
  }
  static int mode(int i, int n) { return i < n / 2 ? i : i - n; }
};

// Random field with kModesPerField modes in the annulus scale <= |m| < 2 scale, each
// within one temporal mode of the cone.
std::vector<cplx> cone_field(int scale, std::mt19937_64& rng) {
  std::vector<cplx> spec(static_cast<std::size_t>(kLatticeM) * kLatticeN * kLatticeN);
  std::uniform_int_distribution<int> coord(-2 * scale + 1, 2 * scale - 1);
  std::uniform_int_distribution<int> offset(-1, 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int placed = 0; placed < kModesPerField;) {
    const int m1 = coord(rng), m2 = coord(rng);
    const double r = std::hypot(m1, m2);
    if (r < scale || r >= 2 * scale) continue;
    const int sign = coin(rng) ? 1 : -1;
    const int mt = sign * static_cast<int>(std::lround(r)) + offset(rng);
    spec[Lattice::index(mt, m1, m2)] += cplx(normal(rng), normal(rng));
    ++placed;
  }
  return spec;
}

double lattice_norm(const std::vector<cplx>& spec, double s, double b) {
  double sum = 0.0;
  for (int it = 0; it < kLatticeM; ++it) {
    const double tau = Lattice::mode(it, kLatticeM);
    for (int i1 = 0; i1 < kLatticeN; ++i1)
      for (int i2 = 0; i2 < kLatticeN; ++i2) {
        const cplx c = spec[(static_cast<std::size_t>(it) * kLatticeN + i1) * kLatticeN + i2];
        if (c == 0.0) continue;
        const double xi = std::hypot(Lattice::mode(i1, kLatticeN), Lattice::mode(i2, kLatticeN));
        sum += power_or_one(bracket(xi), 2.0 * s) * power_or_one(bracket(std::abs(tau) - xi), 2.0 * b) * std::norm(c);
      }
  }
  const double vol = std::pow(2.0 * std::numbers::pi, 3);
  return std::sqrt(sum * vol);
}

}  // namespace

ProductRatio empirical_product_ratio(const Exponents& e, int trials, std::uint64_t seed, std::vector<int> scales) {
  if (trials < 1) throw InvalidRange("empirical_product_ratio: trials must be >= 1");
  for (int sc : scales)
    if (sc < 1 || 4 * sc > kLatticeN / 2) throw InvalidRange("empirical_product_ratio: scale out of range");
  ProductRatio out;
  out.scales = scales;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    std::mt19937_64 rng(seed * 1000003ULL + scales[k]);
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
      std::vector<cplx> u = cone_field(scales[k], rng), v = cone_field(scales[k], rng);
      const double nu = lattice_norm(u, e.s1, e.b1), nv = lattice_norm(v, e.s2, e.b2);
      fft::inverse_3d(kLatticeM, kLatticeN, u);
      fft::inverse_3d(kLatticeM, kLatticeN, v);
      for (std::size_t i = 0; i < u.size(); ++i) u[i] *= v[i];
      fft::forward_3d(kLatticeM, kLatticeN, u);
      const double ratio = nu > 0.0 && nv > 0.0 ? lattice_norm(u, -e.s0, -e.b0) / (nu * nv) : 0.0;
      out.samples.push_back(ratio);
      best = std::max(best, ratio);
    }
    out.scale_max.push_back(best);
    out.max_ratio = std::max(out.max_ratio, best);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Angle estimate

double angle_ratio(double eta1, double eta2, double zeta1, double zeta2, double lambda, double mu, int sign1,
                   int sign2) {
  const double ne = std::hypot(eta1, eta2), nz = std::hypot(zeta1, zeta2);
  if (ne == 0.0 || nz == 0.0) throw InvalidRange("angle_ratio: eta and zeta must be non-zero");
  const double dot = sign1 * sign2 * (eta1 * zeta1 + eta2 * zeta2);
  const double cross = eta1 * zeta2 - eta2 * zeta1;
  const double theta = std::atan2(std::abs(cross), dot);
  const double sum_norm = std::hypot(eta1 + zeta1, eta2 + zeta2);
  const double num = bracket(std::abs(lambda + mu) - sum_norm) + bracket(-lambda + sign1 * ne) +
                     bracket(-mu + sign2 * nz);
  const double rhs = std::sqrt(num / std::min(bracket(ne), bracket(nz)));
  return theta / rhs;
}

namespace {

int worker_count() {
  if (const char* env = std::getenv("CSHL_NUM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double angle_shard(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double pi = std::numbers::pi;
  auto log_uniform = [&](double lo, double hi) { return std::pow(10.0, lo + (hi - lo) * unit(rng)); };
  auto rand_sign = [&] { return unit(rng) < 0.5 ? -1 : 1; };
  double best = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double ne = log_uniform(-3, 3), nz = log_uniform(-3, 3);
    const double a = 2.0 * pi * unit(rng);
    double b;
    const double regime = unit(rng);
    if (regime < 0.25)
      b = a + rand_sign() * log_uniform(-8, -1);
    else if (regime < 0.5)
      b = a + pi + rand_sign() * log_uniform(-8, -1);
    else
      b = 2.0 * pi * unit(rng);
    const int s1 = rand_sign(), s2 = rand_sign();
    auto near_cone = [&](double base) {
      const double r = unit(rng);
      if (r < 0.25) return base;
      return base + rand_sign() * log_uniform(-4, 3);
    };
    const double lambda = near_cone(s1 * ne), mu = near_cone(s2 * nz);
    const double ratio =
        angle_ratio(ne * std::cos(a), ne * std::sin(a), nz * std::cos(b), nz * std::sin(b), lambda, mu, s1, s2);
    best = std::max(best, ratio);
  }
  return best;
}

}  // namespace

AngleCheck angle_bound_check(std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidRange("angle_bound_check: trials must be >= 1");
  constexpr std::size_t kShards = 64;
  std::vector<double> shard_max(kShards, 0.0);
  const int workers = std::min<int>(worker_count(), kShards);
  auto run = [&](int w) {
    for (std::size_t sh = static_cast<std::size_t>(w); sh < kShards; sh += workers) {
      const std::size_t count = trials / kShards + (sh < trials % kShards ? 1 : 0);
      std::seed_seq seq{seed, static_cast<std::uint64_t>(sh)};
      std::uint64_t shard_seed;
      seq.generate(reinterpret_cast<std::uint32_t*>(&shard_seed), reinterpret_cast<std::uint32_t*>(&shard_seed) + 2);
      shard_max[sh] = angle_shard(count, shard_seed);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  return {*std::max_element(shard_max.begin(), shard_max.end()), trials};
}

// ---------------------------------------------------------------------------
// Inequality probes

namespace {

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

std::array<double, 2> covariant_ratios(const ScalarField& f, const ScalarField& g) {
  const double f4 = lp_norm(f, 4.0), g4 = lp_norm(g, 4.0);
  const double fg = (f.to_physical() * g.to_physical()).l2_norm();
  return {safe_ratio(fg, f4 * g4), safe_ratio(f4 * g4, sobolev_norm(f, 0.5, true) * sobolev_norm(g, 1.0))};
}

ProbeReport inequality_probes(const GaugeState& state, double p) {
  if (!(p > 2.0) || !std::isfinite(p)) throw InvalidRange("inequality_probes: p must lie in (2, infinity)");
  ProbeReport r;
  const double phi2 = state.phi.l2_norm();
  if (phi2 == 0.0) return r;
  const double phi4 = lp_norm(state.phi, 4.0);
  const double d0 = covariant_derivative(state, 0).l2_norm();
  const ScalarField j0 = current(state).j[0];
  r.current = safe_ratio(sobolev_norm(j0, -0.5, true), phi4 * d0);

  double a_half = 0.0;
  for (int j = 1; j <= 2; ++j) {
    const auto c = covariant_ratios(state.a[j], state.phi);
    r.holder = std::max(r.holder, c[0]);
    r.covariant = std::max(r.covariant, c[1]);
    a_half += sobolev_norm(state.a[j], 0.5, true);
  }
  r.aprime = safe_ratio(a_half, phi4 * d0);

  const double dj = covariant_derivative(state, 1).l2_norm() + covariant_derivative(state, 2).l2_norm();
  r.gv = safe_ratio(lp_norm(state.phi, p), std::pow(phi2, 2.0 / p) * std::pow(dj, 1.0 - 2.0 / p));
  return r;
}

}  // namespace cshl
