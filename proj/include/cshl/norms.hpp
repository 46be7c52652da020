#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cshl/dynamics.hpp"

namespace cshl {

/// ||f||_{H^s} = ||<xi>^s f^||, or ||f||_{H-dot^s} = |||xi|^s f^|| when homogeneous.
double sobolev_norm(const ScalarField& f, double s, bool homogeneous = false,
                    ZeroModePolicy policy = ZeroModePolicy::legislate);

/// L^p norm by grid quadrature (p = infinity allowed).
double lp_norm(const ScalarField& f, double p);

enum class TimeWindow { none, tukey };

/// Uniform-in-time samples of one complex scalar on [0, T) x torus.
/// The time window (Tukey, 10% taper by default) is applied once, at
/// construction; all norms act on the windowed record.
class SpaceTimeField {
 public:
  SpaceTimeField(std::vector<ScalarField> samples, double dt, TimeWindow window = TimeWindow::tukey,
                 double taper = 0.1);

  /// Records of phi (component -1) or A_mu (component mu) from a stored trajectory.
  static SpaceTimeField from_trajectory(const Trajectory& traj, int component = -1,
                                        TimeWindow window = TimeWindow::tukey);

  const Grid& grid() const noexcept { return grid_; }
  int steps() const noexcept { return nt_; }
  double dt() const noexcept { return dt_; }
  /// Windowed space-time spectrum, time index slowest, 1/(M n^2) normalized.
  const std::vector<cplx>& spectrum() const noexcept { return spectrum_; }
  /// Physical angular frequency of time index it.
  double tau(int it) const;

 private:
  Grid grid_;
  int nt_;
  double dt_;
  std::vector<cplx> spectrum_;
};

/// Tukey window weights for nt samples; taper is the total tapered fraction.
std::vector<double> tukey_window(int nt, double taper);

/// ||<xi>^s <|tau| - |xi|>^b u^||.
double wave_sobolev_norm(const SpaceTimeField& u, double s, double b);
/// ||<xi>^s <-tau + sign |xi|>^b u^||, sign = +1 or -1.
double xsb_norm(const SpaceTimeField& u, double s, double b, int sign);

// ---------------------------------------------------------------------------
// Product law ||uv||_{H^{-s0,-b0}} <= C ||u||_{H^{s1,b1}} ||v||_{H^{s2,b2}}

struct Exponents {
  double s0 = 0, s1 = 0, s2 = 0, b0 = 0, b1 = 0, b2 = 0;
};

struct ConditionResult {
  std::string name;
  double slack = 0.0;  // lhs - rhs of the inequality
  bool strict = false;
  bool holds = false;
  bool boundary = false;  // |slack| <= 1e-12
};

struct ProductLawReport {
  bool holds = true;
  std::vector<ConditionResult> conditions;  // all 14, in order
  /// First failing condition, or the one with least slack when all hold.
  std::string binding() const;
};

ProductLawReport product_law_report(const Exponents& e);
bool product_law_holds(const Exponents& e);

struct Reduction {
  std::string name;
  Exponents e;
};

/// Every product-law application used by the local theory, at (s, b, b', eps).
/// The polynomial step chain is sampled at both ends of its theta range.
std::vector<Reduction> reduction_catalog(double s, double b, double b_prime, double eps);

/// True iff every reduction in the catalog satisfies the product law.
bool reductions_hold(double s, double b, double b_prime, double eps, std::string* binding = nullptr);

/// Least s on the grid {k * step} in [lo, hi] for which reductions_hold, or NaN.
double scan_minimal_s(double b, double b_prime, double eps, double lo = 0.0, double hi = 1.0,
                      double step = 1e-4);

/// Infimum of s satisfying the four closed-form condition sets.
/// Throws InvalidRange unless b, b' lie in (1/2, 1) and eps > 0.
double condition_set_threshold(double b, double b_prime, double eps);

struct ProductRatio {
  double max_ratio = 0.0;
  std::vector<int> scales;             // dyadic frequency scales
  std::vector<double> scale_max;       // max ratio per scale
  std::vector<double> samples;         // every ratio, scale-major
};

/// Randomized probe of the product law on a periodic space-time lattice with
/// fields supported near the light cone at dyadic scales 1, 2, 4, 8.
/// Deterministic given the seed.
ProductRatio empirical_product_ratio(const Exponents& e, int trials, std::uint64_t seed,
                                     std::vector<int> scales = {1, 2, 4, 8});

struct AngleCheck {
  double max_constant = 0.0;
  std::size_t samples = 0;
};

/// theta(pm1 eta, pm2 zeta) over the square root of
/// (<|l + m| - |eta + zeta|> + <-l pm1 |eta|> + <-m pm2 |zeta|>) / min(<eta>, <zeta>).
double angle_ratio(double eta1, double eta2, double zeta1, double zeta2, double lambda, double mu, int sign1,
                   int sign2);

/// Max of angle_ratio over random samples, including near-parallel and
/// near-cone regimes. Sharded over threads with per-shard seeds.
AngleCheck angle_bound_check(std::size_t trials, std::uint64_t seed);

struct ProbeReport {
  double current = 0.0;      // ||J_0||_{H-dot^{-1/2}} / (||phi||_4 ||D_0 phi||_2)
  double holder = 0.0;       // ||A_j phi||_2 / (||A_j||_4 ||phi||_4), summed over j
  double covariant = 0.0;    // ||A_j||_4 ||phi||_4 / (||A_j||_{H-dot^{1/2}} ||phi||_{H^1}), max over j
  double gv = 0.0;           // ||phi||_p / (||phi||_2^{2/p} (sum_j ||D_j phi||_2)^{1-2/p})
  double aprime = 0.0;       // sum_j ||A_j||_{H-dot^{1/2}} / (||phi||_4 ||D_0 phi||_2)
};

/// Empirical ratios of the Sobolev-type inequalities at one state; every
/// ratio with a vanishing denominator is reported as 0.
ProbeReport inequality_probes(const GaugeState& state, double p = 4.0);

/// ||fg||_2 / (||f||_4 ||g||_4) and ||f||_4 ||g||_4 / (||f||_{H-dot^{1/2}} ||g||_{H^1}).
std::array<double, 2> covariant_ratios(const ScalarField& f, const ScalarField& g);

}  // namespace cshl
