#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cshl/diagnostics.hpp"
#include "cshl/state.hpp"

namespace cshl {

enum class SplitMode {
  inhom,      // <grad> splitting for A and phi, +A_mu and +phi added to the sources
  hom_gauge,  // |grad| splitting for A, no +A_mu term, homogeneous Riesz transforms
};

const char* to_string(SplitMode mode);
SplitMode split_mode_from_string(const std::string& name);

/// Half-wave variables u_pm = (u -+ i W^{-1} d_t u) / 2, stored spectrally.
///
/// In hom_gauge mode W = |grad| for A, which cannot split the spatial mean.
/// The mean of A_mu sits in the zero mode of a_plus (a_minus has none) and
/// its rate d_t mean(A_mu) is carried in a_rate.
struct SplitState {
  std::array<ScalarField, 3> a_plus, a_minus;
  ScalarField phi_plus, phi_minus;
  std::array<double, 3> a_rate{};
  SplitMode mode = SplitMode::inhom;
  double time = 0.0;

  const Grid& grid() const noexcept { return phi_plus.grid(); }
};

SplitState split(const GaugeState& state, SplitMode mode,
                 ZeroModePolicy policy = ZeroModePolicy::legislate);
GaugeState unsplit(const SplitState& s);

/// Q_{ab}(du, dv) = d_a u d_b v - d_b u d_a v (lower indices, 0 = time), dealiased.
ScalarField null_form_q(const ScalarField& u, const ScalarField& u_t, const ScalarField& v,
                        const ScalarField& v_t, int alpha, int beta);

struct DivCurl {
  std::array<ScalarField, 2> df;      // (R2 psi, -R1 psi), psi = R1 A2 - R2 A1
  std::array<ScalarField, 2> cf;      // -R (R . A)
  std::array<ScalarField, 2> smooth;  // (1 - Delta)^{-1} A; zero in hom_gauge apart from the mean
};

/// Riesz kind follows the mode. In hom_gauge mode the spatial mean of A is
/// reported in `smooth`, so df + cf + smooth = A in both modes.
DivCurl divcurl_decompose(const ScalarField& a1, const ScalarField& a2, SplitMode mode,
                          ZeroModePolicy policy = ZeroModePolicy::legislate);

struct BilinearTerms {
  ScalarField b1, b2, b3;
};

/// b1 = A_0 d_t phi - A^cf . grad phi with A^cf taken from d_t A_0 (Lorenz),
/// b2 = A^df . grad phi, b3 = smooth part . grad phi. Their combination
/// b1 - b2 - b3 equals A_mu d^mu phi whenever the Lorenz condition holds.
BilinearTerms bilinear_terms(const SplitState& s);

struct SplitRhs {
  std::array<ScalarField, 3> m;  // M_mu, physical
  ScalarField n;                 // N, physical
};

/// Sources of the split system (box + 1) A_mu = M_mu, (box + 1) phi = N in
/// inhom mode; box A_mu = M_mu in hom_gauge mode.
SplitRhs rhs(const SplitState& s, const Potential& potential);

/// One Lawson RK4 step. Throws StepUnstable if a component norm grows more
/// than tenfold or a non-finite value appears.
SplitState step(const SplitState& s, double dt, const Potential& potential);

/// Heuristic 0.5 min(1, 1/||A||_inf, 1/||phi||_inf^2).
double stable_dt_bound(const GaugeState& state);

struct Monitors {
  double v1 = 0.0, v2 = 0.0;  // ||d_t A_j - d_j A_0 - eps_{jk} J^k|| / max(1, ||J_spatial||)
  double w = 0.0;             // ||d1 A2 - d2 A1 - (J_0 - mean J_0)|| / max(1, ||J_0||)
  double u = 0.0;             // ||d^mu A_mu|| / max(1, ||J_0||)
  double max() const noexcept;
};

Monitors constraint_monitors(const GaugeState& state);

struct EvolveOptions {
  int record_every = 1;
  bool store_states = false;
  ZeroModePolicy policy = ZeroModePolicy::legislate;
  std::function<void(const std::string&)> warn;  // unset: stderr
  std::function<void(const GaugeState&)> on_record;
};

struct Trajectory {
  std::vector<GaugeState> states;  // only with store_states
  MonitorSeries monitors;
  double dt = 0.0;  // signed step actually used
  int steps = 0;
  int record_every = 1;
  SplitMode mode = SplitMode::inhom;
  GaugeState final_state;
};

/// Integrates from state0.time to state0.time + T (T < 0 runs backward).
/// The step count is ceil(|T| / dt) and the step is shrunk to land on T.
Trajectory evolve(const GaugeState& state0, double T, double dt, const Potential& potential,
                  SplitMode mode = SplitMode::inhom, const EvolveOptions& options = {});

/// Appends one record of every monitor column for `state`.
void record_monitors(MonitorSeries& series, const GaugeState& state, const Potential& potential);

/// Columns t, E, charge, v1, v2, w, u, I_t.
void write_monitors_csv(const std::filesystem::path& path, const MonitorSeries& series);

}  // namespace cshl
