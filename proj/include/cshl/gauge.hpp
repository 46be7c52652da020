#pragma once

#include "cshl/diagnostics.hpp"
#include "cshl/state.hpp"

namespace cshl {

/// Free-wave gauge function chi(t) = cos(t|grad|) f + sin(t|grad|) |grad|^{-1} g.
/// The spatial mean evolves affinely, mean(chi)(t) = mean(f) + t mean(g).
class GaugeFunction {
 public:
  GaugeFunction(ScalarField f, ScalarField g);

  static GaugeFunction constant(const Grid& grid, double c);

  const ScalarField& f() const noexcept { return f_; }
  const ScalarField& g() const noexcept { return g_; }

  ScalarField chi(double t) const;
  ScalarField chi_t(double t) const;
  /// d_j chi(t), j in {1, 2}.
  ScalarField gradient(double t, int j) const;
  /// Delta chi(t), equal to d_t^2 chi(t) for a free wave.
  ScalarField laplacian(double t) const;

  GaugeFunction negated() const;

 private:
  /// Spectrum of chi (derivative_order 0) or chi_t (1) at time t.
  std::vector<cplx> spectrum(double t, int derivative_order) const;

  ScalarField f_, g_;  // spectral representation
};

/// Gauge function restoring A_0(0) = 0 and d^j A_j(0) = 0:
/// d_k f = -R_k R^j A_j(0) with homogeneous Riesz transforms, g = -A_0(0).
GaugeFunction solve_gauge_function(const GaugeState& state,
                                   ZeroModePolicy policy = ZeroModePolicy::legislate);

/// A'_mu = A_mu + d_mu chi, phi' = exp(i chi) phi, with time derivatives
/// taken from the closed-form evaluator at state.time.
GaugeState apply_gauge(const GaugeState& state, const GaugeFunction& chi);

struct InvarianceReport {
  double d_curvature = 0.0;
  double d_current = 0.0;
  double d_energy = 0.0;  // energy density
  double d_abs_phi = 0.0;
};

/// Relative L2 differences of gauge-invariant observables of s2 against s1.
InvarianceReport invariance_report(const GaugeState& s1, const GaugeState& s2,
                                   const Potential& potential = Potential::standard());

}  // namespace cshl
