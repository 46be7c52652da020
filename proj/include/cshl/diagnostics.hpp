#pragma once

#include <cstddef>
#include <vector>

#include "cshl/state.hpp"

namespace cshl {

/// Monitor values at the recorded times of a trajectory.
struct MonitorSeries {
  std::vector<double> times;
  std::vector<double> energy;     // E(t)
  std::vector<double> charge;     // integral of J_0
  std::vector<double> charge_l2;  // ||phi(t)||^2
  std::vector<double> kinetic;    // sum_mu ||D_mu phi(t)||^2
  std::vector<double> i_t;        // ||phi|| + sum_mu ||D_mu phi||
  std::vector<double> v1, v2;     // normalized field-equation residuals
  std::vector<double> gauss;      // normalized Gauss-law residual w
  std::vector<double> lorenz;     // normalized Lorenz residual u

  std::size_t size() const noexcept { return times.size(); }
  /// Throws if the columns differ in length or times are not strictly increasing
  /// (strictly decreasing is accepted for backward runs).
  void validate() const;
};

/// |D_0 phi|^2 + |D_1 phi|^2 + |D_2 phi|^2 + V(|phi|^2), pointwise.
ScalarField energy_density(const GaugeState& state, const Potential& potential);

/// Rectangle-rule integral of the energy density.
double energy(const GaugeState& state, const Potential& potential);

/// sum_mu ||D_mu phi||_{L2}^2.
double covariant_kinetic(const GaugeState& state);

/// ||phi||_{L2} + sum_mu ||D_mu phi||_{L2}.
double i_of_t(const GaugeState& state);

struct BoundCheck {
  bool holds = true;
  double worst_margin = 0.0;  // min over records of (bound - lhs); negative on failure
  std::size_t worst_index = 0;
  explicit operator bool() const noexcept { return holds; }
};

/// sum_mu ||D_mu phi(t)||^2 <= |E0| + alpha^2 ||phi(t)||^2 at every record,
/// with 1e-8 * max(1, |E0|) quadrature slack.
BoundCheck energy_inequality_check(const MonitorSeries& series, double alpha, double e0);

/// ||phi(t)||^2 <= exp(2 alpha |t|) (||phi(0)||^2 + |t| |E0| / alpha) for alpha > 0 and
/// ||phi(t)||^2 <= (||phi(0)|| + |t| |E0|^{1/2})^2 for alpha = 0, with 1e-6 relative slack.
/// Times are measured from the first record.
BoundCheck gronwall_bound_check(const MonitorSeries& series, double alpha, double e0);

}  // namespace cshl
