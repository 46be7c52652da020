#include "cshl/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "cshl/errors.hpp"

namespace cshl {

void MonitorSeries::validate() const {
  const std::size_t n = times.size();
  for (const auto* col : {&energy, &charge, &charge_l2, &kinetic, &i_t, &v1, &v2, &gauss, &lorenz})
    if (col->size() != n) throw std::invalid_argument("MonitorSeries: column length mismatch");
  if (n < 2) return;
  const bool forward = times[1] > times[0];
  for (std::size_t i = 1; i < n; ++i)
    if (forward ? !(times[i] > times[i - 1]) : !(times[i] < times[i - 1]))
      throw std::invalid_argument("MonitorSeries: times not strictly monotone");
}

ScalarField energy_density(const GaugeState& state, const Potential& potential) {
  std::vector<cplx> density(state.grid().size());
  for (int mu = 0; mu < 3; ++mu) {
    const ScalarField d = covariant_derivative(state, mu);
    for (std::size_t i = 0; i < density.size(); ++i) density[i] += std::norm(d[i]);
  }
  const ScalarField phi = state.phi.to_physical();
  for (std::size_t i = 0; i < density.size(); ++i) density[i] += potential.value(std::norm(phi[i]));
  return ScalarField(state.grid(), std::move(density), Representation::physical, true);
}

double energy(const GaugeState& state, const Potential& potential) {
  const ScalarField density = energy_density(state, potential);
  double sum = 0.0;
  for (const auto& v : density.values()) sum += v.real();
  return sum * state.grid().cell_area();
}

double covariant_kinetic(const GaugeState& state) {
  double total = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    const double norm = covariant_derivative(state, mu).l2_norm();
    total += norm * norm;
  }
  return total;
}

double i_of_t(const GaugeState& state) {
  double total = state.phi.l2_norm();
  for (int mu = 0; mu < 3; ++mu) total += covariant_derivative(state, mu).l2_norm();
  return total;
}

BoundCheck energy_inequality_check(const MonitorSeries& series, double alpha, double e0) {
  series.validate();
  BoundCheck out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  const double slack = 1e-8 * std::max(1.0, std::abs(e0));
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double bound = std::abs(e0) + alpha * alpha * series.charge_l2[i];
    const double margin = bound + slack - series.kinetic[i];
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_index = i;
    }
    if (margin < 0.0) out.holds = false;
  }
  if (series.size() == 0) out.worst_margin = 0.0;
  return out;
}

BoundCheck gronwall_bound_check(const MonitorSeries& series, double alpha, double e0) {
  if (alpha < 0.0) throw InvalidRange("gronwall_bound_check: alpha must be non-negative");
  series.validate();
  BoundCheck out;
  if (series.size() == 0) return out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  const double m0 = series.charge_l2[0];
  const double e = std::abs(e0);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = std::abs(series.times[i] - series.times[0]);
    double bound;
    if (alpha > 0.0) {
      bound = std::exp(2.0 * alpha * t) * (m0 + t * e / alpha);
    } else {
      const double root = std::sqrt(m0) + t * std::sqrt(e);
      bound = root * root;
    }
    const double margin = bound * (1.0 + 1e-6) - series.charge_l2[i];
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_index = i;
    }
    if (margin < 0.0) out.holds = false;
  }
  return out;
}

}  // namespace cshl
