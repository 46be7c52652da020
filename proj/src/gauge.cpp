#include "cshl/gauge.hpp"

#include <cmath>

namespace cshl {

GaugeFunction::GaugeFunction(ScalarField f, ScalarField g)
    : f_(f.to_physical().real_part().to_spectral()), g_(g.to_physical().real_part().to_spectral()) {
  if (!(f_.grid() == g_.grid())) throw std::invalid_argument("GaugeFunction: grid mismatch");
  require_finite(f_, "gauge function f");
  require_finite(g_, "gauge function g");
}

GaugeFunction GaugeFunction::constant(const Grid& grid, double c) {
  return GaugeFunction(ScalarField::constant(grid, c), ScalarField::zeros(grid));
}

std::vector<cplx> GaugeFunction::spectrum(double t, int derivative_order) const {
  const auto tables = wave_tables(f_.grid());
  const auto f = f_.values();
  const auto g = g_.values();
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double k = tables->kabs[i];
    if (k == 0.0) {
      out[i] = derivative_order == 0 ? f[i] + t * g[i] : g[i];
      continue;
    }
    const double c = std::cos(t * k), s = std::sin(t * k);
    out[i] = derivative_order == 0 ? c * f[i] + (s / k) * g[i] : -k * s * f[i] + c * g[i];
  }
  return out;
}

ScalarField GaugeFunction::chi(double t) const {
  return ScalarField(f_.grid(), spectrum(t, 0), Representation::spectral, true).to_physical().real_part();
}

ScalarField GaugeFunction::chi_t(double t) const {
  return ScalarField(f_.grid(), spectrum(t, 1), Representation::spectral, true).to_physical().real_part();
}

ScalarField GaugeFunction::gradient(double t, int j) const {
  const ScalarField c(f_.grid(), spectrum(t, 0), Representation::spectral, true);
  return apply_multiplier(c, Multiplier::partial(j)).real_part();
}

ScalarField GaugeFunction::laplacian(double t) const {
  const ScalarField c(f_.grid(), spectrum(t, 0), Representation::spectral, true);
  return (-apply_multiplier(c, Multiplier::frac_lap_hom(2.0))).real_part();
}

GaugeFunction GaugeFunction::negated() const { return GaugeFunction(-f_, -g_); }

GaugeFunction solve_gauge_function(const GaugeState& state, ZeroModePolicy policy) {
  state.validate();
  // |grad| f = R_j A_j, so that Delta f = -d_j A_j = d^j A_j.
  const auto inv_grad = Multiplier::frac_lap_hom(-1.0);
  ScalarField f = apply_multiplier(apply_multiplier(state.a[1], Multiplier::riesz_hom(1), policy), inv_grad, policy) +
                  apply_multiplier(apply_multiplier(state.a[2], Multiplier::riesz_hom(2), policy), inv_grad, policy);
  return GaugeFunction(f, -state.a[0].to_physical());
}

GaugeState apply_gauge(const GaugeState& state, const GaugeFunction& chi) {
  state.validate();
  if (!(chi.f().grid() == state.grid())) throw std::invalid_argument("apply_gauge: grid mismatch");
  const double t = state.time;
  const ScalarField c = chi.chi(t);
  const ScalarField c_t = chi.chi_t(t);

  GaugeState out = state;
  out.a[0] = (state.a[0].to_physical() + c_t).real_part();
  out.a_t[0] = (state.a_t[0].to_physical() + chi.laplacian(t)).real_part();
  for (int j = 1; j <= 2; ++j) {
    out.a[j] = (state.a[j].to_physical() + chi.gradient(t, j)).real_part();
    out.a_t[j] = (state.a_t[j].to_physical() + apply_multiplier(c_t, Multiplier::partial(j))).real_part();
  }
  const ScalarField phase = c.map([](cplx z) { return std::polar(1.0, z.real()); }, false);
  const ScalarField i_ct = c_t * cplx(0.0, 1.0);
  out.phi = (phase * state.phi).with_real_flag(false);
  out.phi_t = (phase * (state.phi_t.to_physical() + i_ct * state.phi)).with_real_flag(false);
  return out;
}

namespace {

double relative(double diff_sq, double ref_sq) {
  return ref_sq > 0.0 ? std::sqrt(diff_sq / ref_sq) : std::sqrt(diff_sq);
}

double sq(double x) { return x * x; }

}  // namespace

InvarianceReport invariance_report(const GaugeState& s1, const GaugeState& s2, const Potential& potential) {
  if (!(s1.grid() == s2.grid())) throw std::invalid_argument("invariance_report: grid mismatch");
  InvarianceReport r;

  const Curvature f1 = curvature(s1), f2 = curvature(s2);
  double diff = 0.0, ref = 0.0;
  for (auto [a, b] : {std::pair{&f1.f01, &f2.f01}, std::pair{&f1.f02, &f2.f02}, std::pair{&f1.f12, &f2.f12}}) {
    diff += sq((*a - *b).l2_norm());
    ref += sq(a->l2_norm());
  }
  r.d_curvature = relative(diff, ref);

  const CurrentVector j1 = current(s1), j2 = current(s2);
  diff = ref = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    diff += sq((j1.j[mu] - j2.j[mu]).l2_norm());
    ref += sq(j1.j[mu].l2_norm());
  }
  r.d_current = relative(diff, ref);

  const ScalarField e1 = energy_density(s1, potential), e2 = energy_density(s2, potential);
  r.d_energy = relative(sq((e1 - e2).l2_norm()), sq(e1.l2_norm()));

  const auto modulus = [](cplx z) { return cplx(std::abs(z)); };
  const ScalarField p1 = s1.phi.map(modulus, true), p2 = s2.phi.map(modulus, true);
  r.d_abs_phi = relative(sq((p1 - p2).l2_norm()), sq(p1.l2_norm()));
  return r;
}

}  // namespace cshl
