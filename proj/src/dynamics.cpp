#include "cshl/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>

#include "cshl/errors.hpp"
#include "cshl/fft.hpp"

namespace cshl {

const char* to_string(SplitMode mode) { return mode == SplitMode::inhom ? "inhom" : "homgauge"; }

SplitMode split_mode_from_string(const std::string& name) {
  if (name == "inhom") return SplitMode::inhom;
  if (name == "homgauge" || name == "hom_gauge") return SplitMode::hom_gauge;
  throw InvalidRange("unknown split mode '" + name + "'");
}

namespace {

using Spectrum = std::vector<cplx>;
constexpr cplx kI{0.0, 1.0};

// Flat view of a split state: a+ (0..2), a- (3..5), phi+ (6), phi- (7).
struct Vec {
  std::array<Spectrum, 8> c;
  std::array<double, 3> rate{};
};

void axpy(Vec& y, double a, const Vec& x) {
  for (int k = 0; k < 8; ++k)
    for (std::size_t i = 0; i < y.c[k].size(); ++i) y.c[k][i] += a * x.c[k][i];
  for (int mu = 0; mu < 3; ++mu) y.rate[mu] += a * x.rate[mu];
}

// Per-grid symbols shared by the right-hand side and the integrator.
struct Kernel {
  Grid grid;
  SplitMode mode;
  std::shared_ptr<const WaveTables> t;
  std::vector<double> w_a;  // W for A: <k> or |k|
  std::vector<unsigned char> nyq1, nyq2;

  Kernel(const Grid& g, SplitMode m) : grid(g), mode(m), t(wave_tables(g)) {
    const int n = g.n();
    w_a = m == SplitMode::inhom ? t->kbracket : t->kabs;
    nyq1.assign(g.size(), 0);
    nyq2.assign(g.size(), 0);
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
        nyq1[idx] = i1 == n / 2;
        nyq2[idx] = i2 == n / 2;
      }
  }

  bool hom() const { return mode == SplitMode::hom_gauge; }
  std::size_t size() const { return grid.size(); }

  double kj(int j, std::size_t i) const {
    if (j == 1) return nyq1[i] ? 0.0 : t->k1[i];
    return nyq2[i] ? 0.0 : t->k2[i];
  }

  // Riesz symbol of the mode's kind (odd, so zero on the Nyquist line).
  cplx riesz(int j, std::size_t i) const {
    const double k = kj(j, i);
    if (hom()) return t->kabs[i] == 0.0 ? 0.0 : kI * (k / t->kabs[i]);
    return kI * (k / t->kbracket[i]);
  }

  Spectrum forward(Spectrum v) const {
    fft::forward_2d(grid.n(), v);
    return v;
  }
  Spectrum inverse(Spectrum v) const {
    fft::inverse_2d(grid.n(), v);
    return v;
  }
  Spectrum truncated(Spectrum v) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!t->keep[i]) v[i] = 0.0;
    return v;
  }
  // Physical field of a spectrum after 2/3 truncation.
  Spectrum physical(const Spectrum& spec) const { return inverse(truncated(spec)); }
  // Physical product -> 2/3-truncated physical result.
  Spectrum dealiased(Spectrum phys) const { return inverse(truncated(forward(std::move(phys)))); }
  Spectrum derivative(const Spectrum& spec, int j) const {
    Spectrum out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = kI * kj(j, i) * spec[i];
    return out;
  }
};

void real_in_place(Spectrum& v) {
  for (auto& z : v) z = z.real();
}

// Reconstructed second-order fields, physical and 2/3-truncated.
struct Fields {
  std::array<Spectrum, 3> a, a_t, a_hat;
  Spectrum phi, phi_t, phi_hat;
  std::array<Spectrum, 2> dphi;
};

Fields reconstruct(const Kernel& K, const Vec& u) {
  const std::size_t N = K.size();
  Fields f;
  for (int mu = 0; mu < 3; ++mu) {
    Spectrum a(N), at(N);
    for (std::size_t i = 0; i < N; ++i) {
      a[i] = u.c[mu][i] + u.c[3 + mu][i];
      at[i] = kI * K.w_a[i] * (u.c[mu][i] - u.c[3 + mu][i]);
    }
    if (K.hom()) at[0] = u.rate[mu];
    f.a[mu] = K.physical(a);
    f.a_t[mu] = K.physical(at);
    real_in_place(f.a[mu]);
    real_in_place(f.a_t[mu]);
    f.a_hat[mu] = std::move(a);
  }
  Spectrum p(N), pt(N);
  for (std::size_t i = 0; i < N; ++i) {
    p[i] = u.c[6][i] + u.c[7][i];
    pt[i] = kI * K.t->kbracket[i] * (u.c[6][i] - u.c[7][i]);
  }
  f.phi = K.physical(p);
  f.phi_t = K.physical(pt);
  f.dphi[0] = K.physical(K.derivative(p, 1));
  f.dphi[1] = K.physical(K.derivative(p, 2));
  f.phi_hat = std::move(p);
  return f;
}

// b1, b2, b3 in physical space (not yet truncated).
std::array<Spectrum, 3> bilinear(const Kernel& K, const Vec& u, const Fields& f) {
  const std::size_t N = K.size();
  // A^cf_j from d_t A_0 through the Lorenz condition: k_j / W (A0+ - A0-).
  std::array<Spectrum, 2> cf, df, sm;
  Spectrum psi(N);
  for (std::size_t i = 0; i < N; ++i)
    psi[i] = K.riesz(1, i) * f.a_hat[2][i] - K.riesz(2, i) * f.a_hat[1][i];
  for (int j = 1; j <= 2; ++j) {
    Spectrum c(N), d(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double w = K.w_a[i];
      c[i] = w == 0.0 ? 0.0 : (K.kj(j, i) / w) * (u.c[0][i] - u.c[3][i]);
      d[i] = (j == 1 ? 1.0 : -1.0) * K.riesz(j == 1 ? 2 : 1, i) * psi[i];
    }
    if (K.hom()) c[0] = 0.0;
    cf[j - 1] = K.physical(c);
    df[j - 1] = K.physical(d);
    real_in_place(cf[j - 1]);
    real_in_place(df[j - 1]);
    if (K.hom()) {
      sm[j - 1].assign(N, f.a_hat[j][0].real());
    } else {
      Spectrum s(N);
      for (std::size_t i = 0; i < N; ++i) {
        const double kb = K.t->kbracket[i];
        s[i] = f.a_hat[j][i] / (kb * kb);
      }
      sm[j - 1] = K.physical(s);
      real_in_place(sm[j - 1]);
    }
  }
  std::array<Spectrum, 3> b{Spectrum(N), Spectrum(N), Spectrum(N)};
  for (std::size_t i = 0; i < N; ++i) {
    b[0][i] = f.a[0][i] * f.phi_t[i] - cf[0][i] * f.dphi[0][i] - cf[1][i] * f.dphi[1][i];
    b[1][i] = df[0][i] * f.dphi[0][i] + df[1][i] * f.dphi[1][i];
    b[2][i] = sm[0][i] * f.dphi[0][i] + sm[1][i] * f.dphi[1][i];
  }
  return b;
}

// (V'(r) - V'(0)) with a 2/3 truncation after every product for polynomials.
Spectrum potential_shift(const Kernel& K, const Potential& V, const Spectrum& r) {
  const std::size_t N = r.size();
  if (V.is_polynomial()) {
    const auto d = V.derivative_coefficients();
    Spectrum q(N, cplx(d.back()));
    if (d.size() == 1) return Spectrum(N);
    for (std::size_t k = d.size() - 1; k-- > 1;) {
      for (std::size_t i = 0; i < N; ++i) q[i] *= r[i];
      q = K.dealiased(std::move(q));
      for (auto& z : q) z += d[k];
    }
    for (std::size_t i = 0; i < N; ++i) q[i] *= r[i];
    return K.dealiased(std::move(q));
  }
  const double v0 = V.derivative(0.0);
  Spectrum q(N);
  for (std::size_t i = 0; i < N; ++i) q[i] = V.derivative(r[i].real()) - v0;
  return K.dealiased(std::move(q));
}

struct Sources {
  std::array<Spectrum, 3> m;  // spectral
  Spectrum n;                 // spectral
};

Sources sources(const Kernel& K, const Vec& u, const Potential& V) {
  const std::size_t N = K.size();
  const Fields f = reconstruct(K, u);

  Spectrum r(N), s(N);
  for (std::size_t i = 0; i < N; ++i) {
    r[i] = std::norm(f.phi[i]);
    s[i] = 2.0 * (std::conj(f.phi[i]) * f.phi_t[i]).real();
  }
  r = K.dealiased(std::move(r));
  s = K.dealiased(std::move(s));
  real_in_place(r);
  real_in_place(s);

  // P_rho = A_rho |phi|^2 and its time derivative.
  std::array<Spectrum, 3> p_hat;
  std::array<Spectrum, 3> p_t;
  for (int rho = 0; rho < 3; ++rho) {
    Spectrum p(N), pt(N);
    for (std::size_t i = 0; i < N; ++i) {
      p[i] = f.a[rho][i] * r[i];
      pt[i] = f.a_t[rho][i] * r[i] + f.a[rho][i] * s[i];
    }
    p_hat[rho] = K.truncated(K.forward(std::move(p)));
    p_t[rho] = std::move(pt);
  }

  // Upper-index derivatives of phi.
  const std::array<const Spectrum*, 3> du{&f.phi_t, &f.dphi[0], &f.dphi[1]};

  Sources out;
  for (int nu = 0; nu < 3; ++nu) {
    Spectrum phys(N);
    for (int mu = 0; mu < 3; ++mu)
      for (int rho = 0; rho < 3; ++rho) {
        const int e = levi_civita(nu, mu, rho);
        if (e == 0) continue;
        const double g = metric_sign(mu) * metric_sign(rho);
        // -eps Im Q^{mu rho}, Q^{mu rho} = d^mu conj(phi) d^rho phi - (mu <-> rho)
        for (std::size_t i = 0; i < N; ++i)
          phys[i] -= e * g * 2.0 * (std::conj((*du[mu])[i]) * (*du[rho])[i]).imag();
        // 2 eps d^0 (A^rho |phi|^2)
        if (mu == 0)
          for (std::size_t i = 0; i < N; ++i) phys[i] += 2.0 * e * metric_sign(rho) * p_t[rho][i];
      }
    Spectrum m = K.truncated(K.forward(std::move(phys)));
    // 2 eps d^j (A^rho |phi|^2), j spatial
    for (int j = 1; j <= 2; ++j)
      for (int rho = 0; rho < 3; ++rho) {
        const int e = levi_civita(nu, j, rho);
        if (e == 0) continue;
        const double g = metric_sign(j) * metric_sign(rho);
        for (std::size_t i = 0; i < N; ++i) m[i] += 2.0 * e * g * kI * K.kj(j, i) * p_hat[rho][i];
      }
    if (!K.hom())
      for (std::size_t i = 0; i < N; ++i) m[i] += f.a_hat[nu][i];
    out.m[nu] = std::move(m);
  }

  const auto b = bilinear(K, u, f);
  Spectrum aa(N);
  for (std::size_t i = 0; i < N; ++i)
    aa[i] = f.a[0][i] * f.a[0][i] - f.a[1][i] * f.a[1][i] - f.a[2][i] * f.a[2][i];
  aa = K.dealiased(std::move(aa));
  const Spectrum vshift = potential_shift(K, V, r);

  Spectrum nphys(N);
  for (std::size_t i = 0; i < N; ++i)
    nphys[i] = 2.0 * kI * (b[0][i] - b[1][i] - b[2][i]) + (aa[i] - vshift[i]) * f.phi[i];
  out.n = K.truncated(K.forward(std::move(nphys)));
  const double lin = 1.0 - V.derivative(0.0);
  if (lin != 0.0)
    for (std::size_t i = 0; i < N; ++i) out.n[i] += lin * f.phi_hat[i];
  return out;
}

// Interaction-picture nonlinearity: d_t u_pm = pm i W u_pm -+ (i/2) W^{-1} F.
Vec nonlinearity(const Kernel& K, const Vec& u, const Potential& V) {
  const Sources src = sources(K, u, V);
  const std::size_t N = K.size();
  Vec k;
  for (int mu = 0; mu < 3; ++mu) {
    Spectrum kp(N), km(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double w = K.w_a[i];
      if (w == 0.0) continue;
      const cplx g = 0.5 * kI * src.m[mu][i] / w;
      kp[i] = -g;
      km[i] = g;
    }
    if (K.hom()) {
      kp[0] = u.rate[mu];
      km[0] = 0.0;
      k.rate[mu] = src.m[mu][0].real();
    }
    k.c[mu] = std::move(kp);
    k.c[3 + mu] = std::move(km);
  }
  Spectrum kp(N), km(N);
  for (std::size_t i = 0; i < N; ++i) {
    const cplx g = 0.5 * kI * src.n[i] / K.t->kbracket[i];
    kp[i] = -g;
    km[i] = g;
  }
  k.c[6] = std::move(kp);
  k.c[7] = std::move(km);
  return k;
}

// Linear propagator exp(h L), L = diag(+iW, -iW) per component.
struct Propagator {
  std::array<Spectrum, 8> e;
  Propagator(const Kernel& K, double h) {
    const std::size_t N = K.size();
    for (int c = 0; c < 8; ++c) {
      const double sign = (c < 3 || c == 6) ? 1.0 : -1.0;
      const auto& w = c < 6 ? K.w_a : K.t->kbracket;
      e[c].resize(N);
      for (std::size_t i = 0; i < N; ++i) e[c][i] = std::polar(1.0, sign * w[i] * h);
    }
  }
  Vec apply(Vec v) const {
    for (int c = 0; c < 8; ++c)
      for (std::size_t i = 0; i < v.c[c].size(); ++i) v.c[c][i] *= e[c][i];
    return v;
  }
};

Spectrum spectrum_of(const ScalarField& f) {
  const ScalarField spec = f.to_spectral();
  return Spectrum(spec.values().begin(), spec.values().end());
}

Vec to_vec(const SplitState& s) {
  Vec v;
  for (int mu = 0; mu < 3; ++mu) {
    v.c[mu] = spectrum_of(s.a_plus[mu]);
    v.c[3 + mu] = spectrum_of(s.a_minus[mu]);
  }
  v.c[6] = spectrum_of(s.phi_plus);
  v.c[7] = spectrum_of(s.phi_minus);
  v.rate = s.a_rate;
  return v;
}

SplitState from_vec(const Grid& grid, Vec v, SplitMode mode, double time) {
  auto field = [&](Spectrum& c) { return ScalarField(grid, std::move(c), Representation::spectral, false); };
  SplitState s{{field(v.c[0]), field(v.c[1]), field(v.c[2])},
               {field(v.c[3]), field(v.c[4]), field(v.c[5])},
               field(v.c[6]),
               field(v.c[7]),
               v.rate,
               mode,
               time};
  return s;
}

double spectrum_norm(const Spectrum& v) {
  double sum = 0.0;
  for (const auto& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

bool finite(const Vec& v) {
  for (const auto& c : v.c)
    for (const auto& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  for (double r : v.rate)
    if (!std::isfinite(r)) return false;
  return true;
}

Vec lawson_rk4(const Kernel& K, const Vec& u, double dt, const Propagator& eh, const Propagator& ef,
               const Potential& V) {
  const Vec k1 = nonlinearity(K, u, V);
  Vec ua = u;
  axpy(ua, 0.5 * dt, k1);
  ua = eh.apply(std::move(ua));
  const Vec k2 = nonlinearity(K, ua, V);
  Vec ub = eh.apply(u);
  axpy(ub, 0.5 * dt, k2);
  const Vec k3 = nonlinearity(K, ub, V);
  Vec uc = ef.apply(u);
  axpy(uc, dt, eh.apply(k3));
  const Vec k4 = nonlinearity(K, uc, V);

  Vec next = ef.apply(u);
  axpy(next, dt / 6.0, ef.apply(k1));
  Vec mid = k2;
  axpy(mid, 1.0, k3);
  axpy(next, dt / 3.0, eh.apply(std::move(mid)));
  axpy(next, dt / 6.0, k4);
  return next;
}

void check_growth(const Vec& before, const Vec& after, double time) {
  if (!finite(after)) throw StepUnstable("non-finite value produced by step", time);
  std::array<double, 8> nb{};
  double total = 0.0;
  for (int c = 0; c < 8; ++c) {
    nb[c] = spectrum_norm(before.c[c]);
    total += nb[c] * nb[c];
  }
  total = std::sqrt(total);
  for (int c = 0; c < 8; ++c) {
    const double na = spectrum_norm(after.c[c]);
    // components that start near zero (A_0 with compatible data) are measured
    // against a tenth of the whole state instead
    if (na > 10.0 * std::max(nb[c], 0.1 * total))
      throw StepUnstable("component norm grew more than tenfold in one step", time);
  }
}

ScalarField physical_field(const Grid& grid, Spectrum spec, bool real) {
  ScalarField f = ScalarField(grid, std::move(spec), Representation::spectral, real).to_physical();
  return real ? f.real_part() : f.with_real_flag(false);
}

}  // namespace

// ---------------------------------------------------------------------------

SplitState split(const GaugeState& state, SplitMode mode, ZeroModePolicy policy) {
  state.validate();
  const Grid& grid = state.grid();
  const Kernel K(grid, mode);
  const std::size_t N = grid.size();
  Vec v;
  for (int mu = 0; mu < 3; ++mu) {
    const auto a = spectrum_of(state.a[mu]);
    const auto at = spectrum_of(state.a_t[mu]);
    if (K.hom()) check_zero_mode(grid, at, policy, "d_t A_mu (homogeneous splitting)");
    Spectrum p(N), m(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double w = K.w_a[i];
      const cplx d = w == 0.0 ? 0.0 : -kI * at[i] / w;
      p[i] = 0.5 * (a[i] + d);
      m[i] = 0.5 * (a[i] - d);
    }
    if (K.hom()) {
      p[0] = a[0];
      m[0] = 0.0;
      v.rate[mu] = at[0].real();
    }
    v.c[mu] = std::move(p);
    v.c[3 + mu] = std::move(m);
  }
  const auto phi = spectrum_of(state.phi);
  const auto phi_t = spectrum_of(state.phi_t);
  Spectrum p(N), m(N);
  for (std::size_t i = 0; i < N; ++i) {
    const cplx d = -kI * phi_t[i] / K.t->kbracket[i];
    p[i] = 0.5 * (phi[i] + d);
    m[i] = 0.5 * (phi[i] - d);
  }
  v.c[6] = std::move(p);
  v.c[7] = std::move(m);
  return from_vec(grid, std::move(v), mode, state.time);
}

GaugeState unsplit(const SplitState& s) {
  const Grid& grid = s.grid();
  const Kernel K(grid, s.mode);
  const Vec v = to_vec(s);
  const std::size_t N = grid.size();
  GaugeState out = GaugeState::zero(grid, s.time);
  for (int mu = 0; mu < 3; ++mu) {
    Spectrum a(N), at(N);
    for (std::size_t i = 0; i < N; ++i) {
      a[i] = v.c[mu][i] + v.c[3 + mu][i];
      at[i] = kI * K.w_a[i] * (v.c[mu][i] - v.c[3 + mu][i]);
    }
    if (K.hom()) at[0] = v.rate[mu];
    out.a[mu] = physical_field(grid, std::move(a), true);
    out.a_t[mu] = physical_field(grid, std::move(at), true);
  }
  Spectrum p(N), pt(N);
  for (std::size_t i = 0; i < N; ++i) {
    p[i] = v.c[6][i] + v.c[7][i];
    pt[i] = kI * K.t->kbracket[i] * (v.c[6][i] - v.c[7][i]);
  }
  out.phi = physical_field(grid, std::move(p), false);
  out.phi_t = physical_field(grid, std::move(pt), false);
  return out;
}

ScalarField null_form_q(const ScalarField& u, const ScalarField& u_t, const ScalarField& v,
                        const ScalarField& v_t, int alpha, int beta) {
  if (alpha < 0 || alpha > 2 || beta < 0 || beta > 2) throw std::invalid_argument("null_form_q: index out of range");
  auto d = [](const ScalarField& f, const ScalarField& f_t, int mu) {
    return mu == 0 ? f_t.to_physical() : spatial_derivative(f, mu);
  };
  if (alpha == beta) return ScalarField::zeros(u.grid(), false);
  const ScalarField q = d(u, u_t, alpha) * d(v, v_t, beta) - d(u, u_t, beta) * d(v, v_t, alpha);
  require_finite(q, "null form");
  return dealias(q).to_physical().with_real_flag(false);
}

DivCurl divcurl_decompose(const ScalarField& a1, const ScalarField& a2, SplitMode mode, ZeroModePolicy policy) {
  const Grid& grid = a1.grid();
  if (!(a2.grid() == grid)) throw std::invalid_argument("divcurl_decompose: grid mismatch");
  require_finite(a1, "A_1");
  require_finite(a2, "A_2");
  const bool hom = mode == SplitMode::hom_gauge;
  if (hom) {
    check_zero_mode(grid, a1.to_spectral().values(), policy, "A_1 (homogeneous decomposition)");
    check_zero_mode(grid, a2.to_spectral().values(), policy, "A_2 (homogeneous decomposition)");
  }
  auto R = [&](const ScalarField& f, int j) {
    return apply_multiplier(f, hom ? Multiplier::riesz_hom(j) : Multiplier::riesz_inhom(j));
  };
  const ScalarField psi = R(a2, 1) - R(a1, 2);
  const ScalarField div = R(a1, 1) + R(a2, 2);
  DivCurl out{{R(psi, 2).real_part(), (-R(psi, 1)).real_part()},
              {(-R(div, 1)).real_part(), (-R(div, 2)).real_part()},
              {ScalarField::zeros(grid), ScalarField::zeros(grid)}};
  if (hom) {
    out.smooth[0] = ScalarField::constant(grid, a1.mean().real());
    out.smooth[1] = ScalarField::constant(grid, a2.mean().real());
  } else {
    out.smooth[0] = apply_multiplier(a1, Multiplier::frac_lap_inhom(-2.0)).real_part();
    out.smooth[1] = apply_multiplier(a2, Multiplier::frac_lap_inhom(-2.0)).real_part();
  }
  return out;
}

BilinearTerms bilinear_terms(const SplitState& s) {
  const Kernel K(s.grid(), s.mode);
  const Vec v = to_vec(s);
  const Fields f = reconstruct(K, v);
  auto b = bilinear(K, v, f);
  auto out = [&](Spectrum& x) { return physical_field(s.grid(), K.truncated(K.forward(std::move(x))), false); };
  return {out(b[0]), out(b[1]), out(b[2])};
}

SplitRhs rhs(const SplitState& s, const Potential& potential) {
  const Kernel K(s.grid(), s.mode);
  Sources src = sources(K, to_vec(s), potential);
  SplitRhs out{{physical_field(s.grid(), std::move(src.m[0]), true),
                physical_field(s.grid(), std::move(src.m[1]), true),
                physical_field(s.grid(), std::move(src.m[2]), true)},
               physical_field(s.grid(), std::move(src.n), false)};
  for (const auto& m : out.m) require_finite(m, "M_mu");
  require_finite(out.n, "N");
  return out;
}

SplitState step(const SplitState& s, double dt, const Potential& potential) {
  if (!std::isfinite(dt) || dt == 0.0) throw InvalidRange("step: dt must be finite and non-zero");
  const Kernel K(s.grid(), s.mode);
  const Vec u = to_vec(s);
  const Propagator eh(K, 0.5 * dt), ef(K, dt);
  Vec next = lawson_rk4(K, u, dt, eh, ef, potential);
  check_growth(u, next, s.time);
  return from_vec(s.grid(), std::move(next), s.mode, s.time + dt);
}

double stable_dt_bound(const GaugeState& state) {
  double amax = 0.0;
  for (const auto& a : state.a) amax = std::max(amax, a.max_abs());
  const double pmax = state.phi.max_abs();
  double bound = 1.0;
  if (amax > 0.0) bound = std::min(bound, 1.0 / amax);
  if (pmax > 0.0) bound = std::min(bound, 1.0 / (pmax * pmax));
  return 0.5 * bound;
}

double Monitors::max() const noexcept { return std::max({v1, v2, w, u}); }

Monitors constraint_monitors(const GaugeState& state) {
  const CurrentVector j = current(state);
  const double js = std::hypot(j.j[1].l2_norm(), j.j[2].l2_norm());
  const double vnorm = std::max(1.0, js);
  // eps_{jk} J^k: j = 1 -> J^2 = -J_2, j = 2 -> -J^1 = J_1
  const ScalarField v1 = state.a_t[1].to_physical() - spatial_derivative(state.a[0], 1) + j.j[2];
  const ScalarField v2 = state.a_t[2].to_physical() - spatial_derivative(state.a[0], 2) - j.j[1];
  const ConstraintResiduals r = constraint_residuals(state);
  return {v1.l2_norm() / vnorm, v2.l2_norm() / vnorm, r.gauss, r.lorenz};
}

void record_monitors(MonitorSeries& series, const GaugeState& state, const Potential& potential) {
  const Monitors m = constraint_monitors(state);
  const ConstraintResiduals r = constraint_residuals(state);
  const double l2 = state.phi.l2_norm();
  series.times.push_back(state.time);
  series.energy.push_back(energy(state, potential));
  series.charge.push_back(r.charge);
  series.charge_l2.push_back(l2 * l2);
  series.kinetic.push_back(covariant_kinetic(state));
  series.i_t.push_back(i_of_t(state));
  series.v1.push_back(m.v1);
  series.v2.push_back(m.v2);
  series.gauss.push_back(m.w);
  series.lorenz.push_back(m.u);
}

Trajectory evolve(const GaugeState& state0, double T, double dt, const Potential& potential, SplitMode mode,
                  const EvolveOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidRange("evolve: dt must be positive");
  if (!std::isfinite(T)) throw InvalidRange("evolve: T must be finite");
  if (options.record_every < 1) throw InvalidRange("evolve: record_every must be >= 1");
  state0.validate();

  const auto warn = options.warn ? options.warn : [](const std::string& msg) {
    std::fprintf(stderr, "warning: %s\n", msg.c_str());
  };

  Trajectory traj{{}, {}, 0.0, 0, options.record_every, mode, state0};
  traj.steps = T == 0.0 ? 0 : static_cast<int>(std::ceil(std::abs(T) / dt - 1e-9));
  traj.dt = traj.steps > 0 ? T / traj.steps : 0.0;

  auto record = [&](const GaugeState& g) {
    record_monitors(traj.monitors, g, potential);
    if (options.store_states) traj.states.push_back(g);
    if (options.on_record) options.on_record(g);
  };

  bool warned = false;
  auto check_dt = [&](const GaugeState& g) {
    const double bound = stable_dt_bound(g);
    if (!warned && std::abs(traj.dt) > bound) {
      warned = true;
      char buf[160];
      std::snprintf(buf, sizeof buf, "dt = %.3g exceeds the stability heuristic %.3g at t = %.6g",
                    std::abs(traj.dt), bound, g.time);
      warn(buf);
    }
  };

  record(state0);
  check_dt(state0);
  if (traj.steps == 0) return traj;

  const Kernel K(state0.grid(), mode);
  const Propagator eh(K, 0.5 * traj.dt), ef(K, traj.dt);
  const SplitState s0 = split(state0, mode, options.policy);
  Vec u = to_vec(s0);
  const double t0 = state0.time;
  for (int n = 1; n <= traj.steps; ++n) {
    const double t = t0 + (n - 1) * traj.dt;
    Vec next = lawson_rk4(K, u, traj.dt, eh, ef, potential);
    check_growth(u, next, t);
    u = std::move(next);
    if (n % options.record_every == 0 || n == traj.steps) {
      GaugeState g = unsplit(from_vec(state0.grid(), u, mode, t0 + n * traj.dt));
      if (n == traj.steps) g.time = t0 + T;
      check_dt(g);
      record(g);
      if (n == traj.steps) traj.final_state = std::move(g);
    }
  }
  return traj;
}

void write_monitors_csv(const std::filesystem::path& path, const MonitorSeries& series) {
  series.validate();
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "t,E,charge,v1,v2,w,u,I_t\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < series.size(); ++i)
    out << series.times[i] << ',' << series.energy[i] << ',' << series.charge[i] << ',' << series.v1[i] << ','
        << series.v2[i] << ',' << series.gauss[i] << ',' << series.lorenz[i] << ',' << series.i_t[i] << '\n';
}

}  // namespace cshl
