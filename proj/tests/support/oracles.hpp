#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the FFT wrapper or the spectral multipliers: transforms are O(n^4) direct
// sums and derivatives are finite differences or closed-form formulas.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "cshl/field.hpp"

namespace oracle {

using cshl::cplx;
using cshl::Grid;
using cshl::ScalarField;

inline int mode_of(int i, int n) { return i < n / 2 ? i : i - n; }

/// f^(m) = n^{-2} sum_x f(x) exp(-i k.x), storage order i1 * n + i2.
inline std::vector<cplx> direct_dft(const Grid& g, const std::vector<cplx>& phys) {
  const int n = g.n();
  const double two_pi_n = 2.0 * std::numbers::pi / n;
  std::vector<cplx> out(phys.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx s = 0.0;
      for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2)
          s += phys[x1 * n + x2] * std::polar(1.0, -two_pi_n * (double(a) * x1 + double(b) * x2));
      out[a * n + b] = s / double(n * n);
    }
  return out;
}

inline std::vector<cplx> direct_idft(const Grid& g, const std::vector<cplx>& spec) {
  const int n = g.n();
  const double two_pi_n = 2.0 * std::numbers::pi / n;
  std::vector<cplx> out(spec.size());
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2) {
      cplx s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s += spec[a * n + b] * std::polar(1.0, two_pi_n * (double(a) * x1 + double(b) * x2));
      out[x1 * n + x2] = s;
    }
  return out;
}

inline std::vector<cplx> physical(const ScalarField& f) {
  const ScalarField p = f.to_physical();
  return {p.values().begin(), p.values().end()};
}

/// Applies a symbol sigma(k1, k2) through the direct sums.
inline std::vector<cplx> direct_multiplier(const ScalarField& f,
                                           const std::function<cplx(double, double)>& sigma) {
  const Grid& g = f.grid();
  auto spec = direct_dft(g, physical(f));
  const int n = g.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) spec[a * n + b] *= sigma(g.k0() * mode_of(a, n), g.k0() * mode_of(b, n));
  return direct_idft(g, spec);
}

/// Fourth-order central difference along axis j (1 or 2), periodic.
inline std::vector<cplx> fd_derivative(const ScalarField& f, int j) {
  const Grid& g = f.grid();
  const int n = g.n();
  const double h = g.spacing();
  const auto v = physical(f);
  auto at = [&](int i1, int i2) { return v[((i1 + n) % n) * n + (i2 + n) % n]; };
  std::vector<cplx> out(v.size());
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const int d1 = j == 1, d2 = j == 2;
      out[i1 * n + i2] = (-at(i1 + 2 * d1, i2 + 2 * d2) + 8.0 * at(i1 + d1, i2 + d2) -
                          8.0 * at(i1 - d1, i2 - d2) + at(i1 - 2 * d1, i2 - 2 * d2)) /
                         (12.0 * h);
    }
  return out;
}

/// Fourth-order five-point Laplacian per axis.
inline std::vector<cplx> fd_laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  const double h = g.spacing();
  const auto v = physical(f);
  auto at = [&](int i1, int i2) { return v[((i1 + n) % n) * n + (i2 + n) % n]; };
  std::vector<cplx> out(v.size());
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      cplx s = 0.0;
      for (int j = 1; j <= 2; ++j) {
        const int d1 = j == 1, d2 = j == 2;
        s += (-at(i1 + 2 * d1, i2 + 2 * d2) + 16.0 * at(i1 + d1, i2 + d2) - 30.0 * at(i1, i2) +
              16.0 * at(i1 - d1, i2 - d2) - at(i1 - 2 * d1, i2 - 2 * d2)) /
             (12.0 * h * h);
      }
      out[i1 * n + i2] = s;
    }
  return out;
}

inline double l2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

inline double rel_diff(const ScalarField& a, const std::vector<cplx>& b) { return rel_diff(physical(a), b); }
inline double rel_diff(const ScalarField& a, const ScalarField& b) { return rel_diff(physical(a), physical(b)); }

/// Smooth, non-band-limited periodic test function and its exact gradient:
/// f = exp(sin(k x1) + a cos(k x2)) with k = 2 pi / L.
struct AnalyticBump {
  double a = 0.7;
  double k;
  explicit AnalyticBump(const Grid& g) : k(g.k0()) {}
  double value(double x1, double x2) const { return std::exp(std::sin(k * x1) + a * std::cos(k * x2)); }
  double d1(double x1, double x2) const { return k * std::cos(k * x1) * value(x1, x2); }
  double d2(double x1, double x2) const { return -a * k * std::sin(k * x2) * value(x1, x2); }
};

inline ScalarField sample(const Grid& g, const std::function<cplx(double, double)>& f, bool real = false) {
  return ScalarField::from_function(g, f, real);
}

}  // namespace oracle
