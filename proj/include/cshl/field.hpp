#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cshl/grid.hpp"

namespace cshl {

using cplx = std::complex<double>;

enum class Representation : std::uint8_t { physical = 0, spectral = 1 };

/// One complex (optionally real-flagged) function on a periodic grid, held in
/// either physical or spectral representation. Spectral coefficients use the
/// normalized transform f^(m) = n^{-2} sum_x f(x) e^{-i k.x}, so that
/// ||f||_{L2}^2 = L^2 sum_m |f^(m)|^2.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<cplx> values,
              Representation rep = Representation::physical, bool is_real = false);

  static ScalarField zeros(const Grid& grid, bool is_real = true);
  static ScalarField constant(const Grid& grid, cplx value);
  static ScalarField from_function(const Grid& grid,
                                   const std::function<cplx(double, double)>& f,
                                   bool is_real = false);
  /// amplitude * exp(i k.x) with k = k0 * (m1, m2).
  static ScalarField plane_wave(const Grid& grid, int m1, int m2, cplx amplitude = 1.0);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
  Representation representation() const noexcept { return rep_; }
  bool is_real() const noexcept { return is_real_; }

  ScalarField to_spectral() const;
  ScalarField to_physical() const;

  /// Grid-weighted L2 norm; identical in either representation up to rounding.
  double l2_norm() const;
  /// Zero-mode (mean) value.
  cplx mean() const;
  double max_abs() const;
  double max_imag() const;
  bool all_finite() const;

  ScalarField real_part() const;
  ScalarField conj() const;
  /// Copy with the real flag set or cleared; values are not modified.
  ScalarField with_real_flag(bool is_real) const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(cplx scale);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, cplx s) { return a *= s; }
  friend ScalarField operator*(cplx s, ScalarField a) { return a *= s; }
  friend ScalarField operator-(ScalarField a) { return a *= -1.0; }

  /// Pointwise product in physical space (no dealiasing).
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);

  /// Applies `fn` to each physical sample.
  ScalarField map(const std::function<cplx(cplx)>& fn, bool is_real) const;

 private:
  void require_compatible(const ScalarField& other) const;

  Grid grid_;
  std::vector<cplx> values_;
  Representation rep_;
  bool is_real_;
};

/// Throws NonFiniteField naming `what` if any sample is NaN/Inf.
void require_finite(const ScalarField& f, const char* what);

/// Random field with independent Gaussian coefficients on modes with
/// max(|m1|,|m2|) <= max_mode (Nyquist line excluded). Real fields get a
/// conjugate-symmetric spectrum.
ScalarField random_band_limited(const Grid& grid, int max_mode, std::uint64_t seed,
                                bool is_real, bool zero_mean = false);

/// Relative L2 distance ||a - b|| / max(||b||, floor).
double relative_l2(const ScalarField& a, const ScalarField& b, double floor = 1e-300);

}  // namespace cshl
