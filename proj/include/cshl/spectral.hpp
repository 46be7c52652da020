#pragma once

#include <span>

#include "cshl/field.hpp"

namespace cshl {

/// How homogeneous negative-power symbols treat the zero mode.
enum class ZeroModePolicy {
  legislate,  // zero mode mapped to 0
  strict,     // throw SingularZeroMode if the zero mode exceeds 1e-10 of the field norm
};

inline constexpr double kZeroModeTolerance = 1e-10;

/// Fourier multiplier symbols. Wavenumbers are physical (2 pi / L per mode).
struct Multiplier {
  enum class Kind {
    frac_lap_hom,    // |xi|^s
    frac_lap_inhom,  // <xi>^s
    riesz_hom,       // (-Delta)^{-1/2} d_j  -> i xi_j / |xi|
    riesz_inhom,     // (1-Delta)^{-1/2} d_j -> i xi_j / <xi>
    proj_low,        // |xi| < cutoff
    proj_high,       // |xi| >= cutoff
    partial,         // d_j -> i xi_j
  };

  Kind kind;
  double exponent = 0.0;  // s for the fractional Laplacians
  int axis = 1;           // j in {1, 2}
  double cutoff = 1.0;    // proj_cutoff for the projections

  static Multiplier frac_lap_hom(double s) { return {Kind::frac_lap_hom, s}; }
  static Multiplier frac_lap_inhom(double s) { return {Kind::frac_lap_inhom, s}; }
  static Multiplier riesz_hom(int j) { return {Kind::riesz_hom, 0.0, j}; }
  static Multiplier riesz_inhom(int j) { return {Kind::riesz_inhom, 0.0, j}; }
  static Multiplier proj_low(double cutoff = 1.0) { return {Kind::proj_low, 0.0, 1, cutoff}; }
  static Multiplier proj_high(double cutoff = 1.0) { return {Kind::proj_high, 0.0, 1, cutoff}; }
  static Multiplier partial(int j) { return {Kind::partial, 0.0, j}; }

  /// True for symbols that are singular at xi = 0 under the homogeneous scaling.
  bool singular_at_zero() const noexcept;

  /// Symbol at physical wavenumber (k1, k2). Odd symbols vanish on the
  /// Nyquist line of their axis (flag `nyquist`), keeping them exactly odd
  /// under the lattice's conjugate symmetry.
  cplx symbol(double k1, double k2, bool nyquist = false) const;
};

/// Multiplies spectral coefficients in place by the symbol of `m`.
void apply_symbol(const Grid& grid, std::span<cplx> spectrum, const Multiplier& m,
                  ZeroModePolicy policy = ZeroModePolicy::legislate);

/// Applies `m` to `f` and returns the result in physical representation.
ScalarField apply_multiplier(const ScalarField& f, const Multiplier& m,
                             ZeroModePolicy policy = ZeroModePolicy::legislate);

enum class RieszKind { hom, inhom };

/// ||(R1^2 + R2^2) f + f|| / ||f|| (hom) or
/// ||(R1^2 + R2^2) f + f - (1 - Delta)^{-1} f|| / ||f|| (inhom).
double riesz_identity_residual(const ScalarField& f, RieszKind kind,
                               ZeroModePolicy policy = ZeroModePolicy::legislate);

/// 2/3-rule truncation: modes with max(|m1|,|m2|) > n/3 are zeroed.
ScalarField dealias(const ScalarField& f);
void dealias_spectrum(const Grid& grid, std::span<cplx> spectrum);

/// Throws SingularZeroMode under the strict policy if the zero-mode share of
/// the spectrum's L2 norm exceeds kZeroModeTolerance.
void check_zero_mode(const Grid& grid, std::span<const cplx> spectrum, ZeroModePolicy policy,
                     const char* what);

}  // namespace cshl
