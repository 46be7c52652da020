#include "cshl/spectral.hpp"

#include <cmath>
#include <string>

#include "cshl/errors.hpp"
#include "cshl/fft.hpp"

namespace cshl {

bool Multiplier::singular_at_zero() const noexcept {
  return (kind == Kind::frac_lap_hom && exponent < 0.0) || kind == Kind::riesz_hom;
}

cplx Multiplier::symbol(double k1, double k2, bool nyquist) const {
  const double k2sum = k1 * k1 + k2 * k2;
  const double kj = axis == 1 ? k1 : k2;
  switch (kind) {
    case Kind::frac_lap_hom:
      if (k2sum == 0.0) return exponent == 0.0 ? 1.0 : 0.0;
      return std::pow(k2sum, 0.5 * exponent);
    case Kind::frac_lap_inhom:
      return std::pow(1.0 + k2sum, 0.5 * exponent);
    case Kind::riesz_hom:
      if (k2sum == 0.0 || nyquist) return 0.0;
      return cplx(0.0, kj / std::sqrt(k2sum));
    case Kind::riesz_inhom:
      if (nyquist) return 0.0;
      return cplx(0.0, kj / std::sqrt(1.0 + k2sum));
    case Kind::proj_low:
      return std::sqrt(k2sum) < cutoff ? 1.0 : 0.0;
    case Kind::proj_high:
      return std::sqrt(k2sum) < cutoff ? 0.0 : 1.0;
    case Kind::partial:
      if (nyquist) return 0.0;
      return cplx(0.0, kj);
  }
  return 0.0;
}

void check_zero_mode(const Grid& grid, std::span<const cplx> spectrum, ZeroModePolicy policy,
                     const char* what) {
  (void)grid;
  if (policy != ZeroModePolicy::strict) return;
  double total = 0.0;
  for (const auto& c : spectrum) total += std::norm(c);
  if (std::abs(spectrum[0]) > kZeroModeTolerance * std::sqrt(total))
    throw SingularZeroMode(std::string("non-zero mean mode in ") + what);
}

void apply_symbol(const Grid& grid, std::span<cplx> spectrum, const Multiplier& m,
                  ZeroModePolicy policy) {
  if (m.singular_at_zero()) check_zero_mode(grid, spectrum, policy, "homogeneous multiplier input");
  const auto tables = wave_tables(grid);
  const int n = grid.n();
  const int nyq = n / 2;  // storage index of mode -n/2
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
      const bool nyquist = (m.axis == 1 ? i1 : i2) == nyq;
      spectrum[idx] *= m.symbol(tables->k1[idx], tables->k2[idx], nyquist);
    }
}

ScalarField apply_multiplier(const ScalarField& f, const Multiplier& m, ZeroModePolicy policy) {
  require_finite(f, "multiplier input");
  const ScalarField spec = f.to_spectral();
  std::vector<cplx> values(spec.values().begin(), spec.values().end());
  apply_symbol(f.grid(), values, m, policy);
  return ScalarField(f.grid(), std::move(values), Representation::spectral, f.is_real()).to_physical();
}

double riesz_identity_residual(const ScalarField& f, RieszKind kind, ZeroModePolicy policy) {
  const auto riesz = [&](int j) {
    return kind == RieszKind::hom ? Multiplier::riesz_hom(j) : Multiplier::riesz_inhom(j);
  };
  const ScalarField phys = f.to_physical();
  ScalarField sum = apply_multiplier(apply_multiplier(phys, riesz(1), policy), riesz(1), policy) +
                    apply_multiplier(apply_multiplier(phys, riesz(2), policy), riesz(2), policy);
  sum += phys;
  if (kind == RieszKind::inhom) sum -= apply_multiplier(phys, Multiplier::frac_lap_inhom(-2.0), policy);
  const double norm = phys.l2_norm();
  return norm == 0.0 ? 0.0 : sum.l2_norm() / norm;
}

void dealias_spectrum(const Grid& grid, std::span<cplx> spectrum) {
  const auto tables = wave_tables(grid);
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    if (!tables->keep[i]) spectrum[i] = 0.0;
}

ScalarField dealias(const ScalarField& f) {
  const ScalarField spec = f.to_spectral();
  std::vector<cplx> values(spec.values().begin(), spec.values().end());
  dealias_spectrum(f.grid(), values);
  return ScalarField(f.grid(), std::move(values), Representation::spectral, f.is_real()).to_physical();
}

}  // namespace cshl
