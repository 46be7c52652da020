#include "cshl/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "cshl/errors.hpp"
#include "cshl/fft.hpp"

namespace cshl {

ScalarField::ScalarField(Grid grid, std::vector<cplx> values, Representation rep, bool is_real)
    : grid_(grid), values_(std::move(values)), rep_(rep), is_real_(is_real) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("ScalarField: value count does not match grid");
}

ScalarField ScalarField::zeros(const Grid& grid, bool is_real) {
  return ScalarField(grid, std::vector<cplx>(grid.size()), Representation::physical, is_real);
}

ScalarField ScalarField::constant(const Grid& grid, cplx value) {
  return ScalarField(grid, std::vector<cplx>(grid.size(), value), Representation::physical,
                     value.imag() == 0.0);
}

ScalarField ScalarField::from_function(const Grid& grid, const std::function<cplx(double, double)>& f,
                                       bool is_real) {
  std::vector<cplx> v(grid.size());
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      cplx value = f(grid.x(i1), grid.x(i2));
      if (is_real) value = value.real();
      v[static_cast<std::size_t>(i1) * n + i2] = value;
    }
  return ScalarField(grid, std::move(v), Representation::physical, is_real);
}

ScalarField ScalarField::plane_wave(const Grid& grid, int m1, int m2, cplx amplitude) {
  const double k1 = grid.k0() * m1, k2 = grid.k0() * m2;
  return from_function(grid, [&](double x1, double x2) {
    return amplitude * std::polar(1.0, k1 * x1 + k2 * x2);
  });
}

ScalarField ScalarField::to_spectral() const {
  if (rep_ == Representation::spectral) return *this;
  ScalarField out = *this;
  fft::forward_2d(grid_.n(), out.values_);
  out.rep_ = Representation::spectral;
  return out;
}

ScalarField ScalarField::to_physical() const {
  if (rep_ == Representation::physical) return *this;
  ScalarField out = *this;
  fft::inverse_2d(grid_.n(), out.values_);
  out.rep_ = Representation::physical;
  return out;
}

double ScalarField::l2_norm() const {
  double sum = 0.0;
  for (const auto& v : values_) sum += std::norm(v);
  const double weight = rep_ == Representation::physical ? grid_.cell_area() : grid_.area();
  return std::sqrt(sum * weight);
}

cplx ScalarField::mean() const {
  if (rep_ == Representation::spectral) return values_[0];
  const cplx sum = std::accumulate(values_.begin(), values_.end(), cplx{});
  return sum / static_cast<double>(values_.size());
}

double ScalarField::max_abs() const {
  const ScalarField p = to_physical();
  double m = 0.0;
  for (const auto& v : p.values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::max_imag() const {
  const ScalarField p = to_physical();
  double m = 0.0;
  for (const auto& v : p.values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ScalarField ScalarField::real_part() const {
  ScalarField out = to_physical();
  for (auto& v : out.values_) v = v.real();
  out.is_real_ = true;
  return out;
}

ScalarField ScalarField::conj() const {
  ScalarField out = to_physical();
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

ScalarField ScalarField::with_real_flag(bool is_real) const {
  ScalarField out = *this;
  out.is_real_ = is_real;
  return out;
}

void ScalarField::require_compatible(const ScalarField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("ScalarField: grid mismatch");
  if (rep_ != other.rep_) throw std::invalid_argument("ScalarField: representation mismatch");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  is_real_ = is_real_ && other.is_real_;
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  is_real_ = is_real_ && other.is_real_;
  return *this;
}

ScalarField& ScalarField::operator*=(cplx scale) {
  for (auto& v : values_) v *= scale;
  is_real_ = is_real_ && scale.imag() == 0.0;
  return *this;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  ScalarField pa = a.to_physical();
  const ScalarField pb = b.to_physical();
  if (!(pa.grid_ == pb.grid_)) throw std::invalid_argument("ScalarField: grid mismatch");
  for (std::size_t i = 0; i < pa.values_.size(); ++i) pa.values_[i] *= pb.values_[i];
  pa.is_real_ = a.is_real_ && b.is_real_;
  return pa;
}

ScalarField ScalarField::map(const std::function<cplx(cplx)>& fn, bool is_real) const {
  ScalarField out = to_physical();
  for (auto& v : out.values_) v = fn(v);
  out.is_real_ = is_real;
  return out;
}

void require_finite(const ScalarField& f, const char* what) {
  if (!f.all_finite()) throw NonFiniteField(std::string("non-finite samples in ") + what);
}

ScalarField random_band_limited(const Grid& grid, int max_mode, std::uint64_t seed, bool is_real,
                                bool zero_mean) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = grid.n();
  const int limit = std::min(max_mode, n / 2 - 1);
  std::vector<cplx> spec(grid.size());
  for (int m1 = -limit; m1 <= limit; ++m1)
    for (int m2 = -limit; m2 <= limit; ++m2) {
      if (zero_mean && m1 == 0 && m2 == 0) continue;
      const double re = normal(rng), im = normal(rng);
      spec[static_cast<std::size_t>(grid.index_of(m1)) * n + grid.index_of(m2)] = {re, im};
    }
  if (is_real) {
    // Symmetrize so that c(-m) = conj(c(m)).
    std::vector<cplx> sym(spec.size());
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
        const std::size_t neg = static_cast<std::size_t>(grid.index_of(-grid.mode(i1))) * n +
                                grid.index_of(-grid.mode(i2));
        sym[idx] = 0.5 * (spec[idx] + std::conj(spec[neg]));
      }
    spec = std::move(sym);
  }
  ScalarField f(grid, std::move(spec), Representation::spectral, is_real);
  ScalarField p = f.to_physical();
  return is_real ? p.real_part() : p;
}

double relative_l2(const ScalarField& a, const ScalarField& b, double floor) {
  const double denom = std::max(b.to_physical().l2_norm(), floor);
  return (a.to_physical() - b.to_physical()).l2_norm() / denom;
}

}  // namespace cshl
