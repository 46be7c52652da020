#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace cshl {

/// Periodic n x n grid of side `length`. Samples are stored row-major with
/// the first index running along x1: value(i1, i2) = data[i1 * n + i2].
class Grid {
 public:
  Grid(int n, double length);

  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }
  double spacing() const noexcept { return length_ / n_; }
  double cell_area() const noexcept { return spacing() * spacing(); }
  double area() const noexcept { return length_ * length_; }

  /// Physical wavenumber unit 2 pi / L.
  double k0() const noexcept { return 2.0 * std::numbers::pi / length_; }

  /// Signed mode index in [-n/2, n/2) for storage index i.
  int mode(int i) const noexcept { return i < n_ / 2 ? i : i - n_; }
  /// Storage index of signed mode m (any integer, wrapped).
  int index_of(int m) const noexcept { return ((m % n_) + n_) % n_; }

  double x(int i) const noexcept { return i * spacing(); }

  bool operator==(const Grid& other) const noexcept {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  int n_;
  double length_;
};

/// Precomputed per-mode wavenumber tables, shared between all fields on a grid.
struct WaveTables {
  std::vector<double> k1, k2;    // physical wavenumbers per storage index
  std::vector<double> kabs;      // |k|
  std::vector<double> kbracket;  // <k> = (1 + |k|^2)^{1/2}
  std::vector<unsigned char> keep;  // 2/3-rule mask: max(|m1|,|m2|) <= n/3
};

/// Cached tables for `grid`; safe to call concurrently.
std::shared_ptr<const WaveTables> wave_tables(const Grid& grid);

}  // namespace cshl
