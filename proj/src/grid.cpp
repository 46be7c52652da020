#include "cshl/grid.hpp"
#include <algorithm>

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "cshl/errors.hpp"

namespace cshl {

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n <= 0 || n % 2 != 0) throw InvalidRange("grid size must be a positive even integer, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidRange("grid length must be positive and finite");
}

std::shared_ptr<const WaveTables> wave_tables(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const WaveTables>> cache;

  std::lock_guard lock(mutex);
  const auto key = std::make_pair(grid.n(), grid.length());
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto t = std::make_shared<WaveTables>();
  const int n = grid.n();
  const std::size_t size = grid.size();
  t->k1.resize(size);
  t->k2.resize(size);
  t->kabs.resize(size);
  t->kbracket.resize(size);
  t->keep.resize(size);
  for (int i1 = 0; i1 < n; ++i1) {
    const int m1 = grid.mode(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int m2 = grid.mode(i2);
      const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
      const double k1 = grid.k0() * m1;
      const double k2 = grid.k0() * m2;
      t->k1[idx] = k1;
      t->k2[idx] = k2;
      t->kabs[idx] = std::sqrt(k1 * k1 + k2 * k2);
      t->kbracket[idx] = std::sqrt(1.0 + k1 * k1 + k2 * k2);
      t->keep[idx] = 3 * std::max(std::abs(m1), std::abs(m2)) <= n ? 1 : 0;
    }
  }
  cache.emplace(key, t);
  return t;
}

}  // namespace cshl
