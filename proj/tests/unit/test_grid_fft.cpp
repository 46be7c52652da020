#include <doctest.h>

#include <thread>

#include "cshl/fft.hpp"
#include "cshl/field.hpp"
#include "oracles.hpp"

using namespace cshl;

TEST_SUITE("grid_fft") {

TEST_CASE("mode bookkeeping") {
  const Grid g(16, 4.0);
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(7) == 7);
  CHECK(g.mode(8) == -8);
  CHECK(g.mode(15) == -1);
  CHECK(g.index_of(-1) == 15);
  CHECK(g.index_of(17) == 1);
  CHECK(g.k0() == doctest::Approx(2.0 * std::numbers::pi / 4.0));
  const auto t = wave_tables(g);
  // storage index i1 * n + i2 carries k = k0 (m1, m2)
  CHECK(t->k1[3 * 16 + 5] == doctest::Approx(3 * g.k0()));
  CHECK(t->k2[3 * 16 + 5] == doctest::Approx(5 * g.k0()));
  CHECK(t->kbracket[0] == 1.0);
}

TEST_CASE("forward transform matches the direct DFT sum") {
  const Grid g(12, 2.5);
  const ScalarField f = oracle::sample(g, [](double x1, double x2) {
    return cplx(std::sin(3 * x1) * std::exp(std::cos(x2)), x1 * x2 * 0.1);
  });
  const auto direct = oracle::direct_dft(g, oracle::physical(f));
  const ScalarField spec = f.to_spectral();
  const auto fast = spec.values();
  CHECK(oracle::rel_diff(std::vector<cplx>(fast.begin(), fast.end()), direct) < 1e-13);
}

TEST_CASE("inverse transform matches the direct sum and round trips") {
  const Grid g(10, 1.0);
  const ScalarField f = random_band_limited(g, 4, 3, false);
  const ScalarField spec = f.to_spectral();
  const auto direct = oracle::direct_idft(g, {spec.values().begin(), spec.values().end()});
  CHECK(oracle::rel_diff(spec.to_physical(), direct) < 1e-13);
  CHECK(relative_l2(spec.to_physical(), f) < 1e-12);
}

TEST_CASE("constants map to one zero-mode coefficient") {
  const Grid g(8, 3.0);
  const ScalarField c = ScalarField::constant(g, cplx(2.0, -1.0)).to_spectral();
  CHECK(std::abs(c[0] - cplx(2.0, -1.0)) < 1e-15);
  double rest = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) rest += std::abs(c[i]);
  CHECK(rest < 1e-14);
}

TEST_CASE("Parseval in both representations") {
  const Grid g(32, 7.0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ScalarField f = random_band_limited(g, 10, seed, seed % 2 == 0);
    double phys = 0.0;
    for (const auto& z : oracle::physical(f)) phys += std::norm(z);
    phys = std::sqrt(phys * g.cell_area());
    CHECK(f.to_spectral().l2_norm() == doctest::Approx(phys).epsilon(1e-12));
  }
}

TEST_CASE("3D transform matches separable direct sums") {
  const int nt = 6, n = 4;
  std::vector<cplx> data(nt * n * n);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (auto& z : data) z = cplx(normal(rng), normal(rng));
  std::vector<cplx> fast = data;
  fft::forward_3d(nt, n, fast);
  double err = 0.0, scale = 0.0;
  for (int a = 0; a < nt; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        cplx s = 0.0;
        for (int t = 0; t < nt; ++t)
          for (int x1 = 0; x1 < n; ++x1)
            for (int x2 = 0; x2 < n; ++x2)
              s += data[(t * n + x1) * n + x2] *
                   std::polar(1.0, -2.0 * std::numbers::pi * (double(a) * t / nt + double(b * x1 + c * x2) / n));
        s /= double(nt * n * n);
        err = std::max(err, std::abs(s - fast[(a * n + b) * n + c]));
        scale = std::max(scale, std::abs(s));
      }
  CHECK(err < 1e-13 * scale);
  fft::inverse_3d(nt, n, fast);
  CHECK(oracle::rel_diff(fast, data) < 1e-13);
}

TEST_CASE("transforms are safe from several threads") {
  const Grid g(48, 1.0);
  const ScalarField f = random_band_limited(g, 12, 9, false);
  const std::vector<cplx> ref = oracle::physical(f.to_spectral());
  std::vector<double> errs(4, 1.0);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < 4; ++w)
      pool.emplace_back([&, w] {
        double e = 0.0;
        for (int r = 0; r < 20; ++r) e = std::max(e, oracle::rel_diff(oracle::physical(f.to_spectral()), ref));
        errs[w] = e;
      });
  }
  for (double e : errs) CHECK(e == 0.0);
}

}
