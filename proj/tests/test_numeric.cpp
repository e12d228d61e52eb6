#include <cmath>
#include <limits>

#include "coxlim/numeric.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace coxlim;

TEST_CASE("symmetric matrix rejects asymmetric input") {
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 2}, {2.0000001, 1}}), ValidationError);
  CHECK_NOTHROW(SymMatrix::from_rows({{1, 2}, {2, 1}}));
}

TEST_CASE("Jacobi eigendecomposition reconstructs random symmetric matrices") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen::index(rng, 7);
    const SymMatrix m = gen::sym(rng, n);
    const EigenResult e = eig_sym(m);
    for (std::size_t k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1]);
    for (std::size_t k = 0; k < n; ++k) {
      const Vec mv = m.matrix() * e.vectors[k];
      CHECK(norm(mv - e.values[k] * e.vectors[k]) < 1e-12 * (1 + m.max_norm()));
      CHECK(std::abs(norm(e.vectors[k]) - 1.0) < 1e-13);
      for (std::size_t l = 0; l < k; ++l) CHECK(std::abs(dot(e.vectors[k], e.vectors[l])) < 1e-12);
    }
  }
}

TEST_CASE("Jacobi handles diagonal and repeated eigenvalues") {
  const EigenResult e = eig_sym(SymMatrix::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, -1}}));
  CHECK(e.values[0] == doctest::Approx(-1));
  CHECK(e.values[1] == doctest::Approx(2));
  CHECK(e.values[2] == doctest::Approx(2));
}

TEST_CASE("quadratic solver against expanded products") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    // Roots spread over many magnitudes to exercise cancellation.
    const double r1 = gen::uniform(rng, -1, 1) * std::pow(10.0, gen::uniform(rng, -8, 8));
    const double r2 = gen::uniform(rng, -1, 1) * std::pow(10.0, gen::uniform(rng, -8, 8));
    const double a = gen::uniform(rng, 0.5, 2.0);
    const auto r = solve_quadratic(a, -a * (r1 + r2), a * r1 * r2);
    REQUIRE(r.count == 2);
    const double lo = std::min(r1, r2), hi = std::max(r1, r2);
    CHECK(std::abs(r.roots[0] - lo) <= 1e-12 * std::max(std::abs(lo), std::abs(hi)) + 1e-300);
    CHECK(std::abs(r.roots[1] - hi) <= 1e-12 * std::max(std::abs(lo), std::abs(hi)) + 1e-300);
  }
}

TEST_CASE("quadratic solver edge cases") {
  CHECK(solve_quadratic(1, 0, 1).count == 0);
  const auto dbl = solve_quadratic(1, -2, 1);
  CHECK(dbl.count == 2);
  CHECK(dbl.roots[0] == doctest::Approx(1));
  const auto lin = solve_quadratic(0, 2, -4);
  CHECK(lin.count == 1);
  CHECK(lin.roots[0] == doctest::Approx(2));
  CHECK(solve_quadratic(0, 0, 0).degenerate);
}

TEST_CASE("quantize_key rejects bad input") {
  CHECK_THROWS_AS(quantize_key(Vec{std::nan("")}, 1e-8), ValidationError);
  CHECK_THROWS_AS(quantize_key(Vec{1.0}, 0.0), ValidationError);
  CHECK_THROWS_AS(quantize_key(Vec{1e300}, 1e-8), ValidationError);
  CHECK(quantize_key(Vec{1.0, -2.4e-8}, 1e-8) == Key{100000000, -2});
}

TEST_CASE("compress is odd, monotone and the identity near zero") {
  double prev = compress(-1e6);
  for (int i = -4000; i <= 4000; ++i) {
    const double x = std::copysign(std::pow(10.0, std::abs(i) / 500.0 - 2.0), i);
    const double c = compress(x);
    CHECK(c >= prev);
    prev = c;
    CHECK(compress(-x) == doctest::Approx(-c));
  }
  CHECK(compress(0.25) == 0.25);
}

TEST_CASE("ApproxIndex matches within tolerance across cell edges") {
  ApproxIndex idx(1e-8, 1e-10);
  const Vec a{0.5, 5e-9 - 1e-11};  // just below a cell edge
  CHECK(idx.insert(a).second);
  CHECK(idx.find(Vec{0.5, 5e-9 + 1e-11}) == 0);
  CHECK(idx.find(Vec{0.5, 5e-9 + 1e-9}) == -1);
  CHECK_FALSE(idx.insert(Vec{0.5 + 5e-11, 5e-9}).second);
  CHECK(idx.size() == 1);
}

TEST_CASE("ApproxIndex agrees with brute-force search") {
  std::mt19937_64 rng(4);
  ApproxIndex idx(1e-8, 1e-10);
  std::vector<Vec> stored;
  for (int trial = 0; trial < 3000; ++trial) {
    Vec v = gen::vec(rng, 3, -2, 2);
    if (!stored.empty() && gen::index(rng, 3) == 0) {
      v = stored[gen::index(rng, stored.size())];
      for (double& x : v) x += gen::uniform(rng, -5e-11, 5e-11);
    }
    long brute = -1;
    for (std::size_t k = 0; k < stored.size() && brute < 0; ++k) {
      bool same = true;
      for (std::size_t i = 0; i < 3; ++i)
        same = same && std::abs(compress(stored[k][i]) - compress(v[i])) <= 1e-10;
      if (same) brute = static_cast<long>(k);
    }
    const auto [at, inserted] = idx.insert(v);
    CHECK(inserted == (brute < 0));
    if (brute >= 0) CHECK(at == brute);
    else stored.push_back(v);
  }
}

TEST_CASE("parallel Hausdorff equals the serial reference") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet a, b;
    for (std::size_t i = 0, n = 1 + gen::index(rng, 300); i < n; ++i) a.push_back(gen::vec(rng, 3));
    for (std::size_t i = 0, n = 1 + gen::index(rng, 300); i < n; ++i) b.push_back(gen::vec(rng, 3));
    CHECK(hausdorff(a, b) == hausdorff_serial(a, b));
    CHECK(hausdorff(a, b) == hausdorff(b, a));
  }
  CHECK(hausdorff({{0, 0}}, {{3, 4}}) == doctest::Approx(5));
  CHECK(hausdorff({{0, 0}, {1, 0}}, {{0, 0}}) == doctest::Approx(1));
}

TEST_CASE("orthonormal complement") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen::index(rng, 5);
    const Vec normal = gen::vec(rng, n);
    const auto basis = orthonormal_complement(normal);
    REQUIRE(basis.size() == n - 1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      CHECK(std::abs(dot(basis[k], normal)) < 1e-12);
      CHECK(std::abs(norm(basis[k]) - 1) < 1e-12);
      for (std::size_t l = 0; l < k; ++l) CHECK(std::abs(dot(basis[k], basis[l])) < 1e-12);
    }
  }
}
