#include <cmath>

#include "coxlim/domain.hpp"
#include "coxlim/hilbert.hpp"
#include "coxlim/instances.hpp"
#include "coxlim/limits.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace coxlim;

namespace {

double brute_hausdorff(const PointSet& a, const PointSet& b) {
  auto directed = [](const PointSet& p, const PointSet& r) {
    double worst = 0.0;
    for (const Vec& x : p) {
      double best = 1e300;
      for (const Vec& y : r) best = std::min(best, euclid_dist(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

TEST_CASE("orbit frontiers: sizes and location") {
  const CoxeterSystem rank2 = instances::rank2_lorentzian();
  const Ball ball = enumerate_ball(rank2, 12);
  CHECK(orbit_frontier(rank2, ball, 0).size() == 1);
  for (std::size_t k = 1; k <= 12; ++k) CHECK(orbit_frontier(rank2, ball, k).size() == 2);
  CHECK_THROWS_AS(orbit_frontier(rank2, ball, 13), ValidationError);

  const CoxeterSystem t237 = instances::triangle_237();
  const Ball b237 = enumerate_ball(t237, 10);
  for (std::size_t k = 0; k <= 10; ++k) {
    const PointSet pts = orbit_frontier(t237, b237, k);
    CHECK(pts.size() == b237.levels[k].size());
    for (const Vec& p : pts) {
      CHECK(q(t237, p) < 0.0);
      CHECK(std::abs(one_norm(t237, p) - 1) < 1e-12);
    }
  }
}

TEST_CASE("orbit points move out to the boundary") {
  const CoxeterSystem sys = instances::free_rank3();
  double prev = 1.0;
  for (std::size_t k = 2; k <= 10; k += 2) {
    double worst = -1e300;
    for (const Vec& p : orbit_frontier(sys, k)) worst = std::max(worst, q(sys, p));
    CHECK(worst < 0.0);
    CHECK(-worst < prev);
    prev = -worst;
  }
}

TEST_CASE("frontier distances use the Hausdorff distance of the two sets") {
  const CoxeterSystem sys = instances::triangle_237();
  const auto rows = theorem2_check(sys, {4, 6});
  REQUIRE(rows.size() == 2);
  const RootCloud cloud = enumerate_roots(sys, 6);
  CHECK(rows[1].depth == 6);
  CHECK(rows[1].hausdorff == doctest::Approx(brute_hausdorff(orbit_frontier(sys, 6), frontier(cloud, 6))));
  CHECK_THROWS_AS(theorem2_check(sys, {6, 4}), ValidationError);
  CHECK(theorem2_check(sys, {}).empty());
}

TEST_CASE("orbit and root frontiers approach each other") {
  for (auto make : {instances::rank2_lorentzian, instances::free_rank3}) {
    const CoxeterSystem sys = make();
    const auto rows = theorem2_check(sys, {4, 6, 8, 10});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].hausdorff < rows[i - 1].hausdorff);
  }
}

TEST_CASE("the limit set does not depend on the base point") {
  std::mt19937_64 rng(1);
  const CoxeterSystem sys = instances::triangle_237();
  const Vec x = sys.base_point();
  for (const Vec& y : sample_in_K(sys, 4, rng)) {
    REQUIRE(q(sys, y) < 0.0);
    const auto rows = base_point_check(sys, x, y, {2, 6, 10, 14});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].hausdorff < rows[i - 1].hausdorff);
  }
  CHECK_THROWS_AS(base_point_check(sys, x, normalize(sys, simple_root(3, 0)), {2}),
                  ValidationError);
}

TEST_CASE("pairing identity along random words") {
  std::mt19937_64 rng(2);
  for (const auto& named : instances::all()) {
    const CoxeterSystem sys = named.make();
    std::vector<Matrix> words;
    Word w;
    for (int k = 0; k < 30; ++k) {
      words.push_back(word_matrix(sys, w));
      w.letters.push_back(gen::word(rng, sys.rank(), 1).letters[0]);
    }
    for (std::size_t delta = 0; delta < sys.rank(); ++delta) {
      for (const PairRow& r : pair_convergence_check(sys, words, delta)) {
        CHECK(r.residual <= 1e-10 * (1 + std::abs(r.predicted)));
        CHECK(r.distance >= 0.0);
      }
    }
  }
  CHECK_THROWS_AS(pair_convergence_check(instances::triangle_237(), {}, 3), ValidationError);
}

TEST_CASE("pairing at k = 0 is B(delta^, o)") {
  const CoxeterSystem sys = instances::g2cusp_rank4();
  const auto rows = pair_convergence_check(sys, {Matrix::identity(4)}, 2);
  const Vec dhat = normalize(sys, simple_root(4, 2));
  CHECK(rows[0].pairing == doctest::Approx(bilinear(sys, dhat, sys.base_point())));
  CHECK(rows[0].delta_norm == doctest::Approx(1.0));
}
