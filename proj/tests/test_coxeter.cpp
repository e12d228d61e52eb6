#include <omp.h>

#include <cmath>
#include <numbers>
#include <set>

#include "coxlim/coxeter.hpp"
#include "coxlim/instances.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace coxlim;

namespace {

// Combinatorial growth oracle.  Two words give the same element iff they
// are connected by braid moves and cancellations; a word is reduced iff no
// word in its braid class has two equal adjacent letters.  Elements are
// keyed by the lexicographically smallest word in the class.
using Letters = std::vector<int>;

std::set<Letters> braid_class(const Letters& w, const CoxeterMatrix& cm) {
  std::set<Letters> seen{w};
  std::vector<Letters> stack{w};
  while (!stack.empty()) {
    const Letters u = stack.back();
    stack.pop_back();
    for (std::size_t p = 0; p < u.size(); ++p) {
      if (p + 1 >= u.size()) break;
      const int a = u[p], b = u[p + 1];
      if (a == b) continue;
      const int m = cm(a, b);
      if (m == kInfinity || p + m > u.size()) continue;
      bool alternating = true;
      for (int k = 0; k < m; ++k) alternating = alternating && u[p + k] == (k % 2 ? b : a);
      if (!alternating) continue;
      Letters v = u;
      for (int k = 0; k < m; ++k) v[p + k] = k % 2 ? a : b;
      if (seen.insert(v).second) stack.push_back(v);
    }
  }
  return seen;
}

std::vector<std::size_t> oracle_growth(const CoxeterMatrix& cm, std::size_t radius) {
  std::vector<std::size_t> counts{1};
  std::set<Letters> level{Letters{}};
  for (std::size_t k = 1; k <= radius; ++k) {
    std::set<Letters> next;
    for (const Letters& w : level)
      for (int s = 0; s < static_cast<int>(cm.rank()); ++s) {
        Letters u = w;
        u.push_back(s);
        const auto cls = braid_class(u, cm);
        bool reduced = true;
        for (const Letters& v : cls)
          for (std::size_t p = 0; p + 1 < v.size() && reduced; ++p) reduced = v[p] != v[p + 1];
        if (reduced) next.insert(*cls.begin());
      }
    counts.push_back(next.size());
    level = std::move(next);
  }
  return counts;
}

std::set<Key> level_keys(const Ball& b, std::size_t k) {
  std::set<Key> s;
  for (const auto& g : b.levels[k]) s.insert(g.key);
  return s;
}

}  // namespace

TEST_CASE("Coxeter matrix validation") {
  CHECK_THROWS_AS(CoxeterMatrix({{1, 3}, {2, 1}}), ValidationError);
  CHECK_THROWS_AS(CoxeterMatrix({{1, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(CoxeterMatrix({{2, 3}, {3, 1}}), ValidationError);
  CHECK_THROWS_AS(CoxeterMatrix({{1, 3, 2}, {3, 1}}), ValidationError);
  CHECK_NOTHROW(CoxeterMatrix({{1, 0}, {0, 1}}));
}

TEST_CASE("Gram entries: exact values at m = 2, 3 and cosines elsewhere") {
  const SymMatrix g = gram_from_coxeter(CoxeterMatrix({{1, 2, 7}, {2, 1, 3}, {7, 3, 1}}), {});
  CHECK(g(0, 1) == 0.0);
  CHECK(g(1, 2) == -0.5);
  CHECK(g(0, 2) == doctest::Approx(-std::cos(std::numbers::pi / 7)).epsilon(1e-15));
  CHECK(g(0, 0) == 1.0);
}

TEST_CASE("infinite bonds need a weight <= -1") {
  const CoxeterMatrix cm({{1, 0}, {0, 1}});
  CHECK_THROWS_AS(CoxeterSystem::build(cm, {}), ValidationError);
  CHECK_THROWS_AS(CoxeterSystem::build(cm, {{{0, 1}, -0.5}}), ValidationError);
  CHECK_THROWS_AS(CoxeterSystem::build(CoxeterMatrix({{1, 3}, {3, 1}}), {{{0, 1}, -2.0}}),
                  ValidationError);
}

TEST_CASE("signature rejections carry the signature") {
  // A_3 is finite: positive definite.
  try {
    CoxeterSystem::build(CoxeterMatrix({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}), {});
    FAIL("expected SignatureError");
  } catch (const SignatureError& e) {
    CHECK(e.signature == Signature{3, 0, 0});
  }
  // The affine triangle group (3,3,3) is degenerate.
  try {
    CoxeterSystem::build(CoxeterMatrix({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}), {});
    FAIL("expected SignatureError");
  } catch (const SignatureError& e) {
    CHECK(e.signature == Signature{2, 0, 1});
  }
  // Rank 2 with weight -1 is affine as well.
  CHECK_THROWS_AS(CoxeterSystem::build(CoxeterMatrix({{1, 0}, {0, 1}}), {{{0, 1}, -1.0}}),
                  SignatureError);
}

TEST_CASE("reducible systems list their blocks") {
  try {
    CoxeterSystem::build(CoxeterMatrix({{1, 2, 0}, {2, 1, 2}, {0, 2, 1}}), {{{0, 2}, -1.5}});
    FAIL("expected ReducibleError");
  } catch (const ReducibleError& e) {
    REQUIRE(e.blocks.size() == 2);
    CHECK(e.blocks[0] == std::vector<std::size_t>{0, 2});
    CHECK(e.blocks[1] == std::vector<std::size_t>{1});
  }
}

TEST_CASE("Perron base point on every bundled system") {
  for (const auto& named : instances::all()) {
    CAPTURE(named.name);
    const CoxeterSystem sys = named.make();
    const Vec& o = sys.base_point();
    const Vec bo = sys.gram().matrix() * o;
    CHECK(norm(bo + sys.neg_eigenvalue() * o) <= 1e-10);
    for (double x : o) CHECK(x > 0);
    CHECK(std::abs(one_norm(sys, o) - 1.0) <= 1e-10);
    CHECK(q(sys, o) == doctest::Approx(-sys.neg_eigenvalue()));
  }
}

TEST_CASE("rank-2 base point in closed form") {
  // B = [[1, c], [c, 1]] with c = -3/2: o = (1, 1)/sqrt 2, lambda = 1/2.
  const CoxeterSystem sys = instances::rank2_lorentzian();
  CHECK(sys.base_point()[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(sys.base_point()[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(sys.neg_eigenvalue() == doctest::Approx(0.5));
}

TEST_CASE("from_gram recovers the Coxeter matrix") {
  for (const auto& named : instances::all()) {
    const CoxeterSystem sys = named.make();
    const CoxeterSystem back = CoxeterSystem::from_gram(sys.gram());
    CHECK(back.coxeter() == sys.coxeter());
    CHECK(back.gram() == sys.gram());
  }
  CHECK_THROWS_AS(CoxeterSystem::from_gram(SymMatrix::from_rows({{1, -0.3, -2}, {-0.3, 1, 0}, {-2, 0, 1}})),
                  ValidationError);
}

TEST_CASE("reflections are involutions preserving q") {
  std::mt19937_64 rng(11);
  for (const auto& named : instances::all()) {
    const CoxeterSystem sys = named.make();
    const std::size_t n = sys.rank();
    for (std::size_t i = 0; i < n; ++i) {
      const Matrix sq = sys.reflection(i) * sys.reflection(i);
      CHECK((sq - Matrix::identity(n)).max_norm() < 1e-14);
      const Vec ai = reflect_simple(sys, i, simple_root(n, i));
      CHECK(norm(ai + simple_root(n, i)) < 1e-15);
    }
    for (int trial = 0; trial < 200; ++trial) {
      const Vec v = gen::vec(rng, n);
      const Word w = gen::word(rng, n, gen::index(rng, 12));
      const Vec wv = act_word(sys, w, v);
      CHECK(std::abs(q(sys, wv) - q(sys, v)) <= 1e-9 * std::max(1.0, dot(wv, wv)));
      CHECK(norm(wv - word_matrix(sys, w) * v) <= 1e-9 * std::max(1.0, norm(wv)));
    }
  }
}

TEST_CASE("dihedral relations hold in the representation") {
  const CoxeterSystem sys = instances::triangle_237();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const int m = sys.coxeter()(i, j);
      Matrix p = Matrix::identity(3);
      const Matrix st = sys.reflection(i) * sys.reflection(j);
      for (int k = 0; k < m; ++k) p = p * st;
      CHECK((p - Matrix::identity(3)).max_norm() < 1e-12);
    }
}

TEST_CASE("word parsing round trip") {
  CHECK(Word::parse("e", 3).letters.empty());
  CHECK(Word::parse("1.3.2", 3).letters == std::vector<int>{0, 2, 1});
  CHECK(Word::parse("1.3.2", 3).str() == "1.3.2");
  CHECK(Word{}.str() == "e");
  CHECK_THROWS_AS(Word::parse("1.4", 3), ValidationError);
  CHECK_THROWS_AS(Word::parse("1.x", 3), ValidationError);
  CHECK_THROWS_AS(Word::parse("1.2x", 3), ValidationError);
}

TEST_CASE("ball growth of (2,3,7) matches the braid-move oracle") {
  const CoxeterSystem sys = instances::triangle_237();
  const std::size_t r = 10;
  const auto expected = oracle_growth(sys.coxeter(), r);
  const Ball ball = enumerate_ball(sys, r);
  REQUIRE(ball.levels.size() == r + 1);
  for (std::size_t k = 0; k <= r; ++k) {
    CAPTURE(k);
    CHECK(ball.levels[k].size() == expected[k]);
  }
}

TEST_CASE("ball growth of g2cusp_rank4 matches the braid-move oracle") {
  const CoxeterSystem sys = instances::g2cusp_rank4();
  const auto expected = oracle_growth(sys.coxeter(), 7);
  const Ball ball = enumerate_ball(sys, 7);
  for (std::size_t k = 0; k <= 7; ++k) CHECK(ball.levels[k].size() == expected[k]);
}

TEST_CASE("infinite dihedral growth is 1, 2, 2, ...") {
  const Ball ball = enumerate_ball(instances::rank2_lorentzian(), 15);
  CHECK(ball.levels[0].size() == 1);
  for (std::size_t k = 1; k <= 15; ++k) CHECK(ball.levels[k].size() == 2);
}

TEST_CASE("parallel enumeration agrees with the serial reference") {
  for (const auto& named : instances::all()) {
    CAPTURE(named.name);
    const CoxeterSystem sys = named.make();
    const std::size_t r = sys.rank() == 4 ? 7 : 10;
    const Ball par = enumerate_ball(sys, r);
    const Ball ref = enumerate_ball_reference(sys, r);
    REQUIRE(par.levels.size() == ref.levels.size());
    for (std::size_t k = 0; k <= r; ++k) CHECK(level_keys(par, k) == level_keys(ref, k));
  }
}

TEST_CASE("ball elements: word length, matrix and inverse are consistent") {
  const CoxeterSystem sys = instances::g2cusp_rank4();
  const Ball ball = enumerate_ball(sys, 6);
  for (std::size_t k = 0; k < ball.levels.size(); ++k)
    for (const auto& g : ball.levels[k]) {
      CHECK(g.word.length() == k);
      CHECK((word_matrix(sys, g.word) - g.matrix).max_norm() < 1e-10);
      CHECK(((g.matrix * g.inverse) - Matrix::identity(4)).max_norm() < 1e-10);
    }
}

TEST_CASE("enumeration output does not depend on the thread count") {
  const CoxeterSystem sys = instances::triangle_237();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Ball one = enumerate_ball(sys, 14);
  omp_set_num_threads(std::max(4, saved));
  const Ball many = enumerate_ball(sys, 14);
  omp_set_num_threads(saved);
  REQUIRE(one.levels.size() == many.levels.size());
  for (std::size_t k = 0; k < one.levels.size(); ++k) {
    REQUIRE(one.levels[k].size() == many.levels[k].size());
    for (std::size_t i = 0; i < one.levels[k].size(); ++i) {
      CHECK(one.levels[k][i].word == many.levels[k][i].word);
      CHECK(one.levels[k][i].matrix == many.levels[k][i].matrix);
    }
  }
}

TEST_CASE("element cap reports the completed levels") {
  try {
    enumerate_ball(instances::free_rank3(), 20, 100);
    FAIL("expected EnumerationCapExceeded");
  } catch (const EnumerationCapExceeded& e) {
    // 1 + 3 + 6 + 12 + 24 + 48 = 94 elements fit; level 6 would bring 96 more.
    CHECK(e.completed_levels == 5);
    REQUIRE(e.partial);
    CHECK(e.partial->size() == 94);
  }
}

TEST_CASE("normalized action stays in the chart") {
  std::mt19937_64 rng(12);
  const CoxeterSystem sys = instances::g2cusp_rank4();
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = gen::word(rng, 4, 1 + gen::index(rng, 30));
    const Vec x = normalized_act(sys, w, sys.base_point());
    CHECK(std::abs(one_norm(sys, x) - 1) < 1e-12);
    CHECK(q(sys, x) < 0);
  }
}

TEST_CASE("classification of the bundled systems") {
  CHECK(classify_action(instances::triangle_237()).kind == ActionKind::Cocompact);
  CHECK(classify_action(instances::rank2_lorentzian()).kind == ActionKind::Cocompact);
  CHECK(classify_action(instances::free_rank3()).kind == ActionKind::ConvexCocompact);
  const ActionClass cusped = classify_action(instances::cusped_rank3());
  CHECK(cusped.kind == ActionKind::WithCusps);
  CHECK(cusped.cusp_ranks == std::vector<int>{2});
  CHECK(cusped.hypothesis_ok);

  const CoxeterSystem g2cusp = instances::g2cusp_rank4();
  CHECK(g2cusp.signature() == Signature{3, 1, 0});
  const ActionClass ac = classify_action(g2cusp);
  CHECK(ac.kind == ActionKind::WithCusps);
  CHECK(ac.cusp_ranks == std::vector<int>{3});
  const std::vector<std::size_t> tri{0, 1, 2};
  Signature sig;
  CHECK(subsystem_type(g2cusp, tri, &sig) == SubsystemType::Affine);
  CHECK(sig == Signature{2, 0, 1});
  // {1,2,3} is an affine subsystem of rank 3.
  CHECK_FALSE(ac.hypothesis_ok);
}
