#include "coxlim/roots.hpp"

#include "coxlim/parallel.hpp"

namespace coxlim {

namespace {

constexpr double kRootGrid = 1e-8;
constexpr double kRootTol = 1e-10;

}  // namespace

RootCloud enumerate_roots(const CoxeterSystem& sys, std::size_t depth, std::size_t max_roots) {
  const std::size_t n = sys.rank();
  auto cloud = std::make_shared<RootCloud>();
  ApproxIndex seen(kRootGrid, kRootTol);
  ApproxIndex chart(kRootGrid, kRootTol);

  auto add = [&](Root r) {
    if (!seen.insert(r.vector).second) return;
    Vec p = normalize(sys, r.vector);
    if (chart.insert(p).second)
      cloud->normalized.push_back({std::move(p), r.depth, cloud->roots.size()});
    cloud->roots.push_back(std::move(r));
  };

  for (std::size_t i = 0; i < n; ++i) add(Root{simple_root(n, i), 0, Word{{}, true}, i});

  std::size_t level_begin = 0;
  for (std::size_t k = 0; k < depth; ++k) {
    const std::size_t level_end = cloud->roots.size();
    const long m = static_cast<long>(level_end - level_begin);
    std::vector<std::vector<Root>> children(m);
    ExceptionSlot err;
#pragma omp parallel for schedule(dynamic, 64)
    for (long p = 0; p < m; ++p) err.run([&] {
      const Root& r = cloud->roots[level_begin + p];
      for (std::size_t s = 0; s < n; ++s) {
        Root c;
        c.vector = reflect_simple(sys, s, r.vector);
        c.depth = k + 1;
        c.word.letters.reserve(r.word.letters.size() + 1);
        c.word.letters.push_back(static_cast<int>(s));
        c.word.letters.insert(c.word.letters.end(), r.word.letters.begin(), r.word.letters.end());
        c.word.reduced = true;
        c.simple = r.simple;
        children[p].push_back(std::move(c));
      }
    });
    err.rethrow();
    for (auto& group : children) {
      for (auto& c : group) {
        add(std::move(c));
        if (cloud->roots.size() > max_roots) throw RootCapExceeded(k, cloud);
      }
    }
    level_begin = level_end;
    cloud->depth = k + 1;
  }
  return std::move(*cloud);
}

PointSet frontier(const RootCloud& cloud, std::size_t k) {
  if (k > cloud.depth)
    throw ValidationError("frontier: depth " + std::to_string(k) + " beyond enumerated depth " +
                          std::to_string(cloud.depth));
  PointSet out;
  for (const auto& c : cloud.normalized)
    if (c.depth == k) out.push_back(c.point);
  return out;
}

bool sign_coherent(std::span<const double> v, double tol) {
  const double scale = tol * max_abs(v);
  bool pos = false, neg = false;
  for (double x : v) {
    if (x > scale) pos = true;
    if (x < -scale) neg = true;
  }
  return !(pos && neg);
}

SignReport sign_coherence_check(const std::vector<Vec>& vectors, double tol) {
  SignReport rep;
  rep.checked = vectors.size();
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (!sign_coherent(vectors[i], tol)) rep.violations.push_back(i);
  return rep;
}

SignReport sign_coherence_check(const RootCloud& cloud, double tol) {
  SignReport rep;
  rep.checked = cloud.roots.size();
  for (std::size_t i = 0; i < cloud.roots.size(); ++i)
    if (!sign_coherent(cloud.roots[i].vector, tol)) rep.violations.push_back(i);
  return rep;
}

}  // namespace coxlim
