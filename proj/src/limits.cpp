#include "coxlim/limits.hpp"

#include <algorithm>
#include <cmath>

#include "coxlim/parallel.hpp"

namespace coxlim {

PointSet orbit_frontier(const CoxeterSystem& sys, const Ball& ball, std::size_t k,
                        std::span<const double> x) {
  if (k >= ball.levels.size())
    throw ValidationError("orbit_frontier: depth " + std::to_string(k) + " beyond the ball");
  const Vec base = x.empty() ? sys.base_point() : Vec(x.begin(), x.end());
  const auto& level = ball.levels[k];
  PointSet pts(level.size());
  const long m = static_cast<long>(level.size());
  ExceptionSlot err;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) err.run([&] { pts[i] = normalized_act(sys, level[i].matrix, base); });
  err.rethrow();

  ApproxIndex seen(1e-8, 1e-10);
  PointSet out;
  for (auto& p : pts)
    if (seen.insert(p).second) out.push_back(std::move(p));
  return out;
}

PointSet orbit_frontier(const CoxeterSystem& sys, std::size_t k) {
  return orbit_frontier(sys, enumerate_ball(sys, k), k);
}

std::vector<FrontierDistance> theorem2_check(const CoxeterSystem& sys,
                                             const std::vector<std::size_t>& depths) {
  if (depths.empty()) return {};
  if (!std::is_sorted(depths.begin(), depths.end()))
    throw ValidationError("theorem2_check: depths must be ascending");
  const std::size_t dmax = depths.back();
  const Ball ball = enumerate_ball(sys, dmax);
  const RootCloud cloud = enumerate_roots(sys, dmax);
  std::vector<FrontierDistance> out;
  for (std::size_t d : depths)
    out.push_back({d, hausdorff(orbit_frontier(sys, ball, d), frontier(cloud, d))});
  return out;
}

std::vector<FrontierDistance> base_point_check(const CoxeterSystem& sys, std::span<const double> x,
                                               std::span<const double> y,
                                               const std::vector<std::size_t>& depths) {
  for (auto p : {x, y}) {
    const bool inside = q(sys, p) < 0.0 && std::all_of(p.begin(), p.end(), [](double c) { return c > 0.0; });
    if (!inside)
      throw ValidationError("base_point_check: base points must lie in D and in the open simplex");
  }
  if (depths.empty()) return {};
  if (!std::is_sorted(depths.begin(), depths.end()))
    throw ValidationError("base_point_check: depths must be ascending");
  const Ball ball = enumerate_ball(sys, depths.back());
  std::vector<FrontierDistance> out;
  for (std::size_t d : depths)
    out.push_back({d, hausdorff(orbit_frontier(sys, ball, d, x), orbit_frontier(sys, ball, d, y))});
  return out;
}

std::vector<PairRow> pair_convergence_check(const CoxeterSystem& sys,
                                            const std::vector<Matrix>& words, std::size_t delta) {
  if (delta >= sys.rank()) throw ValidationError("pair_convergence_check: bad simple root index");
  const Vec& o = sys.base_point();
  const Vec dhat = normalize(sys, simple_root(sys.rank(), delta));
  const double b0 = bilinear(sys, dhat, o);
  std::vector<PairRow> rows;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const Vec wd = words[k] * dhat;
    const Vec wo = words[k] * o;
    const double nd = one_norm(sys, wd), no = one_norm(sys, wo);
    if (std::abs(nd) <= 1e-12 * max_abs(wd))
      throw NumericalError("pair_convergence_check: |w_k(delta)|_1 vanishes at k = " +
                           std::to_string(k));
    if (!(no > 0.0)) throw NumericalError("pair_convergence_check: |w_k(o)|_1 <= 0");
    const Vec xd = (1.0 / nd) * wd, xo = (1.0 / no) * wo;
    PairRow r;
    r.k = k;
    r.distance = euclid_dist(xd, xo);
    r.pairing = bilinear(sys, xd, xo);
    r.predicted = b0 / (nd * no);
    r.residual = std::abs(r.pairing - r.predicted);
    r.delta_norm = nd;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace coxlim
