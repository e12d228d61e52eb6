#include "coxlim/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include "coxlim/parallel.hpp"

namespace coxlim {

std::string to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    case Region::Outside: return "outside";
  }
  return "?";
}

Region contains_D(const CoxeterSystem& sys, std::span<const double> x, double tol) {
  const double v = q(sys, x);
  if (v < -tol) return Region::Interior;
  if (v <= tol) return Region::Boundary;
  return Region::Outside;
}

namespace {

void require_interior(const CoxeterSystem& sys, std::span<const double> x, const char* who) {
  if (x.size() != sys.rank()) throw ValidationError(std::string(who) + ": dimension mismatch");
  const double v = q(sys, x);
  if (!(v < -kNearBoundary))
    throw ValidationError(std::string(who) + ": point is not strictly inside D (q = " +
                          std::to_string(v) + ")");
}

// Positive root of q(p + s d) = 0 for p inside D.
double exit_parameter(const CoxeterSystem& sys, std::span<const double> p, const Vec& d, double qd,
                      bool forward) {
  const QuadraticRoots r = solve_quadratic(qd, 2.0 * bilinear(sys, p, d), q(sys, p));
  if (r.count != 2) throw NumericalError("chord does not cross the boundary twice");
  return forward ? r.roots[1] : r.roots[0];
}

}  // namespace

BoundaryPair boundary_hits(const CoxeterSystem& sys, std::span<const double> x,
                           std::span<const double> y) {
  require_interior(sys, x, "boundary_hits");
  require_interior(sys, y, "boundary_hits");
  const Vec xv(x.begin(), x.end()), yv(y.begin(), y.end());
  const Vec d = yv - xv;
  if (norm(d) <= 1e-15) throw ValidationError("boundary_hits: x and y coincide");
  const double qd = q(sys, d);
  if (!(qd > 0.0)) throw NumericalError("boundary_hits: chord direction is not spacelike");

  BoundaryPair bp;
  bp.ta = exit_parameter(sys, x, d, qd, false);
  const double sb = exit_parameter(sys, y, d, qd, true);
  if (!(bp.ta < 0.0) || !(sb > 0.0)) throw NumericalError("boundary_hits: hits out of order");
  bp.tb = 1.0 + sb;
  bp.a = xv + bp.ta * d;
  bp.b = yv + sb * d;
  return bp;
}

double cross_ratio_B(const CoxeterSystem& sys, std::span<const double> a, std::span<const double> b,
                     std::span<const double> c, std::span<const double> d) {
  const Vec av(a.begin(), a.end()), bv(b.begin(), b.end()), cv(c.begin(), c.end()),
      dv(d.begin(), d.end());
  const double den1 = q(sys, cv - dv), den2 = q(sys, bv - av);
  if (den1 == 0.0) throw ValidationError("cross_ratio_B: q(c - d) = 0 (third and fourth points)");
  if (den2 == 0.0) throw ValidationError("cross_ratio_B: q(b - a) = 0 (first and second points)");
  return q(sys, cv - av) * q(sys, bv - dv) / (den1 * den2);
}

double dist(const CoxeterSystem& sys, std::span<const double> x, std::span<const double> y) {
  require_interior(sys, x, "dist");
  require_interior(sys, y, "dist");
  if (euclid_dist(x, y) <= 1e-15) return 0.0;
  const BoundaryPair bp = boundary_hits(sys, x, y);
  const Vec xv(x.begin(), x.end()), yv(y.begin(), y.end());
  const double num = q(sys, yv - bp.a) * q(sys, xv - bp.b);
  const double den = q(sys, yv - bp.b) * q(sys, xv - bp.a);
  return 0.5 * std::log(num / den);
}

double dist_euclid_form(const CoxeterSystem& sys, std::span<const double> x,
                        std::span<const double> y) {
  require_interior(sys, x, "dist_euclid_form");
  require_interior(sys, y, "dist_euclid_form");
  if (euclid_dist(x, y) <= 1e-15) return 0.0;
  const BoundaryPair bp = boundary_hits(sys, x, y);
  const double num = euclid_dist(y, bp.a) * euclid_dist(x, bp.b);
  const double den = euclid_dist(y, bp.b) * euclid_dist(x, bp.a);
  return std::log(num / den);
}

Vec dist_batch(const CoxeterSystem& sys, const std::vector<PointPair>& pairs) {
  Vec out(pairs.size());
  const long m = static_cast<long>(pairs.size());
  ExceptionSlot err;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i)
    err.run([&] { out[i] = dist(sys, pairs[i].first, pairs[i].second); });
  err.rethrow();
  return out;
}

Vec dist_batch_serial(const CoxeterSystem& sys, const std::vector<PointPair>& pairs) {
  Vec out;
  out.reserve(pairs.size());
  for (const auto& [x, y] : pairs) out.push_back(dist(sys, x, y));
  return out;
}

double gromov_product(const CoxeterSystem& sys, std::span<const double> x,
                      std::span<const double> y, std::span<const double> p) {
  return 0.5 * (dist(sys, x, p) + dist(sys, y, p) - dist(sys, x, y));
}

double estimate_delta(const CoxeterSystem& sys, const PointSet& points, std::size_t samples,
                      std::uint64_t seed) {
  if (points.size() < 4) throw ValidationError("estimate_delta: need at least four points");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  double delta = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec& x = points[pick(rng)];
    const Vec& y = points[pick(rng)];
    const Vec& z = points[pick(rng)];
    const Vec& w = points[pick(rng)];
    // Four-point form: with the three pair sums sorted, half the gap between
    // the two largest is the defect of this quadruple.
    std::array<double, 3> sums{dist(sys, x, y) + dist(sys, z, w), dist(sys, x, z) + dist(sys, y, w),
                               dist(sys, x, w) + dist(sys, y, z)};
    std::sort(sums.begin(), sums.end());
    delta = std::max(delta, 0.5 * (sums[2] - sums[1]));
  }
  return delta;
}

double visual_metric(const CoxeterSystem& sys, const PointSet& seq_a, const PointSet& seq_b,
                     double eps, double delta_hat) {
  if (seq_a.empty() || seq_b.empty()) throw ValidationError("visual_metric: empty sequence");
  if (eps < 0.0) throw ValidationError("visual_metric: eps must be >= 0");
  if (eps * delta_hat > 0.2)
    throw ValidationError("visual_metric: eps * delta = " + std::to_string(eps * delta_hat) +
                          " exceeds 1/5 (delta estimate " + std::to_string(delta_hat) + ")");
  const std::size_t k = std::min(seq_a.size(), seq_b.size()) - 1;
  const std::size_t start = (k + 1) / 2;
  const Vec& o = sys.base_point();
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i <= k; ++i)
    for (std::size_t j = start; j <= k; ++j) g = std::min(g, gromov_product(sys, seq_a[i], seq_b[j], o));
  return std::exp(-eps * g);
}

Vec geodesic_at(const CoxeterSystem& sys, std::span<const double> x, std::span<const double> xi,
                double t) {
  require_interior(sys, x, "geodesic_at");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("geodesic_at: t must be finite and >= 0");
  const Vec xv(x.begin(), x.end());
  if (t == 0.0) return xv;
  const Region rxi = contains_D(sys, xi, 1e-9);
  if (rxi == Region::Outside) throw ValidationError("geodesic_at: target lies outside D");
  const Vec d = Vec(xi.begin(), xi.end()) - xv;
  const double qd = q(sys, d);
  if (!(qd > 0.0)) throw ValidationError("geodesic_at: target coincides with x");
  const QuadraticRoots r = solve_quadratic(qd, 2.0 * bilinear(sys, x, d), q(sys, x));
  if (r.count != 2) throw NumericalError("geodesic_at: chord does not cross the boundary twice");
  const double la = -r.roots[0];
  const double lb = rxi == Region::Boundary ? 1.0 : r.roots[1];
  // d(x, x + s d) = log((la + s) lb / ((lb - s) la)) solved for s.
  const double e = std::exp(-t);
  const double s = la * lb * (1.0 - e) / (lb * e + la);
  if (rxi == Region::Interior && s > 1.0 + 1e-12)
    throw ValidationError("geodesic_at: t exceeds the distance to the target");
  return xv + s * d;
}

Vec random_interior(const CoxeterSystem& sys, std::mt19937_64& rng, double max_frac) {
  const std::vector<Vec> basis = orthonormal_complement(sys.base_point());
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Vec u(sys.rank(), 0.0);
  for (const Vec& e : basis) u = u + g(rng) * e;
  const double tstar = std::sqrt(sys.neg_eigenvalue() / q(sys, u));
  return sys.base_point() + (u01(rng) * max_frac * tstar) * u;
}

Vec random_boundary(const CoxeterSystem& sys, std::mt19937_64& rng) {
  const std::vector<Vec> basis = orthonormal_complement(sys.base_point());
  std::normal_distribution<double> g;
  Vec u(sys.rank(), 0.0);
  for (const Vec& e : basis) u = u + g(rng) * e;
  const double tstar = std::sqrt(sys.neg_eigenvalue() / q(sys, u));
  return sys.base_point() + tstar * u;
}

}  // namespace coxlim
