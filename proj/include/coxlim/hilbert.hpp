#pragma once

// The Hilbert metric for B on the ellipsoid D = {x in V_1 : q(x) < 0}.

#include <random>

#include "coxlim/coxeter.hpp"

namespace coxlim {

enum class Region { Interior, Boundary, Outside };
std::string to_string(Region r);

// Interior iff q(x) < -tol, boundary iff |q(x)| <= tol.  On V_1 the set
// {q < 0} is a single ellipsoid, so no component test is needed.
Region contains_D(const CoxeterSystem& sys, std::span<const double> x, double tol = 1e-10);

struct BoundaryPair {
  Vec a;  // boundary point behind x
  Vec b;  // boundary point beyond y
  // Chord parameters along x + t (y - x): ta < 0 < 1 < tb.
  double ta = 0.0;
  double tb = 0.0;
};

// Points closer to the boundary than this (q(x) > -kNearBoundary) are
// refused by the metric functions.
inline constexpr double kNearBoundary = 1e-10;

// Intersections of the line through x and y with the boundary conic.  a is
// taken from the quadratic centred at x and b from the one centred at y, so
// each hit is the small root of its own equation.
BoundaryPair boundary_hits(const CoxeterSystem& sys, std::span<const double> x,
                           std::span<const double> y);

// [a,b,c,d] = q(c-a) q(b-d) / (q(c-d) q(b-a))
double cross_ratio_B(const CoxeterSystem& sys, std::span<const double> a,
                     std::span<const double> b, std::span<const double> c,
                     std::span<const double> d);

// 1/2 log [a,x,y,b]
double dist(const CoxeterSystem& sys, std::span<const double> x, std::span<const double> y);
// log (|y-a| |x-b|) / (|y-b| |x-a|) with Euclidean lengths.
double dist_euclid_form(const CoxeterSystem& sys, std::span<const double> x,
                        std::span<const double> y);

using PointPair = std::pair<Vec, Vec>;
// Batched dist, OpenMP-parallel; dist_batch_serial is the reference loop.
Vec dist_batch(const CoxeterSystem& sys, const std::vector<PointPair>& pairs);
Vec dist_batch_serial(const CoxeterSystem& sys, const std::vector<PointPair>& pairs);

// (x|y)_p = (d(x,p) + d(y,p) - d(x,y)) / 2
double gromov_product(const CoxeterSystem& sys, std::span<const double> x,
                      std::span<const double> y, std::span<const double> p);

// Largest four-point defect (x|z)_p - min((x|y)_p, (y|z)_p), negated, over
// `samples` random quadruples drawn from `points`.
double estimate_delta(const CoxeterSystem& sys, const PointSet& points, std::size_t samples,
                      std::uint64_t seed = 1);

// exp(-eps * G) where G is the smallest Gromov product (a_i|b_j)_o over the
// tails i, j >= ceil(k/2) of the prefixes, k the last shared index.  Refuses
// eps * delta_hat > 1/5.
double visual_metric(const CoxeterSystem& sys, const PointSet& seq_a, const PointSet& seq_b,
                     double eps, double delta_hat);

// Point on the chord from x toward xi at Hilbert distance t from x.  xi may
// lie on the boundary.
Vec geodesic_at(const CoxeterSystem& sys, std::span<const double> x, std::span<const double> xi,
                double t);

// Random interior point o + s t* u with u uniform on the unit sphere of V_0,
// t* the boundary parameter and s uniform in [0, max_frac).
Vec random_interior(const CoxeterSystem& sys, std::mt19937_64& rng, double max_frac = 0.95);
// Random point of the boundary conic.
Vec random_boundary(const CoxeterSystem& sys, std::mt19937_64& rng);

}  // namespace coxlim
