#pragma once

// Finite-depth approximations of the limit set: orbit frontiers, their
// distance to root frontiers, and convergence of paired orbit sequences.

#include "coxlim/coxeter.hpp"
#include "coxlim/roots.hpp"

namespace coxlim {

// {w.x : |w| = k} as distinct chart points, in ball order.  x defaults to o.
PointSet orbit_frontier(const CoxeterSystem& sys, const Ball& ball, std::size_t k,
                        std::span<const double> x = {});
PointSet orbit_frontier(const CoxeterSystem& sys, std::size_t k);

struct FrontierDistance {
  std::size_t depth;
  double hausdorff;
};

// hausdorff(orbit_frontier(d), frontier(roots, d)) for each d.
std::vector<FrontierDistance> theorem2_check(const CoxeterSystem& sys,
                                             const std::vector<std::size_t>& depths);

// The same table for two base points x and y (both in K').
std::vector<FrontierDistance> base_point_check(const CoxeterSystem& sys, std::span<const double> x,
                                               std::span<const double> y,
                                               const std::vector<std::size_t>& depths);

struct PairRow {
  std::size_t k;
  double distance;   // |w_k . delta^ - w_k . o|
  double pairing;    // B(w_k . delta^, w_k . o)
  double predicted;  // B(delta^, o) / (|w_k(delta^)|_1 |w_k(o)|_1)
  double residual;   // |pairing - predicted|
  double delta_norm; // |w_k(delta^)|_1, may be negative
};

// Words are given as matrices of w_k.  |w_k(delta^)|_1 may be negative when
// delta is a right descent of w_k (the chart point is then that of -w_k(delta));
// only a vanishing one-norm is an error.
std::vector<PairRow> pair_convergence_check(const CoxeterSystem& sys,
                                            const std::vector<Matrix>& words, std::size_t delta);

}  // namespace coxlim
