#pragma once

// The fundamental chamber K = {x in D : B(alpha, x) < 0 for every simple
// alpha}, descent of a point to K, Dirichlet and quasi-isometry checks, and
// cusp points of affine subsystems.

#include <random>

#include "coxlim/coxeter.hpp"
#include "coxlim/hilbert.hpp"

namespace coxlim {

inline constexpr double kWallTol = 1e-10;

bool in_K(const CoxeterSystem& sys, std::span<const double> x, double tol = kWallTol);
// in_K and every coordinate > tol.
bool in_Kprime(const CoxeterSystem& sys, std::span<const double> x, double tol = kWallTol);

struct Crossing {
  std::size_t step;
  std::size_t generator;  // 0-based
};

struct ChamberResult {
  Word word;                    // x lies in word . closure(K)
  Vec representative;           // word^{-1} . x
  std::vector<Crossing> crossings;
  bool perturbed = false;       // x sat on a wall and was moved by 1e-9
};

inline constexpr std::size_t kDescentCap = 1'000'000;

// Repeatedly reflects in the smallest-index simple wall with
// B(alpha, current) > tol.  If the final representative lies on a wall
// within tol, x is moved by 1e-9 in a fixed pseudo-random direction of V_0
// and the descent is redone once; the result is flagged.
ChamberResult chamber_of(const CoxeterSystem& sys, std::span<const double> x,
                         double tol = kWallTol);

// Points strictly inside K, drawn as normalized -B^{-1} c for random c > 0
// and kept when q < -margin.
PointSet sample_in_K(const CoxeterSystem& sys, std::size_t count, std::mt19937_64& rng,
                     double margin = 1e-6);

struct DirichletReport {
  std::size_t comparisons = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;  // min of d(x, w.y) - d(x, y)
};

// Checks d(x, y) < d(x, w.y) for every y and every 1 <= |w| <= radius.
DirichletReport dirichlet_check(const CoxeterSystem& sys, std::span<const double> x,
                                const PointSet& ys, std::size_t radius);

struct QiEstimate {
  double k_low = 0.0;
  double k_high = 0.0;
};

// Extremes of d(w.o, o) / |w| over 1 <= |w| <= radius.  Systems with cusps
// are refused, since the chamber is then unbounded.
QiEstimate qi_estimate(const CoxeterSystem& sys, std::size_t radius);

struct Cusp {
  std::vector<std::size_t> indices;  // minimal affine subset, 0-based
  Vec point;                         // tangency point on the boundary, in V_1
};

// One cusp per minimal affine standard subsystem: the kernel vector of its
// Gram block, padded with zeros and normalized.
std::vector<Cusp> cusp_detect(const CoxeterSystem& sys);

}  // namespace coxlim
