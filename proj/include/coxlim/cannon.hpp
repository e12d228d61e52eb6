#pragma once

// Perturbations B_m = B - A_m that open up the rank-2 affine bonds
// (B(alpha, beta) = -1), the perturbed reflection actions rho_m, galleries
// toward a boundary direction, and the finite-depth comparison of the
// unperturbed and perturbed orbits.

#include <optional>

#include "coxlim/coxeter.hpp"
#include "coxlim/hilbert.hpp"

namespace coxlim {

struct Perturbation {
  long m = 0;
  SymMatrix a;            // 1/m at the -1 bonds, zero elsewhere
  CoxeterSystem system;   // built on B - A_m
  Vec o_m;                // base point of the perturbed system
};

// Bonds (i < j) with B_ij == -1 exactly.
std::vector<std::pair<std::size_t, std::size_t>> affine_bonds(const CoxeterSystem& sys);

// Throws ValidationError when there is no -1 bond, when m < 1, or when B_m
// is not of type (n-1,1); the last message names the smallest admissible m
// found by doubling from 1.
Perturbation perturbed_gram(const CoxeterSystem& sys, long m);

// Smallest m in 1, 2, 4, ... whose B_m has type (n-1,1), or nullopt.
std::optional<long> smallest_admissible_m(const CoxeterSystem& sys, long limit = 1L << 30);

// Matrix of rho_m(w) in the simple-root basis.
Matrix rho_matrix(const Perturbation& pert, const Word& w);

// rho_m(w)(x) normalized by the one-norm of the unperturbed system, so that
// perturbed and unperturbed orbits share one chart.
Vec rho_act(const CoxeterSystem& sys, const Perturbation& pert, const Word& w,
            std::span<const double> x);

struct ShortSequence {
  std::vector<int> trace;          // w_k = s_trace[0] ... s_trace[k-1]
  Vec target;                      // xi
  bool complete = false;           // reached the requested length
  bool perturbed = false;          // a tie between walls forced a nudge of xi
  bool reduced = true;             // every step certified |w_k s| > |w_k|
  std::string note;                // why the walk stopped early, if it did
  double max_chord_distance = 0.0; // max_k d(w_k . o, [o, xi])

  std::size_t size() const { return trace.size(); }
  Word word(std::size_t k) const;  // w_k
};

// Gallery walk from o toward xi: the chord [o, xi] is followed through the
// chambers it crosses, and the wall through which it leaves w_k K gives
// w_{k+1} = w_k s.  Each step is certified by w_k(alpha_s) being a positive
// root.  Coincident wall crossings are resolved by moving xi by 1e-9 along a
// fixed direction and flagging the result.
ShortSequence short_sequence(const CoxeterSystem& sys, std::span<const double> xi,
                             std::size_t length);

// Boundary target used when none is given.  With a cusp, the point of the
// conic in the direction of the first cusp, nudged by 0.01 off the cusp
// line so the gallery passes near it without entering its parabolic
// subgroup; otherwise the first basis direction of V_0.
Vec default_target(const CoxeterSystem& sys);

// Matrices of w_0 = id, w_1, ..., w_K for a short sequence, optionally under
// a perturbation.
std::vector<Matrix> sequence_matrices(const CoxeterSystem& sys, const ShortSequence& seq,
                                      const Perturbation* pert = nullptr);

struct IotaTable {
  std::vector<long> ms;                 // 0 stands for the unperturbed system
  std::vector<std::vector<double>> q;   // q[mi][k] = q(w_k.o - rho_m(w_k).o)
  std::vector<double> sup;              // per m, over k
};

IotaTable iota_decay_table(const CoxeterSystem& sys, const ShortSequence& seq,
                           const std::vector<long>& ms);

// min over 1 <= |w| <= radius of |w(o)|_1 / |w|
double growth_lower_bound(const CoxeterSystem& sys, std::size_t radius);

struct OperatorNormBound {
  double c0 = 0.0;  // max spectral norm of a simple reflection
  double c2 = 1.0;  // |v|_1 <= c2 |v| on the positive cone
};

OperatorNormBound operator_norm_bound(const CoxeterSystem& sys);

// min over 1 <= |w| <= radius of c2 c0^|w| - |w(o)|_1
double operator_norm_slack(const CoxeterSystem& sys, const OperatorNormBound& b,
                           std::size_t radius);

struct CollisionReport {
  std::size_t i = 0, j = 0;      // the bond
  std::size_t k = 0;
  long m = 0;
  double unperturbed = 0.0;      // |(s_i s_j)^k . o - (s_j s_i)^k . o| under B
  double perturbed = 0.0;        // the same under rho_m
  double oracle = 0.0;           // distance between the isotropic lines of B_m on span{alpha_i, alpha_j}
};

CollisionReport dihedral_collision_demo(const CoxeterSystem& sys, std::size_t i, std::size_t j,
                                        std::size_t k, long m);

}  // namespace coxlim
