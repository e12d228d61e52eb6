#include "coxlim/cannon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coxlim/domain.hpp"
#include "coxlim/parallel.hpp"

namespace coxlim {

std::vector<std::pair<std::size_t, std::size_t>> affine_bonds(const CoxeterSystem& sys) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < sys.rank(); ++i)
    for (std::size_t j = i + 1; j < sys.rank(); ++j)
      if (sys.gram()(i, j) == -1.0) out.emplace_back(i, j);
  return out;
}

namespace {

constexpr const char* kNotApplicable =
    "no bond with B(alpha, beta) = -1: case (i) not applicable";

SymMatrix bond_matrix(const CoxeterSystem& sys, long m) {
  Matrix a(sys.rank(), sys.rank());
  for (auto [i, j] : affine_bonds(sys)) a(i, j) = a(j, i) = 1.0 / static_cast<double>(m);
  return SymMatrix(std::move(a));
}

CoxeterSystem perturbed_system(const CoxeterSystem& sys, const SymMatrix& a) {
  return CoxeterSystem::from_gram(SymMatrix(sys.gram().matrix() - a.matrix()), sys.options());
}

}  // namespace

std::optional<long> smallest_admissible_m(const CoxeterSystem& sys, long limit) {
  if (affine_bonds(sys).empty()) throw ValidationError(kNotApplicable);
  for (long m = 1; m <= limit; m *= 2) {
    try {
      perturbed_system(sys, bond_matrix(sys, m));
      return m;
    } catch (const SignatureError&) {
    }
  }
  return std::nullopt;
}

Perturbation perturbed_gram(const CoxeterSystem& sys, long m) {
  if (affine_bonds(sys).empty()) throw ValidationError(kNotApplicable);
  if (m < 1) throw ValidationError("perturbed_gram: m must be >= 1");
  SymMatrix a = bond_matrix(sys, m);
  try {
    CoxeterSystem pert = perturbed_system(sys, a);
    const Vec& o = sys.base_point();
    bool in_chamber = q(pert, o) < 0.0;
    for (std::size_t i = 0; i < sys.rank(); ++i)
      in_chamber = in_chamber && dot(pert.gram().matrix().row(i), o) < 0.0;
    if (!in_chamber) throw NumericalError("perturbed_gram: o is not in the perturbed chamber");
    Vec om = pert.base_point();
    return Perturbation{m, std::move(a), std::move(pert), std::move(om)};
  } catch (const SignatureError& e) {
    const auto best = smallest_admissible_m(sys);
    std::string msg = "perturbed_gram: B_" + std::to_string(m) + " has signature " +
                      e.signature.str() + "; ";
    msg += best ? "smallest admissible m found by doubling is " + std::to_string(*best)
                : std::string("no admissible m found by doubling");
    throw ValidationError(msg);
  }
}

Matrix rho_matrix(const Perturbation& pert, const Word& w) { return word_matrix(pert.system, w); }

Vec rho_act(const CoxeterSystem& sys, const Perturbation& pert, const Word& w,
            std::span<const double> x) {
  Vec v = rho_matrix(pert, w) * x;
  const double s = one_norm(sys, v);
  if (!(s > 0.0)) throw NumericalError("rho_act: |rho_m(w)(x)|_1 <= 0");
  for (double& c : v) c /= s;
  return v;
}

// ---------------------------------------------------------- short sequences

Word ShortSequence::word(std::size_t k) const {
  if (k > trace.size()) throw ValidationError("ShortSequence::word: index beyond the sequence");
  return Word{std::vector<int>(trace.begin(), trace.begin() + static_cast<long>(k)), reduced};
}

namespace {

void right_multiply(const CoxeterSystem& sys, std::size_t i, Matrix& w) {
  const Vec col = w.column(i);
  for (std::size_t j = 0; j < sys.rank(); ++j) {
    const double b = sys.gram()(i, j);
    if (b == 0.0) continue;
    for (std::size_t r = 0; r < sys.rank(); ++r) w(r, j) -= 2.0 * b * col[r];
  }
}

double column_sum(const Matrix& m, std::size_t j) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, j);
  return s;
}

struct Walk {
  std::vector<int> trace;
  bool tie = false;
  bool reduced = true;
  std::string note;
};

// The chord is xi + t (o - xi), t from 1 (at o) down to 0 (at xi).  The
// chamber w K is bounded by the walls of the roots w(alpha_i), and the chord
// is inside w K exactly where every B(w(alpha_i), .) < 0.
Walk walk(const CoxeterSystem& sys, const Vec& xi, std::size_t length) {
  const Vec& o = sys.base_point();
  const Vec back = o - xi;
  Matrix w = Matrix::identity(sys.rank());
  double t_cur = 1.0;
  Walk out;
  while (out.trace.size() < length) {
    double best = -1.0, second = -1.0;
    std::size_t gen = sys.rank();
    for (std::size_t i = 0; i < sys.rank(); ++i) {
      const Vec root = w.column(i);
      const double at_xi = bilinear(sys, root, xi);
      if (!(at_xi > 0.0)) continue;
      const double slope = bilinear(sys, root, back);
      const double t = -at_xi / slope;
      if (!(t < t_cur)) continue;
      if (t > best) {
        second = best;
        best = t;
        gen = i;
      } else if (t > second) {
        second = t;
      }
    }
    if (gen == sys.rank()) {
      out.note = "target lies in the closed chamber of w_" + std::to_string(out.trace.size()) +
                 "; no further walls";
      return out;
    }
    if (second >= 0.0 && best - second <= 1e-9 * best) {
      out.tie = true;
      return out;
    }
    if (!(column_sum(w, gen) > 0.0)) out.reduced = false;
    right_multiply(sys, gen, w);
    out.trace.push_back(static_cast<int>(gen));
    t_cur = best;
  }
  return out;
}

double chord_distance(const CoxeterSystem& sys, const Vec& x, const Vec& xi) {
  const Vec& o = sys.base_point();
  const double total = dist(sys, o, x) + 2.0;
  auto f = [&](double t) { return dist(sys, x, geodesic_at(sys, o, xi, t)); };
  double lo = 0.0, hi = total;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    }
  }
  return std::min({fc, fd, f(0.0)});
}

}  // namespace

ShortSequence short_sequence(const CoxeterSystem& sys, std::span<const double> xi,
                             std::size_t length) {
  if (xi.size() != sys.rank()) throw ValidationError("short_sequence: dimension mismatch");
  Vec target = normalize(sys, xi);
  if (contains_D(sys, target, 1e-9) == Region::Outside)
    throw ValidationError("short_sequence: target lies outside the closure of D");
  if (euclid_dist(target, sys.base_point()) <= 1e-12)
    throw ValidationError("short_sequence: target coincides with o");

  ShortSequence seq;
  Walk w = walk(sys, target, length);
  if (w.tie) {
    std::mt19937_64 rng(0x7a11);
    std::normal_distribution<double> g;
    Vec dir(sys.rank(), 0.0);
    for (const Vec& e : orthonormal_complement(sys.base_point())) dir = dir + g(rng) * e;
    target = target + (1e-9 / norm(dir)) * dir;
    seq.perturbed = true;
    w = walk(sys, target, length);
    if (w.tie) w.note = "coincident wall crossings persist after perturbing the target";
  }
  seq.trace = std::move(w.trace);
  seq.target = target;
  seq.reduced = w.reduced;
  seq.note = w.note;
  seq.complete = seq.trace.size() == length;

  const bool interior_target = contains_D(sys, target) == Region::Interior;
  Matrix m = Matrix::identity(sys.rank());
  for (std::size_t k = 0; k <= seq.trace.size(); ++k) {
    if (k > 0) right_multiply(sys, static_cast<std::size_t>(seq.trace[k - 1]), m);
    const Vec x = normalized_act(sys, m, sys.base_point());
    if (!(q(sys, x) < -kNearBoundary) || interior_target) continue;
    try {
      seq.max_chord_distance = std::max(seq.max_chord_distance, chord_distance(sys, x, target));
    } catch (const ValidationError&) {
      // Points too close to the boundary for the metric are skipped.
    }
  }
  return seq;
}

std::vector<Matrix> sequence_matrices(const CoxeterSystem& sys, const ShortSequence& seq,
                                      const Perturbation* pert) {
  const CoxeterSystem& s = pert ? pert->system : sys;
  std::vector<Matrix> out;
  Matrix m = Matrix::identity(sys.rank());
  out.push_back(m);
  for (int g : seq.trace) {
    right_multiply(s, static_cast<std::size_t>(g), m);
    out.push_back(m);
  }
  return out;
}

IotaTable iota_decay_table(const CoxeterSystem& sys, const ShortSequence& seq,
                           const std::vector<long>& ms) {
  IotaTable t;
  t.ms = ms;
  t.q.assign(ms.size(), {});
  t.sup.assign(ms.size(), 0.0);
  // Perturbations are validated up front so errors surface outside the
  // parallel region with their own message.
  std::vector<std::optional<Perturbation>> perts;
  for (long m : ms) {
    if (m == 0) perts.emplace_back();
    else perts.emplace_back(perturbed_gram(sys, m));
  }
  const std::vector<Matrix> base = sequence_matrices(sys, seq);
  const long count = static_cast<long>(ms.size());
  ExceptionSlot err;
#pragma omp parallel for schedule(dynamic, 1)
  for (long mi = 0; mi < count; ++mi) err.run([&] {
    const std::vector<Matrix> rho =
        perts[mi] ? sequence_matrices(sys, seq, &*perts[mi]) : base;
    std::vector<double> row;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const Vec x = normalized_act(sys, base[k], sys.base_point());
      const Vec y = normalized_act(sys, rho[k], sys.base_point());
      row.push_back(q(sys, x - y));
    }
    t.sup[mi] = *std::max_element(row.begin(), row.end());
    t.q[mi] = std::move(row);
  });
  err.rethrow();
  return t;
}

double growth_lower_bound(const CoxeterSystem& sys, std::size_t radius) {
  if (radius < 1) throw ValidationError("growth_lower_bound: radius must be >= 1");
  const Ball ball = enumerate_ball(sys, radius);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < ball.levels.size(); ++k)
    for (const auto& e : ball.levels[k])
      best = std::min(best, one_norm(sys, e.matrix * sys.base_point()) / static_cast<double>(k));
  return best;
}

OperatorNormBound operator_norm_bound(const CoxeterSystem& sys) {
  OperatorNormBound b;
  for (std::size_t i = 0; i < sys.rank(); ++i) {
    const Matrix& s = sys.reflection(i);
    const EigenResult eig = eig_sym(SymMatrix(s.transpose() * s));
    b.c0 = std::max(b.c0, std::sqrt(eig.values.back()));
  }
  // |v|_1 = <o, v> <= |o| |v| and |o| = 1.
  b.c2 = norm(sys.base_point());
  return b;
}

double operator_norm_slack(const CoxeterSystem& sys, const OperatorNormBound& b,
                           std::size_t radius) {
  const Ball ball = enumerate_ball(sys, radius);
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < ball.levels.size(); ++k)
    for (const auto& e : ball.levels[k]) {
      const double bound = b.c2 * std::pow(b.c0, static_cast<double>(k));
      slack = std::min(slack, bound - one_norm(sys, e.matrix * sys.base_point()));
    }
  return slack;
}

namespace {

// (s_i s_j)^k . o, renormalized in the chart of `chart` after every step.
Vec dihedral_orbit(const CoxeterSystem& chart, const CoxeterSystem& action, std::size_t i,
                   std::size_t j, std::size_t k) {
  Vec x = chart.base_point();
  for (std::size_t step = 0; step < k; ++step) {
    x = reflect_simple(action, i, reflect_simple(action, j, x));
    const double s = one_norm(chart, x);
    if (!(s > 0.0)) throw NumericalError("dihedral orbit left the positive cone");
    for (double& c : x) c /= s;
  }
  return x;
}

}  // namespace

CollisionReport dihedral_collision_demo(const CoxeterSystem& sys, std::size_t i, std::size_t j,
                                        std::size_t k, long m) {
  if (i >= sys.rank() || j >= sys.rank() || i == j)
    throw ValidationError("dihedral_collision_demo: bad bond");
  if (sys.gram()(i, j) != -1.0)
    throw ValidationError("dihedral_collision_demo: bond " + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + " does not have B = -1");
  const Perturbation pert = perturbed_gram(sys, m);
  CollisionReport r;
  r.i = i;
  r.j = j;
  r.k = k;
  r.m = m;
  r.unperturbed = euclid_dist(dihedral_orbit(sys, sys, i, j, k), dihedral_orbit(sys, sys, j, i, k));
  r.perturbed = euclid_dist(dihedral_orbit(sys, pert.system, i, j, k),
                            dihedral_orbit(sys, pert.system, j, i, k));
  // Isotropic lines of a^2 + b^2 + 2c ab on span{alpha_i, alpha_j}.
  const double c = pert.system.gram()(i, j);
  const double root = std::sqrt(c * c - 1.0);
  const Vec& o = sys.base_point();
  Vec p(sys.rank(), 0.0), p2(sys.rank(), 0.0);
  for (auto [ratio, v] : {std::pair<double, Vec*>{-c + root, &p}, {-c - root, &p2}}) {
    const double scale = ratio * o[i] + o[j];
    (*v)[i] = ratio / scale;
    (*v)[j] = 1.0 / scale;
  }
  r.oracle = euclid_dist(p, p2);
  return r;
}

Vec default_target(const CoxeterSystem& sys) {
  const Vec& o = sys.base_point();
  const auto basis = orthonormal_complement(o);
  Vec dir = basis[0];
  const auto cusps = cusp_detect(sys);
  if (!cusps.empty()) {
    const Vec u = cusps.front().point - o;
    const double len = norm(u);
    Vec e = basis[0] - (dot(basis[0], u) / (len * len)) * u;
    if (norm(e) <= 1e-12) e = basis[1] - (dot(basis[1], u) / (len * len)) * u;
    dir = (1.0 / len) * u + (0.01 / norm(e)) * e;
  }
  return o + std::sqrt(sys.neg_eigenvalue() / q(sys, dir)) * dir;
}

}  // namespace coxlim
