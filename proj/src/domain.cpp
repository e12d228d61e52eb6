#include "coxlim/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coxlim/parallel.hpp"

namespace coxlim {

bool in_K(const CoxeterSystem& sys, std::span<const double> x, double tol) {
  if (contains_D(sys, x) != Region::Interior) return false;
  for (std::size_t i = 0; i < sys.rank(); ++i)
    if (!(dot(sys.gram().matrix().row(i), x) < -tol)) return false;
  return true;
}

bool in_Kprime(const CoxeterSystem& sys, std::span<const double> x, double tol) {
  if (!in_K(sys, x, tol)) return false;
  return std::all_of(x.begin(), x.end(), [tol](double c) { return c > tol; });
}

namespace {

struct Descent {
  Word word;
  Vec rep;
  std::vector<Crossing> crossings;
};

Descent descend(const CoxeterSystem& sys, Vec cur, double tol) {
  Descent d;
  for (std::size_t step = 0;; ++step) {
    if (step >= kDescentCap) throw NumericalError("chamber_of: descent did not terminate");
    std::size_t gen = sys.rank();
    for (std::size_t i = 0; i < sys.rank(); ++i)
      if (dot(sys.gram().matrix().row(i), cur) > tol) {
        gen = i;
        break;
      }
    if (gen == sys.rank()) break;
    cur = normalize(sys, reflect_simple(sys, gen, cur));
    d.word.letters.push_back(static_cast<int>(gen));
    d.crossings.push_back({step, gen});
  }
  d.word.reduced = true;
  d.rep = std::move(cur);
  return d;
}

bool on_wall(const CoxeterSystem& sys, const Vec& x, double tol) {
  for (std::size_t i = 0; i < sys.rank(); ++i)
    if (std::abs(dot(sys.gram().matrix().row(i), x)) <= tol) return true;
  return false;
}

}  // namespace

ChamberResult chamber_of(const CoxeterSystem& sys, std::span<const double> x, double tol) {
  if (x.size() != sys.rank()) throw ValidationError("chamber_of: dimension mismatch");
  if (!(q(sys, x) < 0.0)) throw ValidationError("chamber_of: point is not inside D");
  Descent d = descend(sys, Vec(x.begin(), x.end()), tol);
  ChamberResult r;
  if (on_wall(sys, d.rep, tol)) {
    std::mt19937_64 rng(0x5eed);
    Vec dir(sys.rank(), 0.0);
    std::normal_distribution<double> g;
    for (const Vec& e : orthonormal_complement(sys.base_point())) dir = dir + g(rng) * e;
    const Vec moved = Vec(x.begin(), x.end()) + (1e-9 / norm(dir)) * dir;
    d = descend(sys, moved, tol);
    r.perturbed = true;
  }
  r.word = std::move(d.word);
  r.representative = std::move(d.rep);
  r.crossings = std::move(d.crossings);
  return r;
}

PointSet sample_in_K(const CoxeterSystem& sys, std::size_t count, std::mt19937_64& rng,
                     double margin) {
  // B^{-1} from the spectral decomposition; -B^{-1} c with c > 0 spans the
  // open cone {B(alpha_i, .) < 0 for all i}.
  const EigenResult eig = eig_sym(sys.gram());
  const std::size_t n = sys.rank();
  Matrix inv(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        inv(i, j) += eig.vectors[k][i] * eig.vectors[k][j] / eig.values[k];

  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> spread(0.0, 2.0);
  PointSet out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * count + 1000)
      throw NumericalError("sample_in_K: rejection rate too high");
    const double sigma = spread(rng);
    Vec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = sys.base_point()[i] * std::exp(sigma * g(rng));
    Vec v = -1.0 * (inv * c);
    const Vec x = normalize(sys, v);
    if (q(sys, x) < -margin && in_K(sys, x)) out.push_back(x);
  }
  return out;
}

DirichletReport dirichlet_check(const CoxeterSystem& sys, std::span<const double> x,
                                const PointSet& ys, std::size_t radius) {
  const Ball ball = enumerate_ball(sys, radius);
  std::vector<const GroupElement*> elems;
  for (std::size_t k = 1; k < ball.levels.size(); ++k)
    for (const auto& e : ball.levels[k]) elems.push_back(&e);

  DirichletReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const Vec xv(x.begin(), x.end());
  for (const Vec& y : ys) {
    const double base = dist(sys, xv, y);
    const long m = static_cast<long>(elems.size());
    double local_min = std::numeric_limits<double>::infinity();
    std::size_t bad = 0;
    ExceptionSlot err;
#pragma omp parallel for schedule(dynamic, 32) reduction(min : local_min) reduction(+ : bad)
    for (long i = 0; i < m; ++i) {
      err.run([&] {
        const double margin = dist(sys, xv, normalized_act(sys, elems[i]->matrix, y)) - base;
        local_min = std::min(local_min, margin);
        if (!(margin > 0.0)) ++bad;
      });
    }
    err.rethrow();
    rep.comparisons += elems.size();
    rep.violations += bad;
    rep.min_margin = std::min(rep.min_margin, local_min);
  }
  return rep;
}

QiEstimate qi_estimate(const CoxeterSystem& sys, std::size_t radius) {
  if (radius < 1) throw ValidationError("qi_estimate: radius must be >= 1");
  if (classify_action(sys).kind == ActionKind::WithCusps)
    throw ValidationError(
        "qi_estimate: the action has cusps, so the fundamental region is unbounded and no "
        "quasi-isometry constants exist");
  const Ball ball = enumerate_ball(sys, radius);
  const Vec& o = sys.base_point();
  QiEstimate est{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = 1; k < ball.levels.size(); ++k)
    for (const auto& e : ball.levels[k]) {
      const double r = dist(sys, normalized_act(sys, e.matrix, o), o) / static_cast<double>(k);
      est.k_low = std::min(est.k_low, r);
      est.k_high = std::max(est.k_high, r);
    }
  return est;
}

std::vector<Cusp> cusp_detect(const CoxeterSystem& sys) {
  const ActionClass ac = classify_action(sys);
  std::vector<Cusp> out;
  for (const auto& e : ac.subsystems) {
    if (!e.minimal_affine) continue;
    const EigenResult eig = eig_sym(sys.gram().principal(e.indices));
    std::size_t zeros = 0, at = 0;
    for (std::size_t k = 0; k < eig.values.size(); ++k)
      if (std::abs(eig.values[k]) <= sys.zero_tolerance()) {
        ++zeros;
        at = k;
      }
    if (zeros != 1)
      throw NumericalError("cusp_detect: kernel of an affine block has dimension " +
                           std::to_string(zeros));
    Vec v(sys.rank(), 0.0);
    for (std::size_t k = 0; k < e.indices.size(); ++k) v[e.indices[k]] = eig.vectors[at][k];
    Cusp c{e.indices, normalize(sys, v)};
    double resid = std::abs(q(sys, c.point));
    for (std::size_t i : e.indices)
      resid = std::max(resid, std::abs(dot(sys.gram().matrix().row(i), c.point)));
    if (resid > 1e-9)
      throw NumericalError("cusp_detect: tangency residual " + std::to_string(resid));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace coxlim
