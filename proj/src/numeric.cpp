#include "coxlim/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace coxlim {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(double s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

double euclid_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------- Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ValidationError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Matrix::operator*(std::span<const double> v) const {
  if (v.size() != cols_) throw ValidationError("matrix-vector dimension mismatch");
  Vec r(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) r[i] = dot(row(i), v);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw ValidationError("matrix product dimension mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

double Matrix::max_norm() const { return max_abs(data_); }

// ------------------------------------------------------------- SymMatrix

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ValidationError("symmetric matrix must be square");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i))
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
}

double SymMatrix::form(std::span<const double> u, std::span<const double> v) const {
  const std::size_t n = this->n();
  if (u.size() != n || v.size() != n) throw ValidationError("bilinear form dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += u[i] * dot(m_.row(i), v);
  return s;
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> idx) const {
  Matrix p(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) p(a, b) = m_(idx[a], idx[b]);
  return SymMatrix(std::move(p));
}

// ------------------------------------------------------------ eig_sym

EigenResult eig_sym(const SymMatrix& sym, double tol, int max_sweeps) {
  const std::size_t n = sym.n();
  if (n == 0) throw ValidationError("eig_sym: empty matrix");
  Matrix a = sym.matrix();
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  frob = std::sqrt(frob);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    const double off = off_norm();
    if (off <= tol * frob || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating a(p,q) (Rutishauser's formulation).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps && off_norm() > tol * frob) {
    throw NumericalError("eig_sym: no convergence after " + std::to_string(max_sweeps) +
                         " sweeps, off-diagonal norm " + std::to_string(off_norm()));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenResult r;
  r.values.reserve(n);
  r.vectors.reserve(n);
  const double scale = std::max(sym.max_norm(), std::numeric_limits<double>::min());
  for (std::size_t k : order) {
    r.values.push_back(a(k, k));
    Vec col = v.column(k);
    const double len = norm(col);
    for (double& x : col) x /= len;
    const Vec mv = sym.matrix() * col;
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += std::pow(mv[i] - a(k, k) * col[i], 2);
    res = std::sqrt(res);
    if (res > 1e-10 * scale) {
      throw NumericalError("eig_sym: residual " + std::to_string(res) +
                           " exceeds 1e-10 * |M| for eigenvalue " + std::to_string(a(k, k)));
    }
    r.vectors.push_back(std::move(col));
  }
  return r;
}

// ----------------------------------------------------- solve_quadratic

QuadraticRoots solve_quadratic(double a, double b, double c) {
  QuadraticRoots r;
  if (a == 0.0) {
    if (b == 0.0) {
      r.degenerate = (c == 0.0);
      return r;
    }
    r.count = 1;
    r.roots = {-c / b, -c / b};
    return r;
  }
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  const double as = a / scale, bs = b / scale, cs = c / scale;
  double disc = bs * bs - 4.0 * as * cs;
  if (disc < 0.0) {
    if (disc < -1e-12) return r;
    disc = 0.0;
  }
  if (disc == 0.0) {
    const double t = -bs / (2.0 * as);
    r.count = 2;
    r.roots = {t, t};
    return r;
  }
  const double qv = -0.5 * (bs + std::copysign(std::sqrt(disc), bs));
  double t1 = qv / as;
  double t2 = (qv != 0.0) ? cs / qv : -t1;
  if (t1 > t2) std::swap(t1, t2);
  r.count = 2;
  r.roots = {t1, t2};
  return r;
}

// --------------------------------------------------------------- keys

std::size_t KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (std::int64_t x : k) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Key quantize_key(std::span<const double> v, double grid) {
  if (!(grid > 0.0) || !std::isfinite(grid)) throw ValidationError("quantize_key: grid must be > 0");
  Key k;
  k.reserve(v.size());
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError("quantize_key: non-finite coordinate");
    const double q = std::round(x / grid);
    if (std::abs(q) > 9.0e18) throw ValidationError("quantize_key: coordinate overflows key range");
    k.push_back(static_cast<std::int64_t>(q));
  }
  return k;
}

double compress(double x) {
  const double ax = std::abs(x);
  if (ax <= 1.0) return x;
  return std::copysign(1.0 + std::log(ax), x);
}

ApproxIndex::ApproxIndex(double grid, double tolerance) : grid_(grid), tolerance_(tolerance) {
  if (!(grid > 0.0) || !(tolerance >= 0.0) || tolerance * 2.0 >= grid)
    throw ValidationError("ApproxIndex: need 0 <= 2*tolerance < grid");
}

Vec ApproxIndex::compressed(std::span<const double> v) const {
  Vec c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = compress(v[i]);
  return c;
}

Key ApproxIndex::cell_of(std::span<const double> c) const { return quantize_key(c, grid_); }

bool ApproxIndex::matches(std::span<const double> a, std::span<const double> b) const {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tolerance_) return false;
  return true;
}

long ApproxIndex::find(std::span<const double> v) const {
  const Vec c = compressed(v);
  const Key base = cell_of(c);
  // Candidate offsets per coordinate: the own cell plus a neighbour when the
  // value sits within tolerance of a cell edge.
  std::vector<std::array<std::int64_t, 2>> options(c.size());
  std::vector<int> counts(c.size(), 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    options[i][0] = base[i];
    const double f = c[i] / grid_ - static_cast<double>(base[i]);  // in [-0.5, 0.5]
    const double t = tolerance_ / grid_;
    if (f > 0.5 - t) {
      options[i][1] = base[i] + 1;
      counts[i] = 2;
    } else if (f < -0.5 + t) {
      options[i][1] = base[i] - 1;
      counts[i] = 2;
    }
  }
  std::vector<int> pick(c.size(), 0);
  Key probe(c.size());
  while (true) {
    for (std::size_t i = 0; i < c.size(); ++i) probe[i] = options[i][pick[i]];
    if (auto it = cells_.find(probe); it != cells_.end()) {
      for (long idx : it->second)
        if (matches(compressed_[idx], c)) return idx;
    }
    std::size_t i = 0;
    for (; i < c.size(); ++i) {
      if (++pick[i] < counts[i]) break;
      pick[i] = 0;
    }
    if (i == c.size()) break;
  }
  return -1;
}

std::pair<long, bool> ApproxIndex::insert(std::span<const double> v) {
  if (long idx = find(v); idx >= 0) return {idx, false};
  Vec c = compressed(v);
  const long idx = static_cast<long>(points_.size());
  cells_[cell_of(c)].push_back(idx);
  points_.emplace_back(v.begin(), v.end());
  compressed_.push_back(std::move(c));
  return {idx, true};
}

// ------------------------------------------------------------ hausdorff

namespace {

void check_sets(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw ValidationError("hausdorff: empty point set");
  const std::size_t d = a.front().size();
  for (const auto& p : a)
    if (p.size() != d) throw ValidationError("hausdorff: dimension mismatch");
  for (const auto& p : b)
    if (p.size() != d) throw ValidationError("hausdorff: dimension mismatch");
}

double directed_serial(const PointSet& from, const PointSet& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) best = std::min(best, euclid_dist(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

double directed_parallel(const PointSet& from, const PointSet& to) {
  double worst = 0.0;
  const long m = static_cast<long>(from.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long i = 0; i < m; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) best = std::min(best, euclid_dist(from[i], q));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(const PointSet& a, const PointSet& b) {
  check_sets(a, b);
  return std::max(directed_parallel(a, b), directed_parallel(b, a));
}

double hausdorff_serial(const PointSet& a, const PointSet& b) {
  check_sets(a, b);
  return std::max(directed_serial(a, b), directed_serial(b, a));
}

std::vector<Vec> orthonormal_complement(std::span<const double> normal) {
  const std::size_t n = normal.size();
  const double len = norm(normal);
  if (len == 0.0) throw ValidationError("orthonormal_complement: zero normal");
  Vec u(normal.begin(), normal.end());
  for (double& x : u) x /= len;
  std::vector<Vec> basis{u};
  for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
    Vec v(n, 0.0);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const double c = dot(v, b);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
      }
    const double l = norm(v);
    if (l < 1e-8) continue;
    for (double& x : v) x /= l;
    basis.push_back(std::move(v));
  }
  basis.erase(basis.begin());
  return basis;
}

std::string format_vec(std::span<const double> v, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace coxlim
