#pragma once

// Dense linear algebra and small geometric primitives shared by every other
// module.  Dimensions are tiny (n <= ~20), so everything is plain row-major
// storage in std::vector.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxlim/error.hpp"

namespace coxlim {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double max_abs(std::span<const double> a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& a);
double euclid_dist(std::span<const double> a, std::span<const double> b);

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Vec column(std::size_t j) const;
  const std::vector<double>& data() const { return data_; }

  Matrix transpose() const;
  Vec operator*(std::span<const double> v) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  double max_norm() const;
  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Symmetric matrix.  Construction rejects any entry pair that is not
// bit-identical across the diagonal.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);
  static SymMatrix from_rows(const std::vector<Vec>& rows) {
    return SymMatrix(Matrix::from_rows(rows));
  }

  std::size_t n() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }
  double max_norm() const { return m_.max_norm(); }
  // u^T M v
  double form(std::span<const double> u, std::span<const double> v) const;
  // Principal submatrix on the given (sorted, distinct) indices.
  SymMatrix principal(std::span<const std::size_t> indices) const;
  bool operator==(const SymMatrix& other) const = default;

 private:
  Matrix m_;
};

struct EigenResult {
  Vec values;                // ascending
  std::vector<Vec> vectors;  // vectors[k] pairs with values[k], unit length
};

// Cyclic Jacobi diagonalization.  `tol` is the stopping threshold for the
// off-diagonal Frobenius norm relative to the full Frobenius norm.  Throws
// NumericalError if the sweep cap is reached or the residual check fails.
EigenResult eig_sym(const SymMatrix& m, double tol = 1e-15, int max_sweeps = 64);

struct QuadraticRoots {
  int count = 0;                 // 0, 1 or 2 real roots
  std::array<double, 2> roots{};  // ascending; a double root is listed twice
  bool degenerate = false;       // a = b = c = 0: every t is a root
};

// Real roots of a t^2 + b t + c.  Uses the cancellation-free form of the
// quadratic formula.  A discriminant in [-1e-12 * scale^2, 0) is clamped to a
// double root.
QuadraticRoots solve_quadratic(double a, double b, double c);

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept;
};

// Componentwise round(v_i / grid).  Throws ValidationError on non-finite
// input, non-positive grid, or a quotient that does not fit in int64.
Key quantize_key(std::span<const double> v, double grid);

// Monotone map that is the identity near zero and logarithmic for large
// magnitudes, so a fixed grid acts as an absolute tolerance for small entries
// and a relative one for large entries.
double compress(double x);

// Approximate-equality set of vectors.  Two vectors match when every
// compressed coordinate differs by at most `tolerance`.  Lookups probe the
// neighbouring grid cell only for coordinates within `tolerance` of a cell
// edge, so the usual cost is a single hash probe.
class ApproxIndex {
 public:
  explicit ApproxIndex(double grid = 1e-8, double tolerance = 1e-10);

  // Index of a stored vector matching v, or -1.
  long find(std::span<const double> v) const;
  // Inserts v if no match exists.  Returns (index, inserted).
  std::pair<long, bool> insert(std::span<const double> v);
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec>& points() const { return points_; }

 private:
  Vec compressed(std::span<const double> v) const;
  Key cell_of(std::span<const double> c) const;
  bool matches(std::span<const double> a, std::span<const double> b) const;

  double grid_;
  double tolerance_;
  std::vector<Vec> points_;
  std::vector<Vec> compressed_;
  std::unordered_map<Key, std::vector<long>, KeyHash> cells_;
};

using PointSet = std::vector<Vec>;

// Hausdorff distance under the Euclidean metric.  OpenMP-parallel over both
// directed passes; hausdorff_serial is the reference implementation.
double hausdorff(const PointSet& a, const PointSet& b);
double hausdorff_serial(const PointSet& a, const PointSet& b);

// Gram-Schmidt orthonormal basis of the hyperplane {v : <v, normal> = 0}.
std::vector<Vec> orthonormal_complement(std::span<const double> normal);

std::string format_vec(std::span<const double> v, int precision = 6);

}  // namespace coxlim
