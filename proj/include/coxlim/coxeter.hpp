#pragma once

// Coxeter systems of type (n-1, 1): the Gram form, simple reflections, words,
// the normalized action on the chart {|v|_1 = 1}, ball enumeration in the
// word metric, and the subsystem-signature classification of the action.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlim/numeric.hpp"

namespace coxlim {

// m_ij = 0 encodes infinity.
inline constexpr int kInfinity = 0;

class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  // Validates m_ii = 1 and m_ij = m_ji in {0} U {2, 3, ...} off the diagonal.
  explicit CoxeterMatrix(std::vector<std::vector<int>> m);

  std::size_t rank() const { return m_.size(); }
  int operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  bool infinite(std::size_t i, std::size_t j) const { return i != j && m_[i][j] == kInfinity; }
  const std::vector<std::vector<int>>& rows() const { return m_; }
  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::vector<std::vector<int>> m_;
};

// Weights for infinite bonds, keyed by 0-based (i, j) with i < j.
using InfinityWeights = std::map<std::pair<std::size_t, std::size_t>, double>;

struct Signature {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
  std::string str() const;
};

// Eigenvalues with |lambda| <= zero_tol count as zero.
Signature signature_of(const Vec& eigenvalues, double zero_tol);

struct SystemOptions {
  // Relative zero-eigenvalue threshold: |lambda| <= zero_rel * |B|_max.
  double zero_rel = 1e-9;
};

class SignatureError : public ValidationError {
 public:
  SignatureError(Signature s, const std::string& what) : ValidationError(what), signature(s) {}
  Signature signature;
};

class ReducibleError : public ValidationError {
 public:
  ReducibleError(std::vector<std::vector<std::size_t>> b, const std::string& what)
      : ValidationError(what), blocks(std::move(b)) {}
  std::vector<std::vector<std::size_t>> blocks;
};

// Connected components of the graph {i ~ j : B_ij != 0}; one block means
// the matrix is irreducible.
std::vector<std::vector<std::size_t>> irreducible_blocks(const SymMatrix& gram);

// Gram matrix B_ij = -cos(pi / m_ij), with the given weight at infinite bonds.
SymMatrix gram_from_coxeter(const CoxeterMatrix& cm, const InfinityWeights& weights);

struct PerronPoint {
  Vec o;          // positive, Euclidean norm 1
  double lambda;  // B o = -lambda o, lambda > 0
};

// Negative-eigenvalue eigenvector with positive coordinates.
PerronPoint perron_base_point(const SymMatrix& gram, const SystemOptions& opts = {});

// Immutable after construction.
class CoxeterSystem {
 public:
  static CoxeterSystem build(const CoxeterMatrix& cm, const InfinityWeights& weights,
                             const SystemOptions& opts = {});
  // Infers the Coxeter matrix from the Gram entries; entries in (-1, 0) must
  // be -cos(pi/m) for an integer m to within 1e-9.
  static CoxeterSystem from_gram(const SymMatrix& gram, const SystemOptions& opts = {});

  std::size_t rank() const { return gram_.n(); }
  const CoxeterMatrix& coxeter() const { return coxeter_; }
  const SymMatrix& gram() const { return gram_; }
  const InfinityWeights& infinity_weights() const { return weights_; }
  const Vec& base_point() const { return base_point_; }
  double neg_eigenvalue() const { return lambda_; }
  const Signature& signature() const { return signature_; }
  double zero_tolerance() const { return zero_tol_; }
  const SystemOptions& options() const { return opts_; }
  // Matrix of s_i in the simple-root basis.
  const Matrix& reflection(std::size_t i) const { return reflections_[i]; }

 private:
  CoxeterSystem(CoxeterMatrix cm, InfinityWeights w, SymMatrix gram, const SystemOptions& opts);

  CoxeterMatrix coxeter_;
  InfinityWeights weights_;
  SymMatrix gram_;
  SystemOptions opts_;
  double zero_tol_ = 0.0;
  Signature signature_;
  Vec base_point_;
  double lambda_ = 0.0;
  std::vector<Matrix> reflections_;
};

double bilinear(const CoxeterSystem& sys, std::span<const double> u, std::span<const double> v);
double q(const CoxeterSystem& sys, std::span<const double> v);
// |v|_1 = sum_i o_i v_i
double one_norm(const CoxeterSystem& sys, std::span<const double> v);
// v / |v|_1; throws ValidationError when |v|_1 is within 1e-12 of zero.
Vec normalize(const CoxeterSystem& sys, std::span<const double> v);
// s_i(v) = v - 2 B(alpha_i, v) alpha_i
Vec reflect_simple(const CoxeterSystem& sys, std::size_t i, std::span<const double> v);
Vec simple_root(std::size_t n, std::size_t i);

struct Word {
  std::vector<int> letters;  // 0-based generator indices, leftmost acts last
  bool reduced = false;
  std::size_t length() const { return letters.size(); }
  std::string str() const;  // 1-based, dot separated, "e" for the identity
  static Word parse(const std::string& text, std::size_t rank);
  bool operator==(const Word&) const = default;
};

Matrix word_matrix(const CoxeterSystem& sys, const Word& w);
// w(v): reflections applied right to left.
Vec act_word(const CoxeterSystem& sys, const Word& w, std::span<const double> v);
// w . x = w(x) / |w(x)|_1.  Intermediate vectors are renormalized by their
// (positive) one-norm so long words do not overflow.  Throws NumericalError
// if an intermediate one-norm is not positive.
Vec normalized_act(const CoxeterSystem& sys, const Word& w, std::span<const double> x);
Vec normalized_act(const CoxeterSystem& sys, const Matrix& w, std::span<const double> x);

struct GroupElement {
  Matrix matrix;   // action of w on V
  Matrix inverse;  // action of w^{-1}
  Word word;       // reduced witness
  Key key;         // quantized compressed matrix entries, grid 1e-8
};

struct Ball {
  std::vector<std::vector<GroupElement>> levels;  // levels[k] holds |w| = k
  std::size_t radius() const { return levels.empty() ? 0 : levels.size() - 1; }
  std::size_t size() const;
};

class EnumerationCapExceeded : public NumericalError {
 public:
  EnumerationCapExceeded(std::size_t completed, std::shared_ptr<Ball> p)
      : NumericalError("enumeration cap exceeded after " + std::to_string(completed) +
                       " complete levels"),
        completed_levels(completed),
        partial(std::move(p)) {}
  std::size_t completed_levels;
  std::shared_ptr<Ball> partial;
};

inline constexpr std::size_t kDefaultElementCap = 4'000'000;
inline constexpr double kElementGrid = 1e-8;

// Ball of radius d in the word metric.  Each element of length k+1 is
// generated exactly once, from s*w where s is its smallest left descent;
// descents are read off the sign of w^{-1}(alpha_s), which is a root and so
// has coordinates of one sign.  Frontier expansion is OpenMP-parallel and
// merged in (parent, generator) order, so output is identical for every
// thread count.
Ball enumerate_ball(const CoxeterSystem& sys, std::size_t radius,
                    std::size_t max_elements = kDefaultElementCap);

// Serial reference: breadth-first search over s*w for every generator with
// deduplication on quantized matrix entries (grid 1e-8) and an
// exact-comparison fallback.  Kept for testing the parallel kernel.
Ball enumerate_ball_reference(const CoxeterSystem& sys, std::size_t radius,
                              std::size_t max_elements = kDefaultElementCap);

Key element_key(const Matrix& m);

enum class SubsystemType { Finite, Affine, Lorentzian };
std::string to_string(SubsystemType t);

// Classifies the standard subsystem on the given 0-based indices by the
// signature of the principal Gram submatrix.
SubsystemType subsystem_type(const CoxeterSystem& sys, std::span<const std::size_t> indices,
                             Signature* sig_out = nullptr);

enum class ActionKind { Cocompact, WithCusps, ConvexCocompact };
std::string to_string(ActionKind k);

struct SubsystemEntry {
  std::vector<std::size_t> indices;
  Signature signature;
  SubsystemType type;
  bool minimal_affine = false;
};

struct ActionClass {
  ActionKind kind;
  std::vector<SubsystemEntry> subsystems;  // every proper nonempty subset
  std::vector<int> cusp_ranks;             // ranks of minimal affine subsets
  bool hypothesis_ok = false;  // every subsystem of rank >= 3 finite or Lorentzian
};

ActionClass classify_action(const CoxeterSystem& sys);

}  // namespace coxlim
