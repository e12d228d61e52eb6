#include "coxlim/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "coxlim/parallel.hpp"

namespace coxlim {

// ------------------------------------------------------- CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> m) : m_(std::move(m)) {
  const std::size_t n = m_.size();
  if (n == 0) throw ValidationError("Coxeter matrix is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (m_[i].size() != n) throw ValidationError("Coxeter matrix is not square");
    if (m_[i][i] != 1) throw ValidationError("Coxeter matrix needs m_ii = 1");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m_[i][j] != m_[j][i])
        throw ValidationError("Coxeter matrix is not symmetric at (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ")");
      if (m_[i][j] != kInfinity && m_[i][j] < 2)
        throw ValidationError("Coxeter matrix entry m_" + std::to_string(i + 1) +
                              std::to_string(j + 1) + " must be >= 2 or 0 (infinity)");
    }
}

std::string Signature::str() const {
  std::ostringstream os;
  os << "(" << pos << "," << neg;
  if (zero) os << ", " << zero << " zero";
  os << ")";
  return os.str();
}

Signature signature_of(const Vec& ev, double zero_tol) {
  Signature s;
  for (double x : ev) {
    if (std::abs(x) <= zero_tol) ++s.zero;
    else if (x > 0) ++s.pos;
    else ++s.neg;
  }
  return s;
}

std::vector<std::vector<std::size_t>> irreducible_blocks(const SymMatrix& gram) {
  const std::size_t n = gram.n();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<std::size_t> block{start};
    comp[start] = static_cast<int>(blocks.size());
    for (std::size_t head = 0; head < block.size(); ++head)
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && j != block[head] && gram(block[head], j) != 0.0) {
          comp[j] = comp[start];
          block.push_back(j);
        }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

namespace {

double cos_entry(int m) {
  // Exact values where they exist so that commuting generators give an exact
  // zero and the irreducibility test is not fooled by cos(pi/2) != 0.
  switch (m) {
    case 2: return 0.0;
    case 3: return -0.5;
    default: return -std::cos(std::numbers::pi / m);
  }
}

}  // namespace

SymMatrix gram_from_coxeter(const CoxeterMatrix& cm, const InfinityWeights& weights) {
  const std::size_t n = cm.rank();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v;
      if (cm.infinite(i, j)) {
        auto it = weights.find({i, j});
        if (it == weights.end())
          throw ValidationError("missing weight for infinite bond " + std::to_string(i + 1) + "," +
                                std::to_string(j + 1));
        v = it->second;
        if (!(v <= -1.0))
          throw ValidationError("weight at infinite bond " + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + " must be <= -1, got " +
                                std::to_string(v));
      } else {
        v = cos_entry(cm(i, j));
      }
      g(i, j) = g(j, i) = v;
    }
  }
  for (const auto& [ij, w] : weights) {
    if (ij.first >= n || ij.second >= n || ij.first >= ij.second || !cm.infinite(ij.first, ij.second))
      throw ValidationError("infinity weight given for a bond that is not infinite: " +
                            std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1));
  }
  return SymMatrix(std::move(g));
}

PerronPoint perron_base_point(const SymMatrix& gram, const SystemOptions& opts) {
  const EigenResult eig = eig_sym(gram);
  const double zero_tol = opts.zero_rel * gram.max_norm();
  if (!(eig.values.front() < -zero_tol))
    throw ValidationError("Gram matrix has no negative eigenvalue");
  Vec o = eig.vectors.front();
  double sum = std::accumulate(o.begin(), o.end(), 0.0);
  if (sum < 0) o = -1.0 * o;
  for (std::size_t i = 0; i < o.size(); ++i)
    if (!(o[i] > 0.0))
      throw NumericalError("negative-eigenvalue eigenvector has non-positive coordinate " +
                           std::to_string(i + 1) + " = " + std::to_string(o[i]));
  const double len = norm(o);
  for (double& x : o) x /= len;
  return {std::move(o), -eig.values.front()};
}

// ------------------------------------------------------- CoxeterSystem

CoxeterSystem::CoxeterSystem(CoxeterMatrix cm, InfinityWeights w, SymMatrix gram,
                             const SystemOptions& opts)
    : coxeter_(std::move(cm)), weights_(std::move(w)), gram_(std::move(gram)), opts_(opts) {
  const std::size_t n = gram_.n();
  for (std::size_t i = 0; i < n; ++i)
    if (gram_(i, i) != 1.0) throw ValidationError("Gram matrix needs unit diagonal");
  zero_tol_ = opts_.zero_rel * gram_.max_norm();

  auto blocks = irreducible_blocks(gram_);
  if (blocks.size() > 1) {
    std::ostringstream os;
    os << "Gram matrix is reducible; blocks:";
    for (const auto& b : blocks) {
      os << " {";
      for (std::size_t k = 0; k < b.size(); ++k) os << (k ? "," : "") << b[k] + 1;
      os << "}";
    }
    throw ReducibleError(std::move(blocks), os.str());
  }

  const EigenResult eig = eig_sym(gram_);
  signature_ = signature_of(eig.values, zero_tol_);
  if (!(signature_ == Signature{static_cast<int>(n) - 1, 1, 0}))
    throw SignatureError(signature_, "Gram signature " + signature_.str() + " is not (" +
                                         std::to_string(n - 1) + ",1)");

  auto pp = perron_base_point(gram_, opts_);
  base_point_ = std::move(pp.o);
  lambda_ = pp.lambda;

  reflections_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix s = Matrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) s(i, j) -= 2.0 * gram_(i, j);
    reflections_.push_back(std::move(s));
  }
}

CoxeterSystem CoxeterSystem::build(const CoxeterMatrix& cm, const InfinityWeights& weights,
                                   const SystemOptions& opts) {
  return CoxeterSystem(cm, weights, gram_from_coxeter(cm, weights), opts);
}

CoxeterSystem CoxeterSystem::from_gram(const SymMatrix& gram, const SystemOptions& opts) {
  const std::size_t n = gram.n();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 1));
  InfinityWeights w;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double b = gram(i, j);
      int mij;
      if (b <= -1.0) {
        mij = kInfinity;
        w[{i, j}] = b;
      } else if (b == 0.0) {
        mij = 2;
      } else if (b < 0.0) {
        const double exact = std::numbers::pi / std::acos(-b);
        mij = static_cast<int>(std::lround(exact));
        if (mij < 3 || std::abs(-std::cos(std::numbers::pi / mij) - b) > 1e-9)
          throw ValidationError("Gram entry (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") = " + std::to_string(b) +
                                " is not -cos(pi/m) for an integer m");
      } else {
        throw ValidationError("Gram entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") must be <= 0");
      }
      m[i][j] = m[j][i] = mij;
    }
  return CoxeterSystem(CoxeterMatrix(std::move(m)), std::move(w), gram, opts);
}

// ------------------------------------------------------- form & action

double bilinear(const CoxeterSystem& sys, std::span<const double> u, std::span<const double> v) {
  return sys.gram().form(u, v);
}

double q(const CoxeterSystem& sys, std::span<const double> v) { return sys.gram().form(v, v); }

double one_norm(const CoxeterSystem& sys, std::span<const double> v) {
  if (v.size() != sys.rank()) throw ValidationError("one_norm: dimension mismatch");
  return dot(sys.base_point(), v);
}

Vec normalize(const CoxeterSystem& sys, std::span<const double> v) {
  const double s = one_norm(sys, v);
  if (std::abs(s) <= 1e-12 * std::max(1.0, max_abs(v)))
    throw ValidationError("normalize: vector lies on the hyperplane |v|_1 = 0");
  Vec r(v.begin(), v.end());
  for (double& x : r) x /= s;
  return r;
}

Vec simple_root(std::size_t n, std::size_t i) {
  Vec a(n, 0.0);
  a[i] = 1.0;
  return a;
}

Vec reflect_simple(const CoxeterSystem& sys, std::size_t i, std::span<const double> v) {
  if (v.size() != sys.rank() || i >= sys.rank()) throw ValidationError("reflect_simple: bad input");
  Vec r(v.begin(), v.end());
  r[i] -= 2.0 * dot(sys.gram().matrix().row(i), v);
  return r;
}

std::string Word::str() const {
  if (letters.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (k) s += '.';
    s += std::to_string(letters[k] + 1);
  }
  return s;
}

Word Word::parse(const std::string& text, std::size_t rank) {
  Word w;
  if (text.empty() || text == "e") return w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '.')) {
    int g = 0;
    std::size_t used = 0;
    try {
      g = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw ValidationError("bad word letter '" + tok + "'");
    if (g < 1 || static_cast<std::size_t>(g) > rank)
      throw ValidationError("word letter " + tok + " out of range");
    w.letters.push_back(g - 1);
  }
  return w;
}

Matrix word_matrix(const CoxeterSystem& sys, const Word& w) {
  Matrix m = Matrix::identity(sys.rank());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) m = sys.reflection(*it) * m;
  return m;
}

Vec act_word(const CoxeterSystem& sys, const Word& w, std::span<const double> v) {
  Vec r(v.begin(), v.end());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r = reflect_simple(sys, *it, r);
  return r;
}

Vec normalized_act(const CoxeterSystem& sys, const Word& w, std::span<const double> x) {
  Vec r(x.begin(), x.end());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    r = reflect_simple(sys, *it, r);
    const double s = one_norm(sys, r);
    if (!(s > 0.0)) throw NumericalError("normalized_act: |w(x)|_1 <= 0 along the word");
    for (double& c : r) c /= s;
  }
  return normalize(sys, r);
}

Vec normalized_act(const CoxeterSystem& sys, const Matrix& w, std::span<const double> x) {
  Vec r = w * x;
  const double s = one_norm(sys, r);
  if (!(s > 0.0)) throw NumericalError("normalized_act: |w(x)|_1 <= 0");
  for (double& c : r) c /= s;
  return r;
}

// --------------------------------------------------------------- balls

std::size_t Ball::size() const {
  std::size_t s = 0;
  for (const auto& l : levels) s += l.size();
  return s;
}

Key element_key(const Matrix& m) {
  Vec c(m.data().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = compress(m.data()[i]);
  return quantize_key(c, kElementGrid);
}

namespace {

// Row i of s_i * W: only that row changes.
void left_reflect(const CoxeterSystem& sys, std::size_t i, Matrix& w) {
  const std::size_t n = sys.rank();
  Vec row(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double b = sys.gram()(i, j);
    if (b == 0.0) continue;
    for (std::size_t c = 0; c < n; ++c) row[c] += b * w(j, c);
  }
  for (std::size_t c = 0; c < n; ++c) w(i, c) -= 2.0 * row[c];
}

// W * s_i: column j gains -2 B_ij * column i.
void right_reflect(const CoxeterSystem& sys, std::size_t i, Matrix& w) {
  const std::size_t n = sys.rank();
  const Vec col = w.column(i);
  for (std::size_t j = 0; j < n; ++j) {
    const double b = sys.gram()(i, j);
    if (b == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) w(r, j) -= 2.0 * b * col[r];
  }
}

double column_sum(const Matrix& m, std::size_t j) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, j);
  return s;
}

GroupElement identity_element(std::size_t n) {
  GroupElement e{Matrix::identity(n), Matrix::identity(n), Word{{}, true}, {}};
  e.key = element_key(e.matrix);
  return e;
}

GroupElement left_multiply(const CoxeterSystem& sys, const GroupElement& w, std::size_t s) {
  GroupElement u;
  u.matrix = w.matrix;
  left_reflect(sys, s, u.matrix);
  u.inverse = w.inverse;
  right_reflect(sys, s, u.inverse);
  u.word.letters.reserve(w.word.letters.size() + 1);
  u.word.letters.push_back(static_cast<int>(s));
  u.word.letters.insert(u.word.letters.end(), w.word.letters.begin(), w.word.letters.end());
  u.word.reduced = true;
  u.key = element_key(u.matrix);
  return u;
}

}  // namespace

Ball enumerate_ball(const CoxeterSystem& sys, std::size_t radius, std::size_t max_elements) {
  const std::size_t n = sys.rank();
  auto ball = std::make_shared<Ball>();
  ball->levels.push_back({identity_element(n)});
  std::size_t total = 1;

  for (std::size_t k = 0; k < radius; ++k) {
    const auto& frontier = ball->levels.back();
    std::vector<std::vector<GroupElement>> children(frontier.size());
    const long m = static_cast<long>(frontier.size());
    ExceptionSlot err;
#pragma omp parallel for schedule(dynamic, 16)
    for (long p = 0; p < m; ++p) err.run([&] {
      const GroupElement& w = frontier[p];
      for (std::size_t s = 0; s < n; ++s) {
        // |s w| > |w|  iff  w^{-1}(alpha_s) is a positive root.
        const double cs = column_sum(w.inverse, s);
        if (!(cs > 0.0)) continue;
        // s must be the smallest left descent of u = s w, i.e. for t < s the
        // root u^{-1}(alpha_t) = w^{-1}(alpha_t) - 2 B_st w^{-1}(alpha_s) is positive.
        bool canonical = true;
        for (std::size_t t = 0; t < s && canonical; ++t) {
          const double ct = column_sum(w.inverse, t) - 2.0 * sys.gram()(s, t) * cs;
          if (ct < 0.0) canonical = false;
        }
        if (canonical) children[p].push_back(left_multiply(sys, w, s));
      }
    });
    err.rethrow();
    std::vector<GroupElement> next;
    std::size_t count = 0;
    for (const auto& c : children) count += c.size();
    if (total + count > max_elements) throw EnumerationCapExceeded(k, ball);
    next.reserve(count);
    for (auto& c : children)
      for (auto& e : c) next.push_back(std::move(e));
    total += count;
    ball->levels.push_back(std::move(next));
  }
  return std::move(*ball);
}

Ball enumerate_ball_reference(const CoxeterSystem& sys, std::size_t radius,
                              std::size_t max_elements) {
  const std::size_t n = sys.rank();
  auto ball = std::make_shared<Ball>();
  ball->levels.push_back({identity_element(n)});
  ApproxIndex seen(kElementGrid, 1e-10);
  seen.insert(ball->levels[0][0].matrix.data());
  std::size_t total = 1;
  for (std::size_t k = 0; k < radius; ++k) {
    std::vector<GroupElement> next;
    for (const auto& w : ball->levels.back()) {
      for (std::size_t s = 0; s < n; ++s) {
        GroupElement u = left_multiply(sys, w, s);
        if (!seen.insert(u.matrix.data()).second) continue;
        if (++total > max_elements) throw EnumerationCapExceeded(k, ball);
        next.push_back(std::move(u));
      }
    }
    ball->levels.push_back(std::move(next));
  }
  return std::move(*ball);
}

// ------------------------------------------------------ classification

std::string to_string(SubsystemType t) {
  switch (t) {
    case SubsystemType::Finite: return "finite";
    case SubsystemType::Affine: return "affine";
    case SubsystemType::Lorentzian: return "lorentzian";
  }
  return "?";
}

std::string to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Cocompact: return "cocompact";
    case ActionKind::WithCusps: return "with cusps";
    case ActionKind::ConvexCocompact: return "convex cocompact";
  }
  return "?";
}

SubsystemType subsystem_type(const CoxeterSystem& sys, std::span<const std::size_t> indices,
                             Signature* sig_out) {
  if (indices.empty()) throw ValidationError("subsystem_type: empty subset");
  const SymMatrix sub = sys.gram().principal(indices);
  const Signature s = signature_of(eig_sym(sub).values, sys.zero_tolerance());
  if (sig_out) *sig_out = s;
  const int k = static_cast<int>(indices.size());
  if (s == Signature{k, 0, 0}) return SubsystemType::Finite;
  if (s == Signature{k - 1, 0, 1}) return SubsystemType::Affine;
  if (s == Signature{k - 1, 1, 0}) return SubsystemType::Lorentzian;
  throw NumericalError("subsystem signature " + s.str() +
                       " is none of finite/affine/Lorentzian; check the zero tolerance");
}

ActionClass classify_action(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  if (n > 20) throw ValidationError("classify_action: rank too large for subset enumeration");
  ActionClass ac;
  const std::uint32_t full = (1u << n) - 1;
  std::vector<int> type_of(full + 1, -1);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    SubsystemEntry e;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) e.indices.push_back(i);
    e.type = subsystem_type(sys, e.indices, &e.signature);
    type_of[mask] = static_cast<int>(e.type);
    ac.subsystems.push_back(std::move(e));
  }
  // Minimal affine: no proper nonempty subset is affine.
  for (auto& e : ac.subsystems) {
    if (e.type != SubsystemType::Affine) continue;
    std::uint32_t mask = 0;
    for (std::size_t i : e.indices) mask |= 1u << i;
    bool minimal = true;
    for (std::uint32_t sub = (mask - 1) & mask; sub && minimal; sub = (sub - 1) & mask)
      if (type_of[sub] == static_cast<int>(SubsystemType::Affine)) minimal = false;
    e.minimal_affine = minimal;
    if (minimal) ac.cusp_ranks.push_back(static_cast<int>(e.indices.size()));
  }
  bool all_corank1_finite = true, any_affine = false;
  ac.hypothesis_ok = true;
  for (const auto& e : ac.subsystems) {
    if (e.indices.size() == n - 1 && e.type != SubsystemType::Finite) all_corank1_finite = false;
    if (e.type == SubsystemType::Affine) any_affine = true;
    if (e.indices.size() >= 3 && e.type == SubsystemType::Affine) ac.hypothesis_ok = false;
  }
  if (any_affine) ac.kind = ActionKind::WithCusps;
  else if (all_corank1_finite) ac.kind = ActionKind::Cocompact;
  else ac.kind = ActionKind::ConvexCocompact;
  return ac;
}

}  // namespace coxlim
