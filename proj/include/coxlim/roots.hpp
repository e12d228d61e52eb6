#pragma once

// The root system W * Delta, enumerated breadth-first by simple reflections,
// and its image in the chart {|v|_1 = 1}.

#include <memory>

#include "coxlim/coxeter.hpp"

namespace coxlim {

struct Root {
  Vec vector;              // coordinates in the simple-root basis
  std::size_t depth = 0;   // smallest |w| with w(alpha) = vector
  Word word;               // witness w
  std::size_t simple = 0;  // witness alpha, 0-based
};

struct ChartRoot {
  Vec point;              // normalized root
  std::size_t depth = 0;  // depth of the first root with this chart point
  std::size_t root = 0;   // index into RootCloud::roots
};

struct RootCloud {
  std::size_t depth = 0;             // enumerated depth
  std::vector<Root> roots;           // ordered by depth, both signs
  std::vector<ChartRoot> normalized; // distinct chart points, ordered by depth
};

class RootCapExceeded : public NumericalError {
 public:
  RootCapExceeded(std::size_t completed, std::shared_ptr<RootCloud> p)
      : NumericalError("root enumeration cap exceeded after depth " + std::to_string(completed)),
        completed_depth(completed),
        partial(std::move(p)) {}
  std::size_t completed_depth;
  std::shared_ptr<RootCloud> partial;
};

inline constexpr std::size_t kDefaultRootCap = 4'000'000;

// All distinct roots w(alpha) with |w| <= depth.  Roots are deduplicated on
// their unnormalized coordinates (grid 1e-8); chart points identify +r and
// -r.  The expansion of each level is parallel and merged in generation
// order.
RootCloud enumerate_roots(const CoxeterSystem& sys, std::size_t depth,
                          std::size_t max_roots = kDefaultRootCap);

// Chart points that first appear at exactly depth k.
PointSet frontier(const RootCloud& cloud, std::size_t k);

// True if v has no pair of coordinates of opposite sign beyond tol * |v|_max.
bool sign_coherent(std::span<const double> v, double tol = 1e-10);

struct SignReport {
  std::size_t checked = 0;
  std::vector<std::size_t> violations;  // indices into the checked list
  bool ok() const { return violations.empty(); }
};

SignReport sign_coherence_check(const RootCloud& cloud, double tol = 1e-10);
SignReport sign_coherence_check(const std::vector<Vec>& vectors, double tol = 1e-10);

}  // namespace coxlim
