#pragma once

// Bundled example systems.  The same systems ship as JSON files in data/.

#include <string>
#include <vector>

#include "coxlim/coxeter.hpp"

namespace coxlim::instances {

// Rank 2, B_12 = -3/2 (infinite dihedral group, Lorentzian form).
CoxeterSystem rank2_lorentzian();
// The (2,3,7) triangle group; the action is cocompact.
CoxeterSystem triangle_237();
// Rank 3, every bond infinite with weight -1.2; convex cocompact.
CoxeterSystem free_rank3();
// Rank 4: m_12 = 6, m_13 = 3, m_14 = infinity with weight t, other bonds
// commuting.  {1,2,3} is the affine group of type G2~, so the action has a
// cusp.
CoxeterSystem g2cusp_rank4(double t = -1.1);
// Rank 3 with one affine bond: B_12 = -1, B_13 = -1.2, m_23 = 3.
CoxeterSystem cusped_rank3();

struct Named {
  std::string name;
  CoxeterSystem (*make)();
};

// Every bundled system, in a fixed order.
std::vector<Named> all();
CoxeterSystem by_name(const std::string& name);

}  // namespace coxlim::instances
