#include "coxlim/instances.hpp"

namespace coxlim::instances {

CoxeterSystem rank2_lorentzian() {
  return CoxeterSystem::build(CoxeterMatrix({{1, 0}, {0, 1}}), {{{0, 1}, -1.5}});
}

CoxeterSystem triangle_237() {
  return CoxeterSystem::build(CoxeterMatrix({{1, 2, 7}, {2, 1, 3}, {7, 3, 1}}), {});
}

CoxeterSystem free_rank3() {
  return CoxeterSystem::build(CoxeterMatrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                              {{{0, 1}, -1.2}, {{0, 2}, -1.2}, {{1, 2}, -1.2}});
}

CoxeterSystem g2cusp_rank4(double t) {
  return CoxeterSystem::build(
      CoxeterMatrix({{1, 6, 3, 0}, {6, 1, 2, 2}, {3, 2, 1, 2}, {0, 2, 2, 1}}), {{{0, 3}, t}});
}

CoxeterSystem cusped_rank3() {
  return CoxeterSystem::build(CoxeterMatrix({{1, 0, 0}, {0, 1, 3}, {0, 3, 1}}),
                              {{{0, 1}, -1.0}, {{0, 2}, -1.2}});
}

std::vector<Named> all() {
  return {{"rank2_lorentzian", rank2_lorentzian},
          {"triangle_237", triangle_237},
          {"free_rank3", free_rank3},
          {"g2cusp_rank4", [] { return g2cusp_rank4(); }},
          {"cusped_rank3", cusped_rank3}};
}

CoxeterSystem by_name(const std::string& name) {
  for (const auto& n : all())
    if (n.name == name) return n.make();
  throw ValidationError("unknown instance '" + name + "'");
}

}  // namespace coxlim::instances
