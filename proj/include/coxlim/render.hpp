#pragma once

// SVG pictures of the chart: normalized roots, orbit points and the boundary
// conic, coloured by depth.

#include <string>

#include "coxlim/coxeter.hpp"

namespace coxlim {

struct RenderOptions {
  std::size_t depth = 6;
  int size = 640;  // pixels, square canvas
  // Rank 4 only: two row vectors spanning the drawing plane.  They are
  // projected onto V_0 and orthonormalized.  Empty selects a fixed basis of
  // V_0.
  std::vector<Vec> projection;
};

// Rank 3: barycentric coordinates in the triangle of normalized simple
// roots.  Rank 4: orthogonal projection of V_1 around o onto a plane.  Other
// ranks are rejected.
std::string render_svg(const CoxeterSystem& sys, const RenderOptions& opts);

// Parses "a,b,c,d;e,f,g,h" into two vectors.
std::vector<Vec> parse_projection(const std::string& text, std::size_t rank);

}  // namespace coxlim
