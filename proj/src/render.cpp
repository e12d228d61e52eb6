#include "coxlim/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "coxlim/limits.hpp"
#include "coxlim/roots.hpp"

namespace coxlim {

namespace {

using P2 = std::array<double, 2>;

struct Layer {
  std::vector<std::pair<P2, std::size_t>> roots;   // (position, depth)
  std::vector<std::pair<P2, std::size_t>> orbit;
  std::vector<P2> conic;
  std::vector<P2> outline;  // triangle for rank 3
  P2 o{};
};

std::string colour(std::size_t depth, std::size_t max_depth) {
  const double t = max_depth == 0 ? 0.0 : static_cast<double>(depth) / max_depth;
  const int hue = static_cast<int>(std::lround(240.0 * (1.0 - t)));
  return "hsl(" + std::to_string(hue) + ",80%,45%)";
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::vector<Vec> parse_projection(const std::string& text, std::size_t rank) {
  std::vector<Vec> rows;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    Vec row;
    std::stringstream ps(part);
    std::string tok;
    while (std::getline(ps, tok, ',')) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ValidationError("projection: bad number '" + tok + "'");
      }
    }
    if (row.size() != rank)
      throw ValidationError("projection: each vector needs " + std::to_string(rank) + " entries");
    rows.push_back(std::move(row));
  }
  if (rows.size() != 2) throw ValidationError("projection: expected two vectors separated by ';'");
  return rows;
}

std::string render_svg(const CoxeterSystem& sys, const RenderOptions& opts) {
  const std::size_t n = sys.rank();
  if (n != 3 && n != 4)
    throw ValidationError("render: rank " + std::to_string(n) + " is not supported (need 3 or 4)");
  const Vec& o = sys.base_point();

  // Orthonormal plane directions inside V_0.
  std::vector<Vec> plane;
  if (n == 4 && !opts.projection.empty()) {
    if (opts.projection.size() != 2) throw ValidationError("render: projection needs two vectors");
    for (Vec v : opts.projection) {
      if (v.size() != n) throw ValidationError("render: projection vector has wrong size");
      v = v - dot(v, o) * o;
      for (const Vec& p : plane) v = v - dot(v, p) * p;
      const double len = norm(v);
      if (len <= 1e-12) throw ValidationError("render: projection vectors are degenerate");
      plane.push_back((1.0 / len) * v);
    }
  } else {
    const auto basis = orthonormal_complement(o);
    plane = {basis[0], basis[1]};
  }

  std::function<P2(const Vec&)> to2d;
  Layer layer;
  if (n == 3) {
    // Barycentric weights x_i o_i in an equilateral triangle.
    const std::array<P2, 3> corner{P2{0.0, 0.0}, P2{1.0, 0.0},
                                   P2{0.5, std::sqrt(3.0) / 2.0}};
    to2d = [corner, o](const Vec& x) {
      P2 p{0.0, 0.0};
      for (std::size_t i = 0; i < 3; ++i)
        for (int c = 0; c < 2; ++c) p[c] += x[i] * o[i] * corner[i][c];
      return p;
    };
    layer.outline = {corner[0], corner[1], corner[2]};
  } else {
    to2d = [plane, o](const Vec& x) {
      const Vec d = x - o;
      return P2{dot(d, plane[0]), dot(d, plane[1])};
    };
  }

  // Boundary: the section of the conic by the plane through o along the two
  // directions (for rank 3 this is the whole conic).
  const std::vector<Vec> section = n == 3 ? orthonormal_complement(o) : plane;
  for (int k = 0; k <= 256; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 256.0;
    const Vec u = std::cos(th) * section[0] + std::sin(th) * section[1];
    const double t = std::sqrt(sys.neg_eigenvalue() / q(sys, u));
    layer.conic.push_back(to2d(o + t * u));
  }

  const RootCloud cloud = enumerate_roots(sys, opts.depth);
  for (const auto& c : cloud.normalized) layer.roots.push_back({to2d(c.point), c.depth});
  const Ball ball = enumerate_ball(sys, opts.depth);
  for (std::size_t k = 0; k < ball.levels.size(); ++k)
    for (const Vec& p : orbit_frontier(sys, ball, k)) layer.orbit.push_back({to2d(p), k});
  layer.o = to2d(o);

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto grow = [&](const P2& p) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  };
  for (const auto& p : layer.conic) grow(p);
  for (const auto& p : layer.outline) grow(p);
  for (const auto& [p, d] : layer.roots) grow(p);
  for (const auto& [p, d] : layer.orbit) grow(p);
  const double span = std::max(xmax - xmin, ymax - ymin);
  const double pad = 0.05 * span;
  const double scale = (opts.size - 2.0 * 10) / (span + 2.0 * pad);
  auto px = [&](const P2& p) {
    return std::pair<double, double>{10 + (p[0] - xmin + pad) * scale,
                                     opts.size - 10 - (p[1] - ymin + pad) * scale};
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size << "\" height=\""
      << opts.size << "\" viewBox=\"0 0 " << opts.size << " " << opts.size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!layer.outline.empty()) {
    svg << "<polygon fill=\"none\" stroke=\"#888\" stroke-width=\"1\" points=\"";
    for (const auto& p : layer.outline) {
      const auto [x, y] = px(p);
      svg << num(x) << "," << num(y) << " ";
    }
    svg << "\"/>\n";
  }
  svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.2\" points=\"";
  for (const auto& p : layer.conic) {
    const auto [x, y] = px(p);
    svg << num(x) << "," << num(y) << " ";
  }
  svg << "\"/>\n";
  for (const auto& [p, d] : layer.roots) {
    const auto [x, y] = px(p);
    svg << "<circle class=\"root\" cx=\"" << num(x) << "\" cy=\"" << num(y)
        << "\" r=\"2.5\" fill=\"none\" stroke=\"" << colour(d, opts.depth) << "\"/>\n";
  }
  for (const auto& [p, d] : layer.orbit) {
    const auto [x, y] = px(p);
    svg << "<circle class=\"orbit\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"1.6\" fill=\""
        << colour(d, opts.depth) << "\"/>\n";
  }
  const auto [ox, oy] = px(layer.o);
  svg << "<circle class=\"base\" cx=\"" << num(ox) << "\" cy=\"" << num(oy)
      << "\" r=\"3.5\" fill=\"black\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace coxlim
