#pragma once

// JSON system files and point tables.
//
// A system file is one JSON object with either
//   "coxeter_matrix": [[1, 6, ...], ...]   (0 encodes infinity)
//   "infinity_weights": {"1,4": -1.1, ...} (1-based bond keys)
// or
//   "gram_matrix": [[1, -0.866..., ...], ...]
// or both, in which case they must agree.  Optional "zero_rel" sets the
// relative zero-eigenvalue threshold.

#include <iosfwd>
#include <string>

#include "coxlim/coxeter.hpp"

namespace coxlim::io {

CoxeterSystem parse_system(const std::string& text, const std::string& origin = "<input>");
CoxeterSystem load_system(const std::string& path);

// Writes every field, with doubles in shortest round-trip form, so that
// parse_system(emit_system(s)) reproduces s bit for bit.
std::string emit_system(const CoxeterSystem& sys);

struct PointRecord {
  std::size_t depth = 0;
  std::string word;
  Vec coords;
  double q = 0.0;
};

enum class Format { Json, Csv };
Format parse_format(const std::string& s);

// CSV columns: depth, word, coord_1..coord_n, q, with 17 significant digits.
void write_points(std::ostream& out, const std::vector<PointRecord>& rows, Format f);

// Fixed 17-significant-digit rendering used by every text output.
std::string fmt17(double x);

}  // namespace coxlim::io
