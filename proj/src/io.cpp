#include "coxlim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace coxlim::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw ValidationError(origin + ": " + msg);
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

template <class T>
std::vector<std::vector<T>> read_square(const json& j, const std::string& field,
                                        const std::string& origin) {
  if (!j.is_array() || j.empty()) fail(origin, "field '" + field + "' must be a non-empty array");
  const std::size_t n = j.size();
  std::vector<std::vector<T>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != n)
      fail(origin, "field '" + field + "' row " + std::to_string(i + 1) + " must have " +
                       std::to_string(n) + " entries");
    std::vector<T> r;
    for (std::size_t k = 0; k < n; ++k) {
      const json& v = row[k];
      const std::string where = "field '" + field + "' entry (" + std::to_string(i + 1) + "," +
                                std::to_string(k + 1) + ")";
      if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) fail(origin, where + " must be an integer");
      } else {
        if (!v.is_number()) fail(origin, where + " must be a number");
      }
      r.push_back(v.get<T>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

InfinityWeights read_weights(const json& j, std::size_t n, const std::string& origin) {
  InfinityWeights w;
  if (j.is_null()) return w;
  if (!j.is_object()) fail(origin, "field 'infinity_weights' must be an object");
  for (const auto& [key, value] : j.items()) {
    unsigned a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(key.c_str(), "%u,%u%c", &a, &b, &tail) != 2 || a < 1 || b < 1 || a > n ||
        b > n || a == b)
      fail(origin, "infinity_weights key '" + key + "' must be \"i,j\" with 1 <= i != j <= " +
                       std::to_string(n));
    if (!value.is_number()) fail(origin, "infinity_weights['" + key + "'] must be a number");
    const std::size_t i = std::min(a, b) - 1, k = std::max(a, b) - 1;
    if (w.count({i, k})) fail(origin, "infinity_weights lists bond " + key + " twice");
    w[{i, k}] = value.get<double>();
  }
  return w;
}

}  // namespace

CoxeterSystem parse_system(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    fail(origin, "JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
  if (!doc.is_object()) fail(origin, "top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "coxeter_matrix" && key != "infinity_weights" && key != "gram_matrix" &&
        key != "zero_rel" && key != "name")
      fail(origin, "unknown field '" + key + "'");
  }

  SystemOptions opts;
  if (doc.contains("zero_rel")) {
    if (!doc["zero_rel"].is_number() || !(doc["zero_rel"].get<double>() > 0.0))
      fail(origin, "field 'zero_rel' must be a positive number");
    opts.zero_rel = doc["zero_rel"].get<double>();
  }

  const bool has_cm = doc.contains("coxeter_matrix");
  const bool has_gram = doc.contains("gram_matrix");
  if (!has_cm && !has_gram) fail(origin, "need 'coxeter_matrix' or 'gram_matrix'");
  if (!has_cm && doc.contains("infinity_weights"))
    fail(origin, "'infinity_weights' requires 'coxeter_matrix'");

  try {
    if (!has_gram) {
      CoxeterMatrix cm(read_square<int>(doc["coxeter_matrix"], "coxeter_matrix", origin));
      InfinityWeights w =
          read_weights(doc.value("infinity_weights", json()), cm.rank(), origin);
      return CoxeterSystem::build(cm, w, opts);
    }
    const auto rows = read_square<double>(doc["gram_matrix"], "gram_matrix", origin);
    CoxeterSystem sys = CoxeterSystem::from_gram(SymMatrix::from_rows(rows), opts);
    if (has_cm) {
      CoxeterMatrix cm(read_square<int>(doc["coxeter_matrix"], "coxeter_matrix", origin));
      InfinityWeights w =
          read_weights(doc.value("infinity_weights", json()), cm.rank(), origin);
      if (cm.rank() != sys.rank()) fail(origin, "coxeter_matrix and gram_matrix differ in size");
      const SymMatrix expected = gram_from_coxeter(cm, w);
      for (std::size_t i = 0; i < cm.rank(); ++i)
        for (std::size_t j = 0; j < cm.rank(); ++j) {
          const double tol = cm.infinite(i, j) ? 0.0 : 1e-12;
          if (std::abs(expected(i, j) - sys.gram()(i, j)) > tol)
            fail(origin, "coxeter_matrix/infinity_weights disagree with gram_matrix at (" +
                             std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
      if (!(cm == sys.coxeter()))
        fail(origin, "coxeter_matrix disagrees with the Coxeter matrix implied by gram_matrix");
    }
    return sys;
  } catch (const json::exception& e) {
    fail(origin, std::string("malformed field: ") + e.what());
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind(origin + ":", 0) == 0) throw;
    if (auto* sig = dynamic_cast<const SignatureError*>(&e))
      throw SignatureError(sig->signature, origin + ": " + what);
    if (auto* red = dynamic_cast<const ReducibleError*>(&e))
      throw ReducibleError(red->blocks, origin + ": " + what);
    fail(origin, what);
  }
}

CoxeterSystem load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str(), path);
}

std::string emit_system(const CoxeterSystem& sys) {
  ordered_json doc;
  doc["coxeter_matrix"] = sys.coxeter().rows();
  ordered_json w = ordered_json::object();
  for (const auto& [ij, v] : sys.infinity_weights())
    w[std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1)] = v;
  doc["infinity_weights"] = w;
  ordered_json g = ordered_json::array();
  for (std::size_t i = 0; i < sys.rank(); ++i) {
    const auto row = sys.gram().matrix().row(i);
    g.push_back(std::vector<double>(row.begin(), row.end()));
  }
  doc["gram_matrix"] = g;
  doc["zero_rel"] = sys.options().zero_rel;
  return doc.dump(2) + "\n";
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ValidationError("unknown format '" + s + "' (expected json or csv)");
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_points(std::ostream& out, const std::vector<PointRecord>& rows, Format f) {
  if (f == Format::Json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json o;
      o["depth"] = r.depth;
      o["word"] = r.word;
      o["coords"] = r.coords;
      o["q"] = r.q;
      arr.push_back(std::move(o));
    }
    out << arr.dump(2) << "\n";
    return;
  }
  const std::size_t n = rows.empty() ? 0 : rows.front().coords.size();
  out << "depth,word";
  for (std::size_t i = 0; i < n; ++i) out << ",coord_" << i + 1;
  out << ",q\n";
  for (const auto& r : rows) {
    out << r.depth << "," << r.word;
    for (double c : r.coords) out << "," << fmt17(c);
    out << "," << fmt17(r.q) << "\n";
  }
}

}  // namespace coxlim::io
