// coxlim: command-line front end.
//
//   coxlim analyze  <file> [--json]
//   coxlim roots    <file> --depth d [--format json|csv] [--out path]
//   coxlim limitset <file> --depth d [--format json|csv] [--out path]
//   coxlim dist     <file> --x a,b,.. --y a,b,..
//   coxlim ct       <file> [--m-list 10,100,1000] [--depth 40] [--target a,b,..] [--k 200]
//   coxlim render   <file> [--depth 6] [--out file.svg] [--projection "a,..;b,.."]
//
// Exit status: 0 success, 2 invalid input, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coxlim/cannon.hpp"
#include "coxlim/domain.hpp"
#include "coxlim/hilbert.hpp"
#include "coxlim/io.hpp"
#include "coxlim/limits.hpp"
#include "coxlim/render.hpp"
#include "coxlim/roots.hpp"
#include "json.hpp"

using namespace coxlim;
using io::fmt17;

namespace {

Vec parse_vec(const std::string& text, std::size_t n, const std::string& flag) {
  Vec v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || tok.find_first_not_of(" \t", used) != std::string::npos)
      throw ValidationError(flag + ": bad number '" + tok + "'");
    v.push_back(x);
  }
  if (v.size() != n)
    throw ValidationError(flag + ": expected " + std::to_string(n) + " coordinates, got " +
                          std::to_string(v.size()));
  return v;
}

std::vector<long> parse_longs(const std::string& text, const std::string& flag) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long x = 0;
    try {
      x = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || x < 1)
      throw ValidationError(flag + ": expected positive integers, got '" + tok + "'");
    out.push_back(x);
  }
  if (out.empty()) throw ValidationError(flag + ": empty list");
  return out;
}

// Writes to `path`, or to stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  out << text;
  if (!out) throw ValidationError(path + ": write failed");
}

std::string indices_str(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k] + 1);
  return s + "}";
}

int cmd_analyze(const std::string& file, bool as_json) {
  const CoxeterSystem sys = io::load_system(file);
  const ActionClass ac = classify_action(sys);
  const auto cusps = ac.kind == ActionKind::WithCusps ? cusp_detect(sys) : std::vector<Cusp>{};

  if (as_json) {
    nlohmann::ordered_json doc;
    doc["rank"] = sys.rank();
    doc["signature"] = {sys.signature().pos, sys.signature().neg, sys.signature().zero};
    doc["irreducible"] = true;
    doc["lambda"] = sys.neg_eigenvalue();
    doc["base_point"] = sys.base_point();
    doc["action"] = to_string(ac.kind);
    doc["hypothesis"] = ac.hypothesis_ok ? "holds" : "fails";
    doc["cusp_ranks"] = ac.cusp_ranks;
    auto subs = nlohmann::ordered_json::array();
    for (const auto& e : ac.subsystems) {
      nlohmann::ordered_json s;
      std::vector<std::size_t> one;
      for (auto i : e.indices) one.push_back(i + 1);
      s["indices"] = one;
      s["signature"] = {e.signature.pos, e.signature.neg, e.signature.zero};
      s["type"] = to_string(e.type);
      s["minimal_affine"] = e.minimal_affine;
      subs.push_back(std::move(s));
    }
    doc["subsystems"] = subs;
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : cusps) {
      std::vector<std::size_t> one;
      for (auto i : c.indices) one.push_back(i + 1);
      cs.push_back({{"indices", one}, {"point", c.point}});
    }
    doc["cusps"] = cs;
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "signature " << sys.signature().str() << "; " << to_string(ac.kind)
            << "; hypothesis: " << (ac.hypothesis_ok ? "holds" : "fails") << "\n";
  std::cout << "rank " << sys.rank() << ", irreducible\n";
  std::cout << "lambda " << fmt17(sys.neg_eigenvalue()) << "\n";
  std::cout << "o " << format_vec(sys.base_point(), 12) << "\n";
  std::cout << "subsystems:\n";
  for (const auto& e : ac.subsystems) {
    std::cout << "  " << indices_str(e.indices) << "  " << e.signature.str() << "  "
              << to_string(e.type) << (e.minimal_affine ? "  (minimal affine)" : "") << "\n";
  }
  for (const auto& c : cusps)
    std::cout << "cusp " << indices_str(c.indices) << " " << format_vec(c.point, 12) << "\n";
  return 0;
}

int cmd_roots(const std::string& file, std::size_t depth, const std::string& format,
              const std::string& out) {
  const io::Format f = io::parse_format(format);
  const CoxeterSystem sys = io::load_system(file);
  const RootCloud cloud = enumerate_roots(sys, depth);
  std::vector<io::PointRecord> rows;
  for (const auto& c : cloud.normalized) {
    const Root& r = cloud.roots[c.root];
    rows.push_back({c.depth, r.word.str() + "|a" + std::to_string(r.simple + 1), c.point,
                    q(sys, c.point)});
  }
  std::ostringstream os;
  io::write_points(os, rows, f);
  emit(out, os.str());
  return 0;
}

int cmd_limitset(const std::string& file, std::size_t depth, const std::string& format,
                 const std::string& out) {
  const io::Format f = io::parse_format(format);
  const CoxeterSystem sys = io::load_system(file);
  const Ball ball = enumerate_ball(sys, depth);
  std::vector<io::PointRecord> rows;
  for (std::size_t k = 0; k < ball.levels.size(); ++k)
    for (const auto& g : ball.levels[k]) {
      const Vec p = normalized_act(sys, g.matrix, sys.base_point());
      rows.push_back({k, g.word.str(), p, q(sys, p)});
    }
  std::ostringstream os;
  io::write_points(os, rows, f);
  emit(out, os.str());
  return 0;
}

int cmd_dist(const std::string& file, const std::string& xs, const std::string& ys) {
  const CoxeterSystem sys = io::load_system(file);
  const Vec x = normalize(sys, parse_vec(xs, sys.rank(), "--x"));
  const Vec y = normalize(sys, parse_vec(ys, sys.rank(), "--y"));
  for (const auto& [name, p] : {std::pair{"--x", &x}, std::pair{"--y", &y}})
    if (contains_D(sys, *p) != Region::Interior)
      throw ValidationError(std::string(name) + " is not an interior point of the domain (q = " +
                            fmt17(q(sys, *p)) + ")");
  std::cout << "x " << format_vec(x, 12) << "\n";
  std::cout << "y " << format_vec(y, 12) << "\n";
  if (euclid_dist(x, y) == 0.0) {
    std::cout << "distance 0\n";
    return 0;
  }
  const BoundaryPair bp = boundary_hits(sys, x, y);
  std::cout << "a " << format_vec(bp.a, 12) << "\n";
  std::cout << "b " << format_vec(bp.b, 12) << "\n";
  std::cout << "distance " << fmt17(dist(sys, x, y)) << "\n";
  return 0;
}

int cmd_ct(const std::string& file, const std::string& m_list, std::size_t depth,
           const std::string& target, std::size_t k) {
  const CoxeterSystem sys = io::load_system(file);
  const std::vector<long> ms = parse_longs(m_list, "--m-list");
  const auto bonds = affine_bonds(sys);
  if (bonds.empty())
    throw ValidationError("no bond with B(alpha, beta) = -1: case (i) not applicable");

  const Vec xi = target.empty() ? default_target(sys)
                                : normalize(sys, parse_vec(target, sys.rank(), "--target"));
  if (contains_D(sys, xi, 1e-9) != Region::Boundary)
    throw ValidationError("--target must lie on the boundary conic (q = " + fmt17(q(sys, xi)) +
                          ")");
  const ShortSequence seq = short_sequence(sys, xi, depth);
  const IotaTable table = iota_decay_table(sys, seq, ms);

  std::cout << "target " << format_vec(xi, 12) << "\n";
  std::cout << "sequence " << seq.word(seq.size()).str() << " (length " << seq.size() << ")";
  if (seq.perturbed) std::cout << " [target nudged at a wall tie]";
  if (!seq.reduced) std::cout << " [not certified reduced]";
  std::cout << "\n";
  if (!seq.complete) std::cout << "stopped early: " << seq.note << "\n";

  std::cout << "k";
  for (long m : table.ms) std::cout << "\tm=" << m;
  std::cout << "\n";
  for (std::size_t row = 0; row < table.q.front().size(); ++row) {
    std::cout << row;
    for (const auto& col : table.q) std::cout << "\t" << fmt17(col[row]);
    std::cout << "\n";
  }
  std::cout << "sup";
  for (double s : table.sup) std::cout << "\t" << fmt17(s);
  std::cout << "\n";

  std::cout << "collision k=" << k << "\n";
  std::cout << "bond\tm\tunperturbed\tperturbed\toracle\n";
  for (const auto& [i, j] : bonds)
    for (long m : ms) {
      const CollisionReport r = dihedral_collision_demo(sys, i, j, k, m);
      std::cout << i + 1 << "," << j + 1 << "\t" << m << "\t" << fmt17(r.unperturbed) << "\t"
                << fmt17(r.perturbed) << "\t" << fmt17(r.oracle) << "\n";
    }
  return 0;
}

int cmd_render(const std::string& file, std::size_t depth, const std::string& out,
               const std::string& projection) {
  const CoxeterSystem sys = io::load_system(file);
  RenderOptions opts;
  opts.depth = depth;
  if (!projection.empty()) {
    if (sys.rank() != 4) throw ValidationError("--projection applies to rank 4 only");
    opts.projection = parse_projection(projection, sys.rank());
  }
  emit(out, render_svg(sys, opts));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter groups of type (n-1,1): Hilbert geometry, roots and limit sets"};
  app.require_subcommand(1);

  std::string file, format = "json", out, xs, ys, m_list = "10,100,1000", target, projection;
  std::size_t depth = 6, ct_depth = 40, k = 200, render_depth = 6;
  bool as_json = false;

  auto* analyze = app.add_subcommand("analyze", "signature, subsystems and action type");
  analyze->add_option("file", file, "system JSON file")->required();
  analyze->add_flag("--json", as_json, "machine-readable report");

  auto* roots = app.add_subcommand("roots", "normalized roots up to a depth");
  auto* limitset = app.add_subcommand("limitset", "orbit of o up to a word length");
  for (auto* sub : {roots, limitset}) {
    sub->add_option("file", file, "system JSON file")->required();
    sub->add_option("--depth", depth, "maximal depth")->required();
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out, "output path (default stdout)");
  }

  auto* distc = app.add_subcommand("dist", "Hilbert distance between two points");
  distc->add_option("file", file, "system JSON file")->required();
  distc->add_option("--x", xs, "first point, comma separated")->required();
  distc->add_option("--y", ys, "second point, comma separated")->required();

  auto* ct = app.add_subcommand("ct", "perturbation decay table and collision report");
  ct->add_option("file", file, "system JSON file")->required();
  ct->add_option("--m-list", m_list, "perturbation parameters");
  ct->add_option("--depth", ct_depth, "length of the short sequence");
  ct->add_option("--target", target, "boundary point (default: near the first cusp)");
  ct->add_option("--k", k, "dihedral power for the collision report");

  auto* render = app.add_subcommand("render", "SVG picture of roots and orbit");
  render->add_option("file", file, "system JSON file")->required();
  render->add_option("--depth", render_depth, "maximal depth");
  render->add_option("--out", out, "SVG path (default stdout)");
  render->add_option("--projection", projection, "rank 4: two vectors \"a,b,c,d;e,f,g,h\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(file, as_json);
    if (*roots) return cmd_roots(file, depth, format, out);
    if (*limitset) return cmd_limitset(file, depth, format, out);
    if (*distc) return cmd_dist(file, xs, ys);
    if (*ct) return cmd_ct(file, m_list, ct_depth, target, k);
    if (*render) return cmd_render(file, render_depth, out, projection);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
