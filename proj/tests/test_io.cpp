#include <cstdlib>
#include <sstream>

#include "coxlim/instances.hpp"
#include "coxlim/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace coxlim;

namespace {

const std::string kData = COXLIM_DATA_DIR;

void check_same(const CoxeterSystem& a, const CoxeterSystem& b) {
  CHECK(a.coxeter() == b.coxeter());
  CHECK(a.infinity_weights() == b.infinity_weights());
  CHECK(a.gram() == b.gram());
  CHECK(a.base_point() == b.base_point());
  CHECK(a.options().zero_rel == b.options().zero_rel);
}

std::string error_of(const std::string& text) {
  try {
    io::parse_system(text, "t.json");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("bundled data files match the built-in instances") {
  for (const auto& named : instances::all()) {
    CAPTURE(named.name);
    check_same(io::load_system(kData + "/" + named.name + ".json"), named.make());
  }
}

TEST_CASE("emit and parse round trip bit for bit") {
  std::vector<CoxeterSystem> systems;
  for (const auto& named : instances::all()) systems.push_back(named.make());
  systems.push_back(instances::g2cusp_rank4(-1.2345678901234567));
  SystemOptions opts;
  opts.zero_rel = 3.3e-10;
  systems.push_back(CoxeterSystem::build(CoxeterMatrix({{1, 5, 0}, {5, 1, 4}, {0, 4, 1}}),
                                         {{{0, 2}, -1.0000000000000002}}, opts));
  for (const auto& sys : systems) {
    const std::string text = io::emit_system(sys);
    const CoxeterSystem back = io::parse_system(text);
    check_same(back, sys);
    CHECK(io::emit_system(back) == text);
  }
}

TEST_CASE("Gram-only input") {
  const CoxeterSystem sys = instances::triangle_237();
  nlohmann::json doc;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto row = sys.gram().matrix().row(i);
    doc["gram_matrix"].push_back(std::vector<double>(row.begin(), row.end()));
  }
  check_same(io::parse_system(doc.dump()), sys);
}

TEST_CASE("Coxeter and Gram matrices must agree") {
  const std::string text = R"({
    "coxeter_matrix": [[1, 0], [0, 1]],
    "infinity_weights": {"1,2": -1.5},
    "gram_matrix": [[1, -1.6], [-1.6, 1]]
  })";
  CHECK(error_of(text).find("disagree") != std::string::npos);
  const std::string ok = R"({
    "coxeter_matrix": [[1, 0], [0, 1]],
    "infinity_weights": {"1,2": -1.5},
    "gram_matrix": [[1, -1.5], [-1.5, 1]]
  })";
  check_same(io::parse_system(ok), instances::rank2_lorentzian());
}

TEST_CASE("validation messages carry context") {
  CHECK(error_of("{\n  \"coxeter_matrix\": [[1, 0],\n  [0 1]]\n}").find("line 3") !=
        std::string::npos);
  CHECK(error_of(R"({"coxeter_matrix": [[1, 3], [3, 1]], "colour": 1})").find("unknown field 'colour'") !=
        std::string::npos);
  CHECK(error_of(R"({"coxeter_matrix": [[1, 3], [3]]})").find("row 2") != std::string::npos);
  CHECK(error_of(R"({"coxeter_matrix": [[1, 2.5], [2.5, 1]]})").find("entry (1,2)") !=
        std::string::npos);
  CHECK(error_of(R"({"coxeter_matrix": [[1, 0], [0, 1]], "infinity_weights": {"1,2": -0.5}})")
            .find("must be <= -1") != std::string::npos);
  CHECK(error_of(R"({"coxeter_matrix": [[1, 0], [0, 1]], "infinity_weights": {"1;2": -2}})")
            .find("infinity_weights key") != std::string::npos);
  CHECK(error_of("[]").find("JSON object") != std::string::npos);
  CHECK(error_of("{}").find("need 'coxeter_matrix'") != std::string::npos);
  CHECK(error_of(R"({"coxeter_matrix": [[1, 3], [3, 1]], "zero_rel": -1})").find("zero_rel") !=
        std::string::npos);
  CHECK(error_of(R"({"coxeter_matrix": [[1, 3], [3, 1]]})").rfind("t.json: ", 0) == 0);
}

TEST_CASE("error types survive parsing") {
  CHECK_THROWS_AS(io::parse_system(R"({"coxeter_matrix": [[1, 3, 2], [3, 1, 3], [2, 3, 1]]})"),
                  SignatureError);
  try {
    io::parse_system(
        R"({"coxeter_matrix": [[1, 2, 0], [2, 1, 2], [0, 2, 1]], "infinity_weights": {"1,3": -2}})",
        "r.json");
    FAIL("expected ReducibleError");
  } catch (const ReducibleError& e) {
    CHECK(e.blocks.size() == 2);
    CHECK(std::string(e.what()).rfind("r.json: ", 0) == 0);
    CHECK(std::string(e.what()).find("{1,3} {2}") != std::string::npos);
  }
  CHECK_THROWS_AS(io::load_system(kData + "/missing.json"), ValidationError);
}

TEST_CASE("point tables") {
  const std::vector<io::PointRecord> rows{{0, "e", {0.1, 1.0 / 3.0}, -0.25},
                                          {2, "1.2", {1e-300, -2.5}, 1.0}};
  std::ostringstream csv;
  io::write_points(csv, rows, io::Format::Csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "depth,word,coord_1,coord_2,q");
  std::getline(in, line);
  CHECK(line == "0,e,0.10000000000000001,0.33333333333333331,-0.25");
  std::getline(in, line);
  // 17 significant digits reproduce the double exactly.
  const std::string third = line.substr(line.find(',', line.find(',') + 1) + 1);
  CHECK(std::strtod(third.c_str(), nullptr) == 1e-300);

  std::ostringstream js;
  io::write_points(js, rows, io::Format::Json);
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc.size() == 2);
  CHECK(doc[1]["word"] == "1.2");
  CHECK(doc[0]["coords"][1].get<double>() == 1.0 / 3.0);
  CHECK(io::parse_format("csv") == io::Format::Csv);
  CHECK_THROWS_AS(io::parse_format("xml"), ValidationError);
}
