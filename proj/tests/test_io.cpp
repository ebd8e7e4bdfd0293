#include <random>

#include "complexes.hpp"
#include "critspec/io/formats.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace critspec;
using namespace testing_complexes;
namespace fx = testing_fixtures;
using nlohmann::json;

namespace {

std::string instance_text(const json& vertices, const json& simplices, json extra = json::object()) {
  json j{{"format", "critspec-instance"}, {"version", 1}, {"vertices", vertices}, {"simplices", simplices}};
  j.update(extra);
  return j.dump();
}

InputError::Kind error_kind(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InputError& e) {
    return e.kind();
  }
  FAIL("accepted: " << text);
  return InputError::Kind::Io;
}

std::string error_message(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

void check_same(const E1Page& a, const E1Page& b) {
  CHECK(a.ring == b.ring);
  REQUIRE(a.degrees.size() == b.degrees.size());
  for (std::size_t q = 0; q < a.degrees.size(); ++q) {
    CHECK(a.degrees[q].q == b.degrees[q].q);
    CHECK(a.degrees[q].levels == b.degrees[q].levels);
    CHECK(a.degrees[q].gaps == b.degrees[q].gaps);
    CHECK(a.degrees[q].differential == b.degrees[q].differential);
  }
}

}  // namespace

TEST_CASE("a single vertex") {
  const auto inst = parse_instance(instance_text({{{"id", 7}, {"value", "3/2"}}}, json::array()));
  CHECK(inst.ids == std::vector<long long>{7});
  CHECK(inst.lc.complex.size(0) == 1);
  CHECK(inst.lc.values[0] == Rational(3, 2));
}

TEST_CASE("vertices are ordered by id") {
  const auto inst = parse_instance(instance_text(
      {{{"id", 5}, {"value", "1"}}, {{"id", 2}, {"value", 4}}, {{"id", 9}, {"value", "-2/6"}}}, {{9, 2}, {5, 9}}));
  CHECK(inst.ids == std::vector<long long>{2, 5, 9});
  CHECK(inst.lc.values == std::vector<Rational>{Rational(4), Rational(1), Rational(-1, 3)});
  CHECK(inst.lc.complex.size(1) == 2);
}

TEST_CASE("schema errors") {
  const json one{{{"id", 0}, {"value", "0"}}};
  const json two{{{"id", 0}, {"value", "0"}}, {{"id", 1}, {"value", "1"}}};
  CHECK(error_kind(instance_text(two, {{0, 4}})) == InputError::Kind::Parse);
  CHECK(error_kind(instance_text({{{"id", 0}, {"value", "0"}}, {{"id", 0}, {"value", "1"}}}, json::array())) ==
        InputError::Kind::Parse);
  CHECK(error_kind(instance_text({{{"id", 0}, {"value", "1/0"}}}, json::array())) == InputError::Kind::Parse);
  CHECK(error_kind(instance_text({{{"id", 0}, {"value", 0.5}}}, json::array())) == InputError::Kind::Parse);
  CHECK(error_kind(instance_text({{{"id", 0}, {"value", "x"}}}, json::array())) == InputError::Kind::Parse);
  CHECK(error_kind(instance_text(one, json::array(), {{"version", 2}})) == InputError::Kind::Parse);
  CHECK(error_kind(instance_text(one, json::array(), {{"format", "other"}})) == InputError::Kind::Parse);
  CHECK(error_kind(R"({"format": "critspec-instance", "version": 1, "vertices": []})") == InputError::Kind::Parse);
  CHECK(error_kind(instance_text(two, {{0, 0}})) == InputError::Kind::Parse);

  CHECK(error_message(instance_text({{{"id", 0}, {"value", "abc"}}}, json::array())).find("vertices[0].value") !=
        std::string::npos);
  CHECK(error_message("{\n\"format\": \"critspec-instance\",\n\"version\": 1,\n\"vertices\": [,]\n}").find("line 4") !=
        std::string::npos);
}

TEST_CASE("faces must be present unless closure is requested") {
  const json three{{{"id", 10}, {"value", "0"}}, {{"id", 11}, {"value", "1"}}, {{"id", 12}, {"value", "2"}}};
  const auto text = instance_text(three, {{10, 11, 12}, {10, 11}, {11, 12}});
  CHECK(error_kind(text) == InputError::Kind::Validation);
  // reported in the file's own ids
  CHECK(error_message(text).find("[10,12]") != std::string::npos);

  const auto closed = parse_instance(instance_text(three, {{10, 11, 12}}, {{"close_faces", true}}));
  CHECK(closed.lc.complex == triangle());
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), InputError);
}

TEST_CASE("instance round trip") {
  std::mt19937 rng(83);
  std::vector<Instance> cases;
  for (const auto& name : fx::all()) cases.push_back(fx::load(name));
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 1 + rng() % 9;
    Instance inst{LeveledComplex::from(random_complex(rng, n, 3, 0.4), random_values(rng, n)), {}};
    for (std::size_t v = 0; v < n; ++v) inst.ids.push_back(static_cast<long long>(3 * v + 1));
    cases.push_back(inst);
  }
  for (const auto& inst : cases) {
    const auto j = instance_to_json(inst);
    for (const auto& v : j["vertices"]) CHECK(v["value"].is_string());
    const auto back = parse_instance(j.dump());
    CHECK(back.ids == inst.ids);
    CHECK(back.lc.complex == inst.lc.complex);
    CHECK(back.lc.values == inst.lc.values);
  }
}

TEST_CASE("the torus fixture") {
  const auto inst = fx::load("upright_torus");
  CHECK(inst.lc.complex.size(0) == 14);
  CHECK(critical_values(inst.lc).size() == 4);
  CHECK(inst.lc.complex.dimension() == 2);
}

TEST_CASE("first page files") {
  const auto page = load_e1(std::string(CRITSPEC_FIXTURE_DIR) + "/upright_torus.e1.json");
  CHECK(page.ring == Coefficients::integers());
  REQUIRE(page.degrees.size() == 2);
  CHECK(page.degrees[0].rows() == 4);
  check_same(parse_e1(e1_to_json(page).dump()), page);

  std::mt19937 rng(89);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + rng() % 7;
    const auto lc = LeveledComplex::from(random_complex(rng, n, 2, 0.4), random_values(rng, n));
    for (const auto& ring : {Coefficients::integers(), Coefficients::prime_field(5)}) {
      const auto built = build_e1(SectionModel(lc, critical_values(lc), ring));
      check_same(parse_e1(e1_to_json(built).dump()), built);
    }
  }

  auto j = e1_to_json(page);
  j["degrees"][0]["differential"].push_back(j["degrees"][0]["differential"][0]);
  CHECK_THROWS_AS(parse_e1(j.dump()), InputError);
  j = e1_to_json(page);
  j["degrees"][0]["differential"].push_back({9, 0, 1});
  CHECK_THROWS_AS(parse_e1(j.dump()), InputError);
  j = e1_to_json(page);
  j["ring"] = "zp:4";
  CHECK_THROWS_AS(parse_e1(j.dump()), InputError);
}

TEST_CASE("report round trips") {
  const auto lc = fx::instance("upright_torus");
  const SectionModel model(lc, critical_values(lc), Coefficients::integers());
  const auto e2 = compute_e2(build_e1(model));
  const auto e2b = e2_from_json(e2_to_json(e2));
  REQUIRE(e2b.degrees.size() == e2.degrees.size());
  for (std::size_t q = 0; q < e2.degrees.size(); ++q) {
    CHECK(e2b.degrees[q].e0 == e2.degrees[q].e0);
    CHECK(e2b.degrees[q].e1 == e2.degrees[q].e1);
  }

  const AbelianGroup g{2, {Integer(2), Integer(6)}};
  CHECK(group_from_json(group_to_json(g, Coefficients::integers())) == g);

  const auto h = spectral_homology(lc, Coefficients::integers()).homology;
  const auto hb = homology_from_json(homology_to_json(h));
  CHECK(hb.groups() == h.groups());
  CHECK(hb.to_string() == "H0=Z H1=Z^2 H2=Z");

  const auto graph = build_reeb_graph(model);
  const auto gb = reeb_from_json(reeb_to_json(graph));
  REQUIRE(gb.edges.size() == graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    CHECK(gb.edges[e].source == graph.edges[e].source);
    CHECK(gb.edges[e].target == graph.edges[e].target);
    CHECK(gb.edges[e].label() == graph.edges[e].label());
  }
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) CHECK(gb.vertices[v].value == graph.vertices[v].value);
}
