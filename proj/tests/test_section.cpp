#include <random>

#include "complexes.hpp"
#include "critspec/complex/group_maps.hpp"
#include "critspec/section/section_model.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace critspec;
using namespace testing_complexes;
namespace fx = testing_fixtures;

namespace {

SectionModel model_of(const LeveledComplex& lc, Coefficients ring = Coefficients::integers(),
                      std::vector<Rational> extra = {}) {
  return SectionModel(lc, critical_values(lc), ring, std::move(extra));
}

// The cycle in the critical fiber represented by a coordinate column.
std::vector<Integer> cycle_of(const HomologyPresentation& h, const IntegerMatrix& column) {
  std::vector<Integer> z(h.chain_rank);
  column.for_each([&](std::size_t r, std::size_t, const Integer& x) {
    for (std::size_t k = 0; k < z.size(); ++k) z[k] += x * h.generators[r].cycle[k];
  });
  return z;
}

bool is_unimodular(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return analyze_map(m, AbelianGroup::free(m.cols()), AbelianGroup::free(m.rows()), Coefficients::integers())
      .is_isomorphism();
}

}  // namespace

TEST_CASE("section_space_homology examples") {
  const auto torus = model_of(fx::instance("upright_torus"));
  CHECK(torus.section_space_homology(1, 0).free_rank == 2);
  CHECK(torus.section_space_homology(0, 1).free_rank == 1);
  CHECK(torus.midpoint_fiber(1).components.count() == 2);

  const auto edge = model_of(fx::instance("edge"));
  CHECK(edge.section_space_homology(0, 0).free_rank == 1);
}

TEST_CASE("induced_endpoint_map examples on the upright torus") {
  const auto torus = model_of(fx::instance("upright_torus"));
  const auto up = torus.induced_endpoint_map(0, Endpoint::Upper, 1);
  REQUIRE(up.matrix.rows() == 2);
  REQUIRE(up.matrix.cols() == 1);
  // The midpoint circle goes to the sum of both loops of the figure eight:
  // every edge of the fiber is covered exactly once.
  const auto& fiber = torus.critical_fiber(1);
  CHECK(fiber.complex.complex.complex.size(1) == 6);
  const auto z = cycle_of(fiber.homology[1], up.matrix);
  for (const auto& x : z) CHECK(abs(x) == 1);

  const auto down = torus.induced_endpoint_map(0, Endpoint::Lower, 1);
  CHECK(down.matrix.rows() == 0);
  CHECK(down.matrix.cols() == 1);
  CHECK(down.codomain.is_zero());
}

TEST_CASE("endpoint maps of a prism are invertible") {
  // Cylinder over a triangle boundary: bottom 0,1,2 at 0, top 3,4,5 at 1.
  std::vector<Simplex> top;
  for (unsigned i = 0; i < 3; ++i) {
    const unsigned j = (i + 1) % 3;
    top.push_back({std::min(i, j), std::max(i, j), j + 3});
    Simplex s{i, i + 3, j + 3};
    std::sort(s.begin(), s.end());
    top.push_back(s);
  }
  for (auto& s : top) std::sort(s.begin(), s.end());
  const auto lc = LeveledComplex::from(closure(6, top), {0, 0, 0, 1, 1, 1});
  const auto m = model_of(lc);
  for (int q = 0; q <= 1; ++q) {
    for (auto e : {Endpoint::Lower, Endpoint::Upper}) {
      const auto map = m.induced_endpoint_map(0, e, q).matrix;
      CHECK(map.rows() == 1);
      CHECK(is_unimodular(map));
    }
  }
}

TEST_CASE("d1_block examples") {
  const auto edge = model_of(fx::instance("edge"));
  CHECK(edge.d1_block(0, 0) == IntegerMatrix::from_rows({{-1}, {1}}));

  const auto arcs = model_of(fx::instance("circle_two_arcs"));
  CHECK(arcs.d1_block(0, 0) == IntegerMatrix::from_rows({{-1, -1}, {1, 1}}));
}

TEST_CASE("degree zero maps agree with union-find on the slabs") {
  std::mt19937 rng(31);
  std::vector<LeveledComplex> cases;
  for (const auto& name : fx::all()) cases.push_back(fx::instance(name));
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 6;
    cases.push_back(LeveledComplex::from(random_complex(rng, n, 2, 0.3), random_values(rng, n)));
  }
  for (const auto& lc : cases) {
    const auto m = model_of(lc);
    for (std::size_t gap = 0; gap < m.gap_count(); ++gap) {
      for (auto e : {Endpoint::Lower, Endpoint::Upper}) {
        const auto matrix = m.induced_endpoint_map(gap, e, 0).matrix;
        const auto comps = m.component_endpoints(gap, e);
        REQUIRE(matrix.cols() == comps.size());
        for (std::size_t k = 0; k < comps.size(); ++k) {
          std::vector<Integer> expected(matrix.rows());
          expected[comps[k]] = 1;
          CHECK(matrix.column(k) == expected);
        }
      }
    }
  }
}

TEST_CASE("endpoint maps agree over the integers and the rationals") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const auto lc = LeveledComplex::from(random_complex(rng, n, 2, 0.35), injective_values(rng, n));
    const auto z = model_of(lc);
    const auto qq = model_of(lc, Coefficients::rationals());
    for (std::size_t gap = 0; gap < z.gap_count(); ++gap) {
      for (int q = 0; q <= z.top_degree(); ++q) {
        for (auto e : {Endpoint::Lower, Endpoint::Upper}) {
          CHECK(z.induced_endpoint_map(gap, e, q).matrix == qq.induced_endpoint_map(gap, e, q).matrix);
        }
      }
    }
  }
}

TEST_CASE("transport through an intermediate level composes") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const auto lc = LeveledComplex::from(random_complex(rng, n, 2, 0.4), injective_values(rng, n));
    const auto labels = critical_values(lc);
    if (labels.size() < 2) continue;
    const std::size_t gap = trial % labels.gap_count();
    // three levels strictly inside one gap
    const Rational width = labels[gap + 1] - labels[gap];
    std::vector<Rational> levels;
    for (int k : {1, 2, 3}) {
      Rational x = labels[gap] + width * Rational(k, 5);
      x.canonicalize();
      levels.push_back(x);
    }
    const auto m = model_of(lc, Coefficients::integers(), levels);
    for (int q = 0; q <= m.top_degree(); ++q) {
      const auto direct = m.transport(levels[0], levels[2], q);
      const auto composed = m.transport(levels[1], levels[2], q) * m.transport(levels[0], levels[1], q);
      CHECK(direct == composed);
      // and down to the lower label
      const auto down = m.transport(levels[0], labels[gap], q);
      CHECK(down == m.transport(levels[1], labels[gap], q) * m.transport(levels[0], levels[1], q));
    }
  }
}

TEST_CASE("transport across a critical level is refused") {
  const auto lc = fx::instance("upright_torus");
  const auto m = model_of(lc);
  // the circle below the saddle does not carry the pair of pants
  CHECK_THROWS_AS(m.transport(Rational(3, 2), Rational(1, 2), 1), NotReeb);
  CHECK_NOTHROW(m.transport(Rational(1, 2), Rational(3, 2), 1));
  CHECK_THROWS_AS(m.transport(Rational(1, 3), Rational(1, 2), 0), std::invalid_argument);
}

TEST_CASE("every fixture passes the Reeb check") {
  for (const auto& name : fx::all()) {
    CAPTURE(name);
    CHECK_NOTHROW(model_of(fx::instance(name)).check_reeb());
  }
}

TEST_CASE("section model preconditions") {
  const auto lc = fx::instance("edge");
  CHECK_THROWS_AS(SectionModel(lc, CriticalSequence({0}), Coefficients::integers()), std::invalid_argument);
  CHECK_THROWS_AS(SectionModel(LeveledComplex::from(SimplicialComplex(), {}), CriticalSequence({0}),
                               Coefficients::integers()),
                  std::invalid_argument);
}
