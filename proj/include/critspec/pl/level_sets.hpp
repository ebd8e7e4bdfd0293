#pragma once

#include <span>
#include <vector>

#include "critspec/complex/integer_matrix.hpp"
#include "critspec/pl/leveled_complex.hpp"

namespace critspec {

// Cuts every simplex straddling `a` into pieces lying on one side. Crossing
// vertices are appended after the existing ones, ordered by their source
// edge; both pieces are triangulated by the staircase rule so that shared
// faces agree.
LeveledComplex subdivide_at(const LeveledComplex& lc, const Rational& a);

// Subdivides at each level in turn.
LeveledComplex refine(const LeveledComplex& lc, std::span<const Rational> levels);

// Full subcomplex of an ambient complex with the ambient id of each vertex.
struct Subcomplex {
  LeveledComplex complex;
  std::vector<Vertex> embedding;  // increasing
};

// Full subcomplex on the vertices with value in [lo, hi]. Only meaningful when
// `ambient` is already subdivided at lo and hi.
Subcomplex restrict_to(const LeveledComplex& ambient, const Rational& lo, const Rational& hi);

struct LevelSet {
  LeveledComplex ambient;  // subdivide_at(lc, a)
  Subcomplex fiber;
};

LevelSet level_set(const LeveledComplex& lc, const Rational& a);

struct Slab {
  LeveledComplex ambient;  // subdivided at a and b
  Subcomplex slab;
  Subcomplex lower;  // fiber at a
  Subcomplex upper;  // fiber at b
};

// Throws std::invalid_argument if a > b.
Slab slab(const LeveledComplex& lc, const Rational& a, const Rational& b);

// Chain map on q-simplices induced by the inclusion of `from` into `to`; both
// must be subcomplexes of the same ambient complex with from inside to.
IntegerMatrix inclusion_map(const Subcomplex& from, const Subcomplex& to, int q);

struct FiberComponents {
  Rational level;
  std::vector<std::size_t> label;       // per fiber vertex
  std::vector<Vertex> representatives;  // smallest vertex of each class
  std::size_t count() const { return representatives.size(); }
};

FiberComponents fiber_components(const LeveledComplex& fiber, const Rational& level);

}  // namespace critspec
