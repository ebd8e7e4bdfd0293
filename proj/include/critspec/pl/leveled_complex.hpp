#pragma once

#include <span>
#include <vector>

#include "critspec/complex/numbers.hpp"
#include "critspec/complex/simplicial_complex.hpp"

namespace critspec {

// Rational value per vertex, extended affinely over each simplex.
using VertexFunction = std::vector<Rational>;

// Where a vertex of a subdivided complex came from. Originals keep their
// index through every subdivision, so `a` and `b` stay valid in descendants.
struct Provenance {
  enum class Kind { Original, Crossing };
  Kind kind = Kind::Original;
  Vertex a = 0;  // original: the vertex itself; crossing: lower endpoint id
  Vertex b = 0;  // crossing: upper endpoint id (a < b)
  Rational level;

  static Provenance original(Vertex v) { return {Kind::Original, v, v, {}}; }
  static Provenance crossing(Vertex u, Vertex v, const Rational& at) { return {Kind::Crossing, u, v, at}; }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct LeveledComplex {
  SimplicialComplex complex;
  VertexFunction values;
  std::vector<Provenance> provenance;

  // Every vertex marked original. Throws std::invalid_argument when the value
  // count does not match the vertex count.
  static LeveledComplex from(SimplicialComplex complex, VertexFunction values);

  std::size_t vertex_count() const { return complex.vertex_count(); }
  const Rational& value(Vertex v) const { return values[v]; }
};

// Strictly increasing labels c_0 < ... < c_k with midpoints between
// successive labels. Produced from the distinct vertex values; extra regular
// levels may be inserted afterwards.
class CriticalSequence {
 public:
  CriticalSequence() = default;
  // Sorts and deduplicates.
  explicit CriticalSequence(std::vector<Rational> values);

  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::size_t gap_count() const { return values_.empty() ? 0 : values_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational midpoint(std::size_t gap) const;
  std::vector<Rational> midpoints() const;

  // Throws std::invalid_argument if the level is already present.
  CriticalSequence with_level(const Rational& level) const;
  // True iff every vertex value appears.
  bool covers(const VertexFunction& f) const;

 private:
  std::vector<Rational> values_;
};

// The sorted distinct vertex values: a superset of the critical values.
CriticalSequence critical_values(const LeveledComplex& lc);

}  // namespace critspec
