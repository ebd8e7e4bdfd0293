#pragma once

#include <string>
#include <vector>

#include "critspec/section/section_model.hpp"

namespace critspec {

struct ReebVertex {
  std::size_t level = 0;      // critical index i
  std::size_t component = 0;  // component of the fiber at c_i
  Rational value;
  std::string label() const;  // "c{i}#{k}"
};

struct ReebEdge {
  std::size_t gap = 0;        // between c_i and c_{i+1}
  std::size_t component = 0;  // component of the midpoint fiber
  std::size_t source = 0;     // vertex at c_i
  std::size_t target = 0;     // vertex at c_{i+1}
  std::string label() const;  // "g{i}#{k}"
};

// Vertices are fiber components at the labels, edges are section-space
// components; ids are dense in (level, component) and (gap, component) order.
struct ReebGraph {
  std::vector<ReebVertex> vertices;
  std::vector<ReebEdge> edges;

  // Accepts a numeric id or a label. Throws std::invalid_argument.
  std::size_t vertex(const std::string& token) const;
  std::size_t edge(const std::string& token) const;
};

ReebGraph build_reeb_graph(const SectionModel& model);

struct ReebBetti {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
};

ReebBetti reeb_betti(const ReebGraph& g);

struct Letter {
  std::size_t edge = 0;
  int sign = +1;  // +1 traverses source -> target
  friend bool operator==(const Letter&, const Letter&) = default;
};

// A path in the graph starting at `basepoint`.
struct SignedWord {
  std::size_t basepoint = 0;
  std::vector<Letter> letters;
  friend bool operator==(const SignedWord&, const SignedWord&) = default;
};

// End vertex of the path; throws std::invalid_argument unless every letter
// starts where the previous one ended.
std::size_t word_end(const ReebGraph& g, const SignedWord& w);

// Cancels adjacent (e,+)(e,-) and (e,-)(e,+) pairs until none remain.
SignedWord reduce_word(const ReebGraph& g, const SignedWord& w);
SignedWord inverse(const ReebGraph& g, const SignedWord& w);
// Throws std::invalid_argument if b does not start where a ends.
SignedWord concatenate(const ReebGraph& g, const SignedWord& a, const SignedWord& b);
bool is_reduced(const SignedWord& w);

// Number of maximal blocks of equal sign: monotone runs in the level
// direction.
std::size_t run_length(const SignedWord& w);

// One reduced loop per non-tree edge of the breadth-first spanning tree of
// the basepoint's component (neighbours visited by vertex id), in edge order.
std::vector<SignedWord> pi1_generators(const ReebGraph& g, std::size_t basepoint);

// "g0#0+ g1#1-"; the empty word prints as "1".
std::string to_string(const ReebGraph& g, const SignedWord& w);
// Parses the same syntax; edges by label or numeric id.
SignedWord parse_word(const ReebGraph& g, const std::string& text, std::size_t basepoint);

std::string to_dot(const ReebGraph& g);

}  // namespace critspec
