#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "critspec/complex/integer_matrix.hpp"

namespace critspec {

// Vertices are dense indices 0..n-1; the numeric order is the global vertex
// order from which simplex orientation and subdivision order derive.
using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;  // strictly increasing

std::string to_string(const Simplex& s);

struct ComplexViolation {
  enum class Kind { EmptySimplex, VertexOutOfRange, NotIncreasing, Duplicate, MissingFace };
  Kind kind;
  Simplex simplex;
  Simplex face;  // only for MissingFace
  std::string message() const;
};

// First violation in input order; missing faces are reported in lexicographic
// order of the face. Vertices (0-simplices) are implicit and never missing.
std::optional<ComplexViolation> validate_complex(std::size_t vertex_count,
                                                 std::span<const Simplex> simplices);

class InvalidComplex : public std::runtime_error {
 public:
  explicit InvalidComplex(ComplexViolation violation)
      : std::runtime_error(violation.message()), violation_(std::move(violation)) {}
  const ComplexViolation& violation() const { return violation_; }

 private:
  ComplexViolation violation_;
};

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Throws InvalidComplex if the list is not closed under faces.
  SimplicialComplex(std::size_t vertex_count, std::span<const Simplex> simplices);

  // Adds every missing face; only range and ordering are checked.
  static SimplicialComplex closure_of(std::size_t vertex_count, std::span<const Simplex> simplices);

  std::size_t vertex_count() const { return vertex_count_; }
  bool empty() const { return vertex_count_ == 0; }
  // -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t size(int q) const;
  std::span<const Simplex> simplices(int q) const;
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  std::size_t total_size() const;

  // Maximal subcomplex spanned by the vertices where keep[v] is true,
  // relabelled densely in increasing order. `vertex_map` receives the
  // original id of each new vertex.
  SimplicialComplex induced_subcomplex(const std::vector<bool>& keep,
                                       std::vector<Vertex>* vertex_map = nullptr) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.by_dim_ == b.by_dim_;
  }

 private:
  void build(std::vector<Simplex> simplices);

  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;  // each sorted lexicographically
};

// Columns: q-simplices, rows: (q-1)-simplices, both in lexicographic order.
// The face omitting position i carries sign (-1)^i. Rejects q = 0.
IntegerMatrix boundary_matrix(const SimplicialComplex& c, int q);

}  // namespace critspec
