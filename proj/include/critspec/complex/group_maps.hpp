#pragma once

#include <optional>
#include <span>
#include <vector>

#include "critspec/complex/homology.hpp"
#include "critspec/complex/integer_matrix.hpp"
#include "critspec/complex/smith.hpp"

namespace critspec {

// Finitely generated groups are given in torsion-first generator coordinates
// (see relation_matrix); homomorphisms are integer matrices in those
// coordinates, well defined modulo the relations.

// R^rows / im(m).
AbelianGroup cokernel_group(const IntegerMatrix& m, const Coefficients& ring);

// Columns span ker(m). Over the integers the basis is saturated: it extends
// to a basis of the whole lattice.
IntegerMatrix kernel_basis(const IntegerMatrix& m, const Coefficients& ring);

// im(generators) / im(relations), requiring im(relations) inside im(generators).
AbelianGroup subquotient(const IntegerMatrix& generators, const IntegerMatrix& relations,
                         const Coefficients& ring);

struct MapSummary {
  AbelianGroup kernel;
  AbelianGroup cokernel;
  bool is_isomorphism() const { return kernel.is_zero() && cokernel.is_zero(); }
};

// Throws std::invalid_argument if phi does not respect the relations.
MapSummary analyze_map(const IntegerMatrix& phi, const AbelianGroup& domain,
                       const AbelianGroup& codomain, const Coefficients& ring);

// Same with explicit relation matrices (one column per relation), e.g. the
// block-diagonal presentation of a direct sum. Relations are ignored over
// fields.
MapSummary analyze_map(const IntegerMatrix& phi, const IntegerMatrix& domain_relations,
                       const IntegerMatrix& codomain_relations, const Coefficients& ring);

// Block-diagonal relations of a direct sum, each summand in torsion-first
// coordinates.
IntegerMatrix relation_matrix(std::span<const AbelianGroup> summands);

// Solves phi * x = y modulo the codomain relations, with x reduced modulo the
// domain relations. Over the rationals only integral solutions are found,
// which suffices for maps that are integral isomorphisms on free parts.
class GroupMapSolver {
 public:
  GroupMapSolver(const IntegerMatrix& phi, const AbelianGroup& domain, const AbelianGroup& codomain,
                 const Coefficients& ring);

  std::optional<std::vector<Integer>> solve(std::span<const Integer> y) const;

 private:
  Coefficients ring_;
  AbelianGroup domain_;
  std::size_t codomain_size_;
  SmithDecomposition snf_;
};

}  // namespace critspec
