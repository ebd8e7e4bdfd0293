#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "critspec/complex/integer_matrix.hpp"
#include "critspec/complex/simplicial_complex.hpp"

namespace critspec {

enum class Ring { Integers, Rationals, PrimeField };

struct Coefficients {
  Ring ring = Ring::Integers;
  std::uint32_t prime = 0;

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {Ring::Rationals, 0}; }
  static Coefficients prime_field(std::uint32_t p);
  // "z", "q" or "zp:<p>"
  static Coefficients parse(std::string_view tag);

  std::string tag() const;
  bool is_field() const { return ring != Ring::Integers; }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

// Finitely generated module over the coefficient ring: free part plus torsion
// coefficients (> 1, divisibility order). Torsion is always empty over fields.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  std::size_t generator_count() const { return free_rank + torsion.size(); }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  std::string to_string(const Coefficients& ring = {}) const;

  static AbelianGroup free(std::size_t rank) { return {rank, {}}; }
  static AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

// Generators are ordered torsion first (divisibility order), then free. The
// relation matrix has one column per torsion generator with its order on
// the diagonal.
IntegerMatrix relation_matrix(const AbelianGroup& g);

enum class GeneratorKind { Torsion, Free };

struct HomologyGenerator {
  std::vector<Integer> cycle;  // coefficients over the q-simplices
  GeneratorKind kind = GeneratorKind::Free;
  Integer order = 0;  // torsion order, 0 for free generators
};

// H_q with a tracked cycle basis and a coordinate map: for any q-cycle z,
// z is homologous to sum_i express(z)_i * generators[i].
class HomologyPresentation {
 public:
  Coefficients ring;
  int degree = 0;
  std::size_t chain_rank = 0;  // number of q-simplices
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::vector<HomologyGenerator> generators;
  IntegerMatrix coordinates;  // generators.size() x chain_rank

  AbelianGroup group() const { return {free_rank, torsion}; }
  std::size_t size() const { return generators.size(); }
  // Coordinates of a cycle, torsion entries reduced into [0, order) and
  // every entry reduced mod p over a prime field.
  std::vector<Integer> express(std::span<const Integer> cycle) const;
};

HomologyPresentation homology(const SimplicialComplex& c, int q, const Coefficients& ring);

// Reduces every entry into [0, p).
IntegerMatrix reduce_mod(const IntegerMatrix& m, std::uint32_t p);
void reduce_mod(std::vector<Integer>& v, std::uint32_t p);

}  // namespace critspec
