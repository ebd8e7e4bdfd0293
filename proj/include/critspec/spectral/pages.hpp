#pragma once

#include <optional>
#include <string>
#include <vector>

#include "critspec/complex/homology.hpp"
#include "critspec/section/section_model.hpp"

namespace critspec {

// One row of the first page: E1_{0,q} = sum over labels of H_q(critical
// fiber), E1_{1,q} = sum over gaps of H_q(section space), and the
// successive-pair differential between them. Summands keep their own
// torsion-first coordinates; the differential acts on the concatenation.
struct E1Degree {
  int q = 0;
  std::vector<AbelianGroup> levels;
  std::vector<AbelianGroup> gaps;
  IntegerMatrix differential;

  std::size_t level_offset(std::size_t i) const;
  std::size_t gap_offset(std::size_t i) const;
  std::size_t rows() const { return level_offset(levels.size()); }
  std::size_t cols() const { return gap_offset(gaps.size()); }
};

struct E1Page {
  Coefficients ring;
  std::vector<E1Degree> degrees;  // q = 0, 1, ... in order

  // Throws std::invalid_argument on shape or ring inconsistencies.
  void validate() const;
};

struct E2Degree {
  int q = 0;
  AbelianGroup e0;  // cokernel of the differential
  AbelianGroup e1;  // kernel of the differential
};

struct E2Page {
  Coefficients ring;
  std::vector<E2Degree> degrees;
};

enum class Extension { Split, Undetermined };

// H_n sits in 0 -> E2_{0,n} -> H_n -> E2_{1,n-1} -> 0. The sequence splits
// whenever E2_{1,n-1} is free, which is always the case for pages built from
// torsion-free sections over the integers.
struct AssembledDegree {
  int n = 0;
  AbelianGroup sub;       // E2_{0,n}
  AbelianGroup quotient;  // E2_{1,n-1}
  Extension certificate = Extension::Split;
  AbelianGroup group;  // sub + quotient; only meaningful when split

  std::string to_string(const Coefficients& ring) const;
};

struct AssembledHomology {
  Coefficients ring;
  std::vector<AssembledDegree> degrees;  // n = 0, 1, ...

  bool determined() const;
  std::vector<AbelianGroup> groups() const;
  // "H0=Z H1=Z^2 H2=Z"
  std::string to_string() const;
};

E1Page build_e1(const SectionModel& model);
E2Page compute_e2(const E1Page& page);
AssembledHomology assemble_homology(const E2Page& page);

struct PipelineResult {
  CriticalSequence labels;
  E1Page e1;
  E2Page e2;
  // Degrees 0..dim X. The extra top degree produced by assembly is checked
  // to vanish and dropped.
  AssembledHomology homology;
};

// Runs the Reeb check and the whole spectral computation. Without explicit
// labels the distinct vertex values are used.
PipelineResult spectral_homology(const LeveledComplex& instance, const Coefficients& ring,
                                 std::optional<CriticalSequence> labels = std::nullopt);

// Drops degrees above `dim` after checking that they vanish; a nonzero group
// there is an internal error (std::logic_error).
void trim_to_dimension(AssembledHomology& h, int dim);

// Direct simplicial homology in degrees 0..dim X, same report shape.
AssembledHomology direct_homology(const LeveledComplex& instance, const Coefficients& ring);

// "Z^2 + Z/3"-style summary of a group list joined as "H0=.. H1=..".
std::string homology_string(const std::vector<AbelianGroup>& groups, const Coefficients& ring);

}  // namespace critspec
