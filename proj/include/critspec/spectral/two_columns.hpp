#pragma once

#include <string>
#include <vector>

#include "critspec/section/section_model.hpp"

namespace critspec {

struct TwoColumnDegree {
  int q = 0;
  AbelianGroup successive_kernel;    // ker of the successive-pair differential
  AbelianGroup full_e2_1;            // ker d1 / im d2 over all pairs
  AbelianGroup successive_cokernel;  // coker of the successive-pair differential
  AbelianGroup full_e2_0;            // coker d1 over all pairs
  AbelianGroup full_e2_2;            // ker d2 / im d3, expected zero
  bool complex_ok = false;           // d1 d2 = 0 and d2 d3 = 0
  bool match() const;
};

struct TwoColumnReport {
  bool supported = true;
  std::string reason;  // why verification was skipped
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t quadruples = 0;
  std::vector<TwoColumnDegree> degrees;
  bool ok() const;
};

// Brute-force first page over all labelled chains c_i < c_j (< c_l < c_m).
// The section space over a pair is modelled by its homology-level fibre
// product: tuples of midpoint classes, one per gap in between, whose images
// agree at every interior critical fiber. Only torsion-free data is
// supported; otherwise the report is marked unsupported.
TwoColumnReport verify_two_columns(const SectionModel& model);

}  // namespace critspec
