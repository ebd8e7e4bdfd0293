#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "critspec/complex/homology.hpp"
#include "critspec/pl/level_sets.hpp"

namespace critspec {

enum class Endpoint { Lower, Upper };

// A critical-fiber inclusion into a half-gap slab failed to be a homology
// (or pi_0) isomorphism: the input does not behave like a Reeb function.
class NotReeb : public std::runtime_error {
 public:
  NotReeb(std::size_t gap, Endpoint endpoint, int degree, const std::string& detail);
  std::size_t gap() const { return gap_; }
  Endpoint endpoint() const { return endpoint_; }
  int degree() const { return degree_; }  // -1 for the pi_0 check

 private:
  std::size_t gap_;
  Endpoint endpoint_;
  int degree_;
};

// Expressing a cycle through an isomorphism had no solution. This is an
// internal invariant breach, never a property of the input.
class SolveFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Fiber {
  Rational level;
  Subcomplex complex;
  std::vector<HomologyPresentation> homology;  // degrees 0..top
  FiberComponents components;
};

struct InducedMap {
  std::size_t gap = 0;
  Endpoint endpoint = Endpoint::Lower;
  int degree = 0;
  AbelianGroup domain;    // H_q of the midpoint fiber
  AbelianGroup codomain;  // H_q of the critical fiber
  IntegerMatrix matrix;
};

// Finite model of the section spaces between successive labels. The instance
// is refined once at every label and midpoint; fibers and half-gap slabs are
// full subcomplexes of that refinement. The midpoint fiber of a gap stands in
// for its section space.
class SectionModel {
 public:
  // Throws std::invalid_argument if the labels miss a vertex value or the
  // instance is empty.
  SectionModel(const LeveledComplex& instance, CriticalSequence labels, Coefficients ring,
               std::vector<Rational> extra_levels = {});

  const CriticalSequence& labels() const { return labels_; }
  const Coefficients& ring() const { return ring_; }
  const LeveledComplex& refined() const { return refined_; }
  // dim X; homology is tracked in degrees 0..top_degree().
  int top_degree() const { return top_; }
  std::size_t gap_count() const { return gaps_.size(); }

  const Fiber& critical_fiber(std::size_t i) const { return levels_.at(i); }
  const Fiber& midpoint_fiber(std::size_t gap) const { return gaps_.at(gap).mid; }
  const HomologyPresentation& section_space_homology(std::size_t gap, int q) const;

  // Runs every half-gap isomorphism check; throws NotReeb on the first failure.
  void check_reeb() const;

  // (incl_critical)^-1 o (incl_mid) on H_q through the half-gap slab.
  InducedMap induced_endpoint_map(std::size_t gap, Endpoint endpoint, int q) const;
  // Rows: H_q of critical fibers gap, gap+1 (stacked); columns: H_q of the
  // midpoint fiber. Column = upper image - lower image.
  IntegerMatrix d1_block(std::size_t gap, int q) const;

  // Midpoint component -> critical component, by union-find on the half-gap
  // slab. Throws NotReeb unless the critical fiber meets every slab
  // component exactly once.
  std::vector<std::size_t> component_endpoints(std::size_t gap, Endpoint endpoint) const;

  // H_q(fiber at `from`) -> H_q(fiber at `to`) through the slab between them,
  // inverting the inclusion of the `to` fiber. Both levels must be labels,
  // midpoints or extra levels. Throws NotReeb if that inclusion is not an
  // isomorphism.
  IntegerMatrix transport(const Rational& from, const Rational& to, int q) const;

 private:
  struct Gap {
    Fiber mid;
    Subcomplex lower_slab;
    Subcomplex upper_slab;
    std::vector<HomologyPresentation> lower_homology;
    std::vector<HomologyPresentation> upper_homology;
  };

  Fiber make_fiber(const Rational& level) const;
  std::vector<HomologyPresentation> homology_of(const SimplicialComplex& c) const;
  IntegerMatrix map_through(const Fiber& from, const Fiber& to, const Subcomplex& slab,
                            const std::vector<HomologyPresentation>& slab_homology, int q,
                            const std::function<void(const std::string&)>& not_iso) const;

  CriticalSequence labels_;
  Coefficients ring_;
  std::vector<Rational> refined_levels_;
  LeveledComplex refined_;
  int top_ = 0;
  std::vector<Fiber> levels_;
  std::vector<Gap> gaps_;
};

}  // namespace critspec
