#include "critspec/pl/leveled_complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace critspec {

LeveledComplex LeveledComplex::from(SimplicialComplex complex, VertexFunction values) {
  if (values.size() != complex.vertex_count()) {
    throw std::invalid_argument("vertex function has " + std::to_string(values.size()) + " values for " +
                                std::to_string(complex.vertex_count()) + " vertices");
  }
  LeveledComplex lc;
  lc.provenance.reserve(values.size());
  for (Vertex v = 0; v < values.size(); ++v) lc.provenance.push_back(Provenance::original(v));
  lc.complex = std::move(complex);
  lc.values = std::move(values);
  return lc;
}

CriticalSequence::CriticalSequence(std::vector<Rational> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

Rational CriticalSequence::midpoint(std::size_t gap) const {
  if (gap + 1 >= values_.size()) throw std::out_of_range("gap index out of range");
  Rational m = (values_[gap] + values_[gap + 1]) / 2;
  m.canonicalize();
  return m;
}

std::vector<Rational> CriticalSequence::midpoints() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < gap_count(); ++i) out.push_back(midpoint(i));
  return out;
}

CriticalSequence CriticalSequence::with_level(const Rational& level) const {
  if (std::binary_search(values_.begin(), values_.end(), level)) {
    throw std::invalid_argument("level " + to_string(level) + " is already a label");
  }
  auto values = values_;
  values.push_back(level);
  return CriticalSequence(std::move(values));
}

bool CriticalSequence::covers(const VertexFunction& f) const {
  return std::all_of(f.begin(), f.end(),
                     [&](const Rational& v) { return std::binary_search(values_.begin(), values_.end(), v); });
}

CriticalSequence critical_values(const LeveledComplex& lc) { return CriticalSequence(lc.values); }

}  // namespace critspec
