#include "critspec/spectral/pages.hpp"

#include <stdexcept>

#include "critspec/complex/group_maps.hpp"

namespace critspec {

std::size_t E1Degree::level_offset(std::size_t i) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k < i; ++k) off += levels.at(k).generator_count();
  return off;
}

std::size_t E1Degree::gap_offset(std::size_t i) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k < i; ++k) off += gaps.at(k).generator_count();
  return off;
}

void E1Page::validate() const {
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const auto& d = degrees[k];
    const std::string where = "degree q=" + std::to_string(d.q);
    if (d.q != static_cast<int>(k)) throw std::invalid_argument(where + ": degrees must be 0, 1, ... in order");
    if (d.differential.rows() != d.rows() || d.differential.cols() != d.cols()) {
      throw std::invalid_argument(where + ": differential is " + std::to_string(d.differential.rows()) + "x" +
                                  std::to_string(d.differential.cols()) + " but summands give " +
                                  std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
    }
    if (ring.is_field()) {
      for (const auto* list : {&d.levels, &d.gaps}) {
        for (const auto& g : *list) {
          if (!g.torsion.empty()) throw std::invalid_argument(where + ": torsion over a field");
        }
      }
    }
  }
}

std::string AssembledDegree::to_string(const Coefficients& ring) const {
  if (certificate == Extension::Split) return group.to_string(ring);
  return "ext(" + quotient.to_string(ring) + ", " + sub.to_string(ring) + ")";
}

bool AssembledHomology::determined() const {
  for (const auto& d : degrees) {
    if (d.certificate != Extension::Split) return false;
  }
  return true;
}

std::vector<AbelianGroup> AssembledHomology::groups() const {
  std::vector<AbelianGroup> out;
  for (const auto& d : degrees) out.push_back(d.group);
  return out;
}

std::string AssembledHomology::to_string() const {
  std::string out;
  for (const auto& d : degrees) {
    out += (out.empty() ? "" : " ") + ("H" + std::to_string(d.n) + "=" + d.to_string(ring));
  }
  return out;
}

std::string homology_string(const std::vector<AbelianGroup>& groups, const Coefficients& ring) {
  std::string out;
  for (std::size_t n = 0; n < groups.size(); ++n) {
    out += (out.empty() ? "" : " ") + ("H" + std::to_string(n) + "=" + groups[n].to_string(ring));
  }
  return out;
}

E1Page build_e1(const SectionModel& model) {
  E1Page page;
  page.ring = model.ring();
  const std::size_t labels = model.labels().size();
  for (int q = 0; q <= model.top_degree(); ++q) {
    E1Degree d;
    d.q = q;
    for (std::size_t i = 0; i < labels; ++i) {
      d.levels.push_back(model.critical_fiber(i).homology[static_cast<std::size_t>(q)].group());
    }
    for (std::size_t i = 0; i < model.gap_count(); ++i) d.gaps.push_back(model.section_space_homology(i, q).group());
    d.differential = IntegerMatrix(d.rows(), d.cols());
    for (std::size_t i = 0; i < model.gap_count(); ++i) {
      const auto block = model.d1_block(i, q);
      const std::size_t row0 = d.level_offset(i);
      const std::size_t col0 = d.gap_offset(i);
      block.for_each([&](std::size_t r, std::size_t c, const Integer& v) { d.differential.set(row0 + r, col0 + c, v); });
    }
    page.degrees.push_back(std::move(d));
  }
  return page;
}

E2Page compute_e2(const E1Page& page) {
  page.validate();
  E2Page out;
  out.ring = page.ring;
  for (const auto& d : page.degrees) {
    const auto summary =
        analyze_map(d.differential, relation_matrix(d.gaps), relation_matrix(d.levels), page.ring);
    out.degrees.push_back({d.q, summary.cokernel, summary.kernel});
  }
  return out;
}

AssembledHomology assemble_homology(const E2Page& page) {
  AssembledHomology out;
  out.ring = page.ring;
  const std::size_t top = page.degrees.size();
  for (std::size_t n = 0; n <= top && top > 0; ++n) {
    AssembledDegree a;
    a.n = static_cast<int>(n);
    if (n < top) a.sub = page.degrees[n].e0;
    if (n > 0) a.quotient = page.degrees[n - 1].e1;
    a.certificate = a.quotient.is_free() ? Extension::Split : Extension::Undetermined;
    a.group = AbelianGroup::direct_sum(a.sub, a.quotient);
    out.degrees.push_back(std::move(a));
  }
  return out;
}

PipelineResult spectral_homology(const LeveledComplex& instance, const Coefficients& ring,
                                 std::optional<CriticalSequence> labels) {
  PipelineResult out;
  out.labels = labels ? std::move(*labels) : critical_values(instance);
  const SectionModel model(instance, out.labels, ring);
  model.check_reeb();
  out.e1 = build_e1(model);
  out.e2 = compute_e2(out.e1);
  out.homology = assemble_homology(out.e2);
  trim_to_dimension(out.homology, instance.complex.dimension());
  return out;
}

void trim_to_dimension(AssembledHomology& h, int dim) {
  const auto keep = static_cast<std::size_t>(dim + 1);
  for (std::size_t n = keep; n < h.degrees.size(); ++n) {
    const auto& extra = h.degrees[n];
    if (!extra.sub.is_zero() || !extra.quotient.is_zero()) {
      throw std::logic_error("nonzero homology above the dimension: H" + std::to_string(extra.n) + "=" +
                             extra.to_string(h.ring));
    }
  }
  if (h.degrees.size() > keep) h.degrees.resize(keep);
}

AssembledHomology direct_homology(const LeveledComplex& instance, const Coefficients& ring) {
  AssembledHomology out;
  out.ring = ring;
  for (int q = 0; q <= instance.complex.dimension(); ++q) {
    AssembledDegree d;
    d.n = q;
    d.group = homology(instance.complex, q, ring).group();
    d.sub = d.group;
    out.degrees.push_back(std::move(d));
  }
  return out;
}

}  // namespace critspec
