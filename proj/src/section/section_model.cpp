#include "critspec/section/section_model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "critspec/complex/group_maps.hpp"
#include "critspec/complex/union_find.hpp"

namespace critspec {

namespace {

std::string describe(Endpoint e) { return e == Endpoint::Lower ? "lower" : "upper"; }

// Coordinates in `target` of the image of each generator of `source` under a
// chain map.
IntegerMatrix image_coordinates(const HomologyPresentation& source, const IntegerMatrix& chain_map,
                                const HomologyPresentation& target) {
  IntegerMatrix out(target.size(), source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto y = target.express(chain_map.apply(source.generators[j].cycle));
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] != 0) out.set(i, j, y[i]);
    }
  }
  return out;
}

}  // namespace

NotReeb::NotReeb(std::size_t gap, Endpoint endpoint, int degree, const std::string& detail)
    : std::runtime_error("not a Reeb function: gap " + std::to_string(gap) + ", " + describe(endpoint) +
                         " endpoint" + (degree >= 0 ? ", degree " + std::to_string(degree) : ", components") +
                         ": " + detail),
      gap_(gap),
      endpoint_(endpoint),
      degree_(degree) {}

SectionModel::SectionModel(const LeveledComplex& instance, CriticalSequence labels, Coefficients ring,
                           std::vector<Rational> extra_levels)
    : labels_(std::move(labels)), ring_(ring) {
  if (instance.complex.empty() || labels_.empty()) throw std::invalid_argument("empty instance");
  if (!labels_.covers(instance.values)) throw std::invalid_argument("labels miss a vertex value");
  top_ = instance.complex.dimension();

  refined_levels_ = labels_.values();
  for (const auto& m : labels_.midpoints()) refined_levels_.push_back(m);
  for (auto& x : extra_levels) {
    x.canonicalize();
    refined_levels_.push_back(x);
  }
  std::sort(refined_levels_.begin(), refined_levels_.end());
  refined_levels_.erase(std::unique(refined_levels_.begin(), refined_levels_.end()), refined_levels_.end());
  refined_ = refine(instance, refined_levels_);

  for (const auto& c : labels_.values()) levels_.push_back(make_fiber(c));
  for (std::size_t i = 0; i < labels_.gap_count(); ++i) {
    const Rational m = labels_.midpoint(i);
    Gap g{make_fiber(m), restrict_to(refined_, labels_[i], m), restrict_to(refined_, m, labels_[i + 1]), {}, {}};
    g.lower_homology = homology_of(g.lower_slab.complex.complex);
    g.upper_homology = homology_of(g.upper_slab.complex.complex);
    gaps_.push_back(std::move(g));
  }
}

std::vector<HomologyPresentation> SectionModel::homology_of(const SimplicialComplex& c) const {
  std::vector<HomologyPresentation> out;
  for (int q = 0; q <= top_; ++q) out.push_back(homology(c, q, ring_));
  return out;
}

Fiber SectionModel::make_fiber(const Rational& level) const {
  Fiber f;
  f.level = level;
  f.complex = restrict_to(refined_, level, level);
  f.homology = homology_of(f.complex.complex.complex);
  f.components = fiber_components(f.complex.complex, level);
  return f;
}

const HomologyPresentation& SectionModel::section_space_homology(std::size_t gap, int q) const {
  return gaps_.at(gap).mid.homology.at(static_cast<std::size_t>(q));
}

IntegerMatrix SectionModel::map_through(const Fiber& from, const Fiber& to, const Subcomplex& slab,
                                        const std::vector<HomologyPresentation>& slab_homology, int q,
                                        const std::function<void(const std::string&)>& not_iso) const {
  const auto k = static_cast<std::size_t>(q);
  const auto& hs = slab_homology[k];
  const auto& ht = to.homology[k];
  const auto phi = image_coordinates(ht, inclusion_map(to.complex, slab, q), hs);
  const auto summary = analyze_map(phi, ht.group(), hs.group(), ring_);
  if (!summary.is_isomorphism()) {
    not_iso("H" + std::to_string(q) + " " + ht.group().to_string(ring_) + " -> " + hs.group().to_string(ring_) +
            " has kernel " + summary.kernel.to_string(ring_) + " and cokernel " +
            summary.cokernel.to_string(ring_));
  }
  const auto y = image_coordinates(from.homology[k], inclusion_map(from.complex, slab, q), hs);
  GroupMapSolver solver(phi, ht.group(), hs.group(), ring_);
  IntegerMatrix out(ht.size(), y.cols());
  for (std::size_t j = 0; j < y.cols(); ++j) {
    const auto x = solver.solve(y.column(j));
    if (!x) throw SolveFailure("cycle image has no preimage in degree " + std::to_string(q));
    for (std::size_t i = 0; i < x->size(); ++i) {
      if ((*x)[i] != 0) out.set(i, j, (*x)[i]);
    }
  }
  return out;
}

void SectionModel::check_reeb() const {
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    for (auto e : {Endpoint::Lower, Endpoint::Upper}) {
      component_endpoints(i, e);
      for (int q = 0; q <= top_; ++q) induced_endpoint_map(i, e, q);
    }
  }
}

InducedMap SectionModel::induced_endpoint_map(std::size_t gap, Endpoint endpoint, int q) const {
  if (q < 0 || q > top_) throw std::out_of_range("degree out of range");
  const Gap& g = gaps_.at(gap);
  const bool lower = endpoint == Endpoint::Lower;
  const Fiber& critical = levels_[lower ? gap : gap + 1];
  InducedMap out;
  out.gap = gap;
  out.endpoint = endpoint;
  out.degree = q;
  out.domain = g.mid.homology[static_cast<std::size_t>(q)].group();
  out.codomain = critical.homology[static_cast<std::size_t>(q)].group();
  out.matrix = map_through(g.mid, critical, lower ? g.lower_slab : g.upper_slab,
                           lower ? g.lower_homology : g.upper_homology, q,
                           [&](const std::string& detail) { throw NotReeb(gap, endpoint, q, detail); });
  return out;
}

IntegerMatrix SectionModel::d1_block(std::size_t gap, int q) const {
  const auto lower = induced_endpoint_map(gap, Endpoint::Lower, q).matrix;
  const auto upper = induced_endpoint_map(gap, Endpoint::Upper, q).matrix;
  auto block = IntegerMatrix::vstack(IntegerMatrix(lower.rows(), lower.cols()) - lower, upper);
  return ring_.ring == Ring::PrimeField ? reduce_mod(block, ring_.prime) : block;
}

std::vector<std::size_t> SectionModel::component_endpoints(std::size_t gap, Endpoint endpoint) const {
  const Gap& g = gaps_.at(gap);
  const bool lower = endpoint == Endpoint::Lower;
  const Subcomplex& slab = lower ? g.lower_slab : g.upper_slab;
  const Fiber& critical = levels_[lower ? gap : gap + 1];

  std::map<Vertex, Vertex> local;
  for (Vertex v = 0; v < slab.embedding.size(); ++v) local.emplace(slab.embedding[v], v);
  UnionFind uf(slab.complex.vertex_count());
  for (const auto& e : slab.complex.complex.simplices(1)) uf.unite(e[0], e[1]);
  const auto slab_label = uf.labels();
  const std::size_t slab_components =
      slab_label.empty() ? 0 : *std::max_element(slab_label.begin(), slab_label.end()) + 1;

  std::vector<std::set<std::size_t>> hits(slab_components);
  const auto& crit = critical.complex;
  for (Vertex v = 0; v < crit.embedding.size(); ++v) {
    hits[slab_label[local.at(crit.embedding[v])]].insert(critical.components.label[v]);
  }
  for (std::size_t k = 0; k < slab_components; ++k) {
    if (hits[k].size() != 1) {
      throw NotReeb(gap, endpoint, -1,
                    "slab component " + std::to_string(k) + " meets " + std::to_string(hits[k].size()) +
                        " critical components");
    }
  }
  std::vector<std::size_t> out;
  for (Vertex rep : g.mid.components.representatives) {
    out.push_back(*hits[slab_label[local.at(g.mid.complex.embedding[rep])]].begin());
  }
  return out;
}

IntegerMatrix SectionModel::transport(const Rational& from, const Rational& to, int q) const {
  for (const auto* level : {&from, &to}) {
    if (!std::binary_search(refined_levels_.begin(), refined_levels_.end(), *level)) {
      throw std::invalid_argument("level " + to_string(*level) + " is not a refinement level");
    }
  }
  if (q < 0 || q > top_) throw std::out_of_range("degree out of range");
  const Fiber source = make_fiber(from);
  const Fiber target = make_fiber(to);
  const auto slab = restrict_to(refined_, std::min(from, to), std::max(from, to));
  return map_through(source, target, slab, homology_of(slab.complex.complex), q, [&](const std::string& detail) {
    throw NotReeb(0, from < to ? Endpoint::Upper : Endpoint::Lower, q,
                  "transport " + to_string(from) + " -> " + to_string(to) + ": " + detail);
  });
}

}  // namespace critspec
