#include "critspec/complex/simplicial_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace critspec {

std::string to_string(const Simplex& s) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << "]";
  return out.str();
}

std::string ComplexViolation::message() const {
  switch (kind) {
    case Kind::EmptySimplex:
      return "empty simplex";
    case Kind::VertexOutOfRange:
      return "simplex " + to_string(simplex) + " references a vertex out of range";
    case Kind::NotIncreasing:
      return "simplex " + to_string(simplex) + " is not strictly increasing";
    case Kind::Duplicate:
      return "simplex " + to_string(simplex) + " is listed twice";
    case Kind::MissingFace:
      return "face " + to_string(face) + " of simplex " + to_string(simplex) + " is missing";
  }
  return "invalid complex";
}

namespace {

std::optional<ComplexViolation> check_shape(std::size_t vertex_count, const Simplex& s) {
  using Kind = ComplexViolation::Kind;
  if (s.empty()) return ComplexViolation{Kind::EmptySimplex, s, {}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= vertex_count) return ComplexViolation{Kind::VertexOutOfRange, s, {}};
    if (i > 0 && s[i - 1] >= s[i]) return ComplexViolation{Kind::NotIncreasing, s, {}};
  }
  return std::nullopt;
}

// Facets in lexicographic order: omit the last vertex first.
std::vector<Simplex> facets(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  for (std::size_t k = s.size(); k-- > 0;) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != k) f.push_back(s[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::optional<ComplexViolation> validate_complex(std::size_t vertex_count,
                                                 std::span<const Simplex> simplices) {
  std::set<Simplex> seen;
  for (const auto& s : simplices) {
    if (auto bad = check_shape(vertex_count, s)) return bad;
    if (!seen.insert(s).second) return ComplexViolation{ComplexViolation::Kind::Duplicate, s, {}};
  }
  for (const auto& s : simplices) {
    if (s.size() < 3) continue;  // faces of edges are vertices, always present
    for (auto& f : facets(s)) {
      if (!seen.contains(f)) {
        return ComplexViolation{ComplexViolation::Kind::MissingFace, s, std::move(f)};
      }
    }
  }
  return std::nullopt;
}

SimplicialComplex::SimplicialComplex(std::size_t vertex_count, std::span<const Simplex> simplices)
    : vertex_count_(vertex_count) {
  if (auto bad = validate_complex(vertex_count, simplices)) throw InvalidComplex(*bad);
  build({simplices.begin(), simplices.end()});
}

SimplicialComplex SimplicialComplex::closure_of(std::size_t vertex_count,
                                                std::span<const Simplex> simplices) {
  // Bucket by size, then sweep downward adding facets of each deduplicated layer.
  std::vector<std::vector<Simplex>> layers;
  for (const auto& s : simplices) {
    if (auto bad = check_shape(vertex_count, s)) throw InvalidComplex(*bad);
    if (layers.size() < s.size()) layers.resize(s.size());
    layers[s.size() - 1].push_back(s);
  }
  std::vector<Simplex> all;
  for (std::size_t k = layers.size(); k-- > 0;) {
    auto& layer = layers[k];
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    if (k > 0) {
      for (const auto& s : layer) {
        for (auto& f : facets(s)) layers[k - 1].push_back(std::move(f));
      }
    }
    for (auto& s : layer) all.push_back(std::move(s));
  }
  SimplicialComplex c;
  c.vertex_count_ = vertex_count;
  c.build(std::move(all));
  return c;
}

void SimplicialComplex::build(std::vector<Simplex> simplices) {
  by_dim_.clear();
  if (vertex_count_ == 0) return;
  by_dim_.resize(1);
  for (Vertex v = 0; v < vertex_count_; ++v) by_dim_[0].push_back({v});
  for (auto& s : simplices) {
    if (s.size() == 1) continue;
    const std::size_t q = s.size() - 1;
    if (by_dim_.size() <= q) by_dim_.resize(q + 1);
    by_dim_[q].push_back(std::move(s));
  }
  for (auto& list : by_dim_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

std::size_t SimplicialComplex::size(int q) const {
  if (q < 0 || q > dimension()) return 0;
  return by_dim_[static_cast<std::size_t>(q)].size();
}

std::span<const Simplex> SimplicialComplex::simplices(int q) const {
  if (q < 0 || q > dimension()) return {};
  return by_dim_[static_cast<std::size_t>(q)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty()) return std::nullopt;
  const auto list = simplices(static_cast<int>(s.size()) - 1);
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

std::size_t SimplicialComplex::total_size() const {
  std::size_t n = 0;
  for (const auto& list : by_dim_) n += list.size();
  return n;
}

SimplicialComplex SimplicialComplex::induced_subcomplex(const std::vector<bool>& keep,
                                                        std::vector<Vertex>* vertex_map) const {
  std::vector<Vertex> relabel(vertex_count_, 0);
  std::vector<Vertex> map;
  for (Vertex v = 0; v < vertex_count_; ++v) {
    if (keep.at(v)) {
      relabel[v] = static_cast<Vertex>(map.size());
      map.push_back(v);
    }
  }
  std::vector<Simplex> kept;
  for (std::size_t q = 1; q < by_dim_.size(); ++q) {
    for (const auto& s : by_dim_[q]) {
      if (!std::all_of(s.begin(), s.end(), [&](Vertex v) { return keep[v]; })) continue;
      Simplex t;
      t.reserve(s.size());
      for (Vertex v : s) t.push_back(relabel[v]);
      kept.push_back(std::move(t));
    }
  }
  SimplicialComplex sub;
  sub.vertex_count_ = map.size();
  sub.build(std::move(kept));
  if (vertex_map) *vertex_map = std::move(map);
  return sub;
}

IntegerMatrix boundary_matrix(const SimplicialComplex& c, int q) {
  if (q <= 0) throw std::invalid_argument("boundary_matrix requires q >= 1");
  const auto cols = c.simplices(q);
  IntegerMatrix m(c.size(q - 1), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Simplex& s = cols[j];
    for (std::size_t k = 0; k < s.size(); ++k) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i != k) face.push_back(s[i]);
      }
      const auto row = c.index_of(face);
      if (!row) throw std::logic_error("face missing from a validated complex");
      m.set(*row, j, Integer(k % 2 == 0 ? 1 : -1));
    }
  }
  return m;
}

}  // namespace critspec
