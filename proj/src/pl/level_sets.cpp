#include "critspec/pl/level_sets.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "critspec/complex/union_find.hpp"

namespace critspec {

namespace {

using Edge = std::pair<Vertex, Vertex>;

// Monotone lattice paths from (0,0) to (rows-1, cols-1); each path is the
// vertex list of one maximal simplex of the staircase triangulation.
void staircase(std::size_t rows, std::size_t cols, std::vector<std::pair<std::size_t, std::size_t>>& path,
               std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& out) {
  const auto [i, j] = path.back();
  if (i + 1 == rows && j + 1 == cols) {
    out.push_back(path);
    return;
  }
  if (i + 1 < rows) {
    path.emplace_back(i + 1, j);
    staircase(rows, cols, path, out);
    path.pop_back();
  }
  if (j + 1 < cols) {
    path.emplace_back(i, j + 1);
    staircase(rows, cols, path, out);
    path.pop_back();
  }
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> staircase(std::size_t rows, std::size_t cols) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  std::vector<std::pair<std::size_t, std::size_t>> path{{0, 0}};
  staircase(rows, cols, path, out);
  return out;
}

}  // namespace

LeveledComplex subdivide_at(const LeveledComplex& lc, const Rational& a) {
  const auto& c = lc.complex;
  const std::size_t n = c.vertex_count();

  // Crossing vertices in edge order (edges are sorted lexicographically).
  std::map<Edge, Vertex> crossing;
  LeveledComplex out;
  out.values = lc.values;
  out.provenance = lc.provenance;
  for (const auto& e : c.simplices(1)) {
    const int su = cmp(lc.values[e[0]], a);
    const int sv = cmp(lc.values[e[1]], a);
    if ((su < 0 && sv > 0) || (su > 0 && sv < 0)) {
      crossing.emplace(Edge{e[0], e[1]}, static_cast<Vertex>(n + crossing.size()));
      out.values.push_back(a);
      out.provenance.push_back(Provenance::crossing(e[0], e[1], a));
    }
  }
  if (crossing.empty()) return lc;

  auto x = [&](Vertex u, Vertex v) { return crossing.at(u < v ? Edge{u, v} : Edge{v, u}); };

  std::vector<Simplex> pieces;
  for (int q = 0; q <= c.dimension(); ++q) {
    for (const auto& s : c.simplices(q)) {
      std::vector<Vertex> lo, at, hi;
      for (Vertex v : s) {
        const int side = cmp(lc.values[v], a);
        (side < 0 ? lo : side == 0 ? at : hi).push_back(v);
      }
      if (lo.empty() || hi.empty()) {
        pieces.push_back(s);
        continue;
      }
      // Lower pieces: join(at, staircase(lo x {*} + hi)); upper symmetric.
      auto emit = [&](const std::vector<Vertex>& near, const std::vector<Vertex>& far, bool near_is_low) {
        for (const auto& path : staircase(near.size(), far.size() + 1)) {
          Simplex piece = at;
          for (const auto& [i, j] : path) {
            if (j == 0) {
              piece.push_back(near[i]);
            } else {
              piece.push_back(near_is_low ? x(near[i], far[j - 1]) : x(far[j - 1], near[i]));
            }
          }
          std::sort(piece.begin(), piece.end());
          pieces.push_back(std::move(piece));
        }
      };
      emit(lo, hi, true);
      emit(hi, lo, false);
    }
  }
  out.complex = SimplicialComplex::closure_of(out.values.size(), pieces);
  return out;
}

LeveledComplex refine(const LeveledComplex& lc, std::span<const Rational> levels) {
  LeveledComplex out = lc;
  for (const auto& a : levels) out = subdivide_at(out, a);
  return out;
}

Subcomplex restrict_to(const LeveledComplex& ambient, const Rational& lo, const Rational& hi) {
  std::vector<bool> keep(ambient.vertex_count());
  for (Vertex v = 0; v < keep.size(); ++v) keep[v] = ambient.values[v] >= lo && ambient.values[v] <= hi;
  Subcomplex sub;
  sub.complex.complex = ambient.complex.induced_subcomplex(keep, &sub.embedding);
  for (Vertex v : sub.embedding) {
    sub.complex.values.push_back(ambient.values[v]);
    sub.complex.provenance.push_back(ambient.provenance[v]);
  }
  return sub;
}

LevelSet level_set(const LeveledComplex& lc, const Rational& a) {
  LevelSet out;
  out.ambient = subdivide_at(lc, a);
  out.fiber = restrict_to(out.ambient, a, a);
  return out;
}

Slab slab(const LeveledComplex& lc, const Rational& a, const Rational& b) {
  if (a > b) throw std::invalid_argument("slab bounds out of order: " + to_string(a) + " > " + to_string(b));
  Slab out;
  out.ambient = subdivide_at(subdivide_at(lc, a), b);
  out.slab = restrict_to(out.ambient, a, b);
  out.lower = restrict_to(out.ambient, a, a);
  out.upper = restrict_to(out.ambient, b, b);
  return out;
}

IntegerMatrix inclusion_map(const Subcomplex& from, const Subcomplex& to, int q) {
  const auto& src = from.complex.complex;
  const auto& dst = to.complex.complex;
  IntegerMatrix m(dst.size(q), src.size(q));
  // ambient id -> id in `to`
  std::map<Vertex, Vertex> local;
  for (Vertex v = 0; v < to.embedding.size(); ++v) local.emplace(to.embedding[v], v);
  const auto simplices = src.simplices(q);
  for (std::size_t j = 0; j < simplices.size(); ++j) {
    Simplex image;
    image.reserve(simplices[j].size());
    for (Vertex v : simplices[j]) {
      auto it = local.find(from.embedding[v]);
      if (it == local.end()) throw std::invalid_argument("subcomplex is not contained in the target");
      image.push_back(it->second);
    }
    const auto row = dst.index_of(image);
    if (!row) throw std::invalid_argument("simplex " + to_string(image) + " missing from the target");
    m.set(*row, j, Integer(1));
  }
  return m;
}

FiberComponents fiber_components(const LeveledComplex& fiber, const Rational& level) {
  UnionFind uf(fiber.vertex_count());
  for (const auto& e : fiber.complex.simplices(1)) uf.unite(e[0], e[1]);
  FiberComponents out;
  out.level = level;
  out.label = uf.labels();
  for (Vertex v = 0; v < out.label.size(); ++v) {
    if (out.label[v] == out.representatives.size()) out.representatives.push_back(v);
  }
  return out;
}

}  // namespace critspec
