#include "critspec/complex/homology.hpp"

#include <charconv>
#include <optional>
#include <stdexcept>

#include "critspec/complex/chain_reduction.hpp"
#include "critspec/complex/smith.hpp"
#include "critspec/complex/union_find.hpp"

namespace critspec {

Coefficients Coefficients::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("zp:" + std::to_string(p) + " is not a prime field");
  return {Ring::PrimeField, p};
}

Coefficients Coefficients::parse(std::string_view tag) {
  if (tag == "z") return integers();
  if (tag == "q") return rationals();
  if (tag.starts_with("zp:")) {
    const auto digits = tag.substr(3);
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed coefficient tag '" + std::string(tag) + "'");
    }
    return prime_field(p);
  }
  throw std::invalid_argument("unknown coefficient tag '" + std::string(tag) + "' (expected z, q or zp:<p>)");
}

std::string Coefficients::tag() const {
  switch (ring) {
    case Ring::Integers:
      return "z";
    case Ring::Rationals:
      return "q";
    case Ring::PrimeField:
      return "zp:" + std::to_string(prime);
  }
  return "z";
}

std::string AbelianGroup::to_string(const Coefficients& ring) const {
  std::string base = "Z";
  if (ring.ring == Ring::Rationals) base = "Q";
  if (ring.ring == Ring::PrimeField) base = "F" + std::to_string(ring.prime);
  std::string out;
  if (free_rank > 0) out = free_rank == 1 ? base : base + "^" + std::to_string(free_rank);
  for (const auto& t : torsion) out += (out.empty() ? "" : " + ") + ("Z/" + t.get_str());
  return out.empty() ? "0" : out;
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  AbelianGroup g{a.free_rank + b.free_rank, a.torsion};
  g.torsion.insert(g.torsion.end(), b.torsion.begin(), b.torsion.end());
  if (g.torsion.size() > 1) {
    // Re-normalize to invariant factors.
    IntegerMatrix rel(g.torsion.size(), g.torsion.size());
    for (std::size_t i = 0; i < g.torsion.size(); ++i) rel.set(i, i, g.torsion[i]);
    auto snf = smith_normal_form(rel, {.track_left = false, .track_right = false});
    g.torsion.clear();
    for (const auto& d : snf.diagonal) {
      if (d != 1) g.torsion.push_back(d);
    }
  }
  return g;
}

IntegerMatrix relation_matrix(const AbelianGroup& g) {
  IntegerMatrix r(g.generator_count(), g.torsion.size());
  for (std::size_t i = 0; i < g.torsion.size(); ++i) r.set(i, i, g.torsion[i]);
  return r;
}

IntegerMatrix reduce_mod(const IntegerMatrix& m, std::uint32_t p) {
  IntegerMatrix out(m.rows(), m.cols());
  m.for_each([&](std::size_t r, std::size_t c, const Integer& v) {
    Integer x;
    mpz_fdiv_r_ui(x.get_mpz_t(), v.get_mpz_t(), p);
    if (x != 0) out.set(r, c, x);
  });
  return out;
}

void reduce_mod(std::vector<Integer>& v, std::uint32_t p) {
  for (auto& x : v) mpz_fdiv_r_ui(x.get_mpz_t(), x.get_mpz_t(), p);
}

std::vector<Integer> HomologyPresentation::express(std::span<const Integer> cycle) const {
  auto y = coordinates.apply(cycle);
  if (ring.ring == Ring::PrimeField) {
    reduce_mod(y, ring.prime);
    return y;
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].kind == GeneratorKind::Torsion) {
      mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), generators[i].order.get_mpz_t());
    }
  }
  return y;
}

namespace {

HomologyPresentation degree_zero(const SimplicialComplex& c, const Coefficients& ring) {
  UnionFind uf(c.vertex_count());
  for (const auto& e : c.simplices(1)) uf.unite(e[0], e[1]);
  const auto label = uf.labels();
  std::size_t components = 0;
  for (auto l : label) components = std::max(components, l + 1);

  HomologyPresentation h;
  h.ring = ring;
  h.degree = 0;
  h.chain_rank = c.vertex_count();
  h.free_rank = components;
  h.generators.resize(components);
  h.coordinates = IntegerMatrix(components, c.vertex_count());
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    auto& gen = h.generators[label[v]];
    if (gen.cycle.empty()) {
      gen.cycle.assign(c.vertex_count(), Integer(0));
      gen.cycle[v] = 1;  // smallest vertex of the component
    }
    h.coordinates.set(label[v], v, Integer(1));
  }
  return h;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b, const Coefficients& ring) {
  auto m = a * b;
  return ring.ring == Ring::PrimeField ? reduce_mod(m, ring.prime) : m;
}

// Degree q from the boundaries around it: `down` is d_q, `up` is d_{q+1}
// (zero columns at the top dimension). Generators come back in the chain
// coordinates of these matrices.
HomologyPresentation from_boundaries(const IntegerMatrix& down, const IntegerMatrix& up, int q,
                                     const Coefficients& ring) {
  const bool field = ring.ring == Ring::PrimeField;
  auto snf = [&](const IntegerMatrix& m, SmithOptions opt) {
    return field ? smith_normal_form_mod(m, ring.prime, opt) : smith_normal_form(m, opt);
  };

  const std::size_t nq = down.cols();
  const auto boundary = field ? reduce_mod(down, ring.prime) : down;
  const auto s1 = snf(boundary, {.track_left = false, .track_right = true});
  const std::size_t k = nq - s1.rank;
  const auto cycles = s1.v.block(0, nq, s1.rank, k);        // nq x k
  const auto cycle_coords = s1.v_inv.block(s1.rank, k, 0, nq);  // k x nq

  const auto reduced = multiply(cycle_coords, field ? reduce_mod(up, ring.prime) : up, ring);
  const auto s2 = snf(reduced, {.track_left = true, .track_right = false});
  const auto basis = multiply(cycles, s2.u_inv, ring);
  const auto coords = multiply(s2.u, cycle_coords, ring);

  HomologyPresentation h;
  h.ring = ring;
  h.degree = q;
  h.chain_rank = nq;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i) {
    const Integer d = i < s2.rank ? s2.diagonal[i] : Integer(0);
    if (d == 1) continue;
    HomologyGenerator g;
    g.cycle = basis.column(i);
    if (d == 0) {
      g.kind = GeneratorKind::Free;
      ++h.free_rank;
    } else {
      g.kind = GeneratorKind::Torsion;
      g.order = d;
      h.torsion.push_back(d);
    }
    h.generators.push_back(std::move(g));
    kept.push_back(i);
  }
  // Unit diagonal entries come first, so the kept generators are a suffix.
  const std::size_t first = kept.empty() ? k : kept.front();
  h.coordinates = coords.block(first, k - first, 0, nq);
  return h;
}

IntegerMatrix up_boundary(const SimplicialComplex& c, int q) {
  return q + 1 <= c.dimension() ? boundary_matrix(c, q + 1) : IntegerMatrix(c.size(q), 0);
}

// Integers or a prime field; rationals are derived from the integer result.
// The chain complex is shrunk first and the answer pulled back to simplices.
HomologyPresentation positive_degree(const SimplicialComplex& c, int q, const Coefficients& ring) {
  std::optional<ChainReduction> reduction;
  try {
    reduction.emplace(c, q + 1);
  } catch (const ChainReduction::Overflow&) {
    return from_boundaries(boundary_matrix(c, q), up_boundary(c, q), q, ring);
  }
  const auto down = reduction->boundary(q);
  const auto up = q + 1 <= c.dimension() ? reduction->boundary(q + 1) : IntegerMatrix(down.cols(), 0);
  auto h = from_boundaries(down, up, q, ring);
  for (auto& g : h.generators) {
    g.cycle = reduction->lift(q, g.cycle);
    if (ring.ring == Ring::PrimeField) reduce_mod(g.cycle, ring.prime);
  }
  h.coordinates = multiply(h.coordinates, reduction->projection(q), ring);
  h.chain_rank = c.size(q);
  return h;
}

}  // namespace

HomologyPresentation homology(const SimplicialComplex& c, int q, const Coefficients& ring) {
  if (q < 0 || q > c.dimension()) {
    HomologyPresentation h;
    h.ring = ring;
    h.degree = q;
    h.chain_rank = c.size(q);
    h.coordinates = IntegerMatrix(0, h.chain_rank);
    return h;
  }
  if (q == 0) return degree_zero(c, ring);
  if (ring.ring != Ring::Rationals) return positive_degree(c, q, ring);

  // Over Q the free generators of the integral computation form a basis and
  // torsion generators become boundaries.
  auto h = positive_degree(c, q, Coefficients::integers());
  HomologyPresentation out;
  out.ring = ring;
  out.degree = q;
  out.chain_rank = h.chain_rank;
  out.free_rank = h.free_rank;
  const std::size_t offset = h.torsion.size();
  out.coordinates = h.coordinates.block(offset, h.free_rank, 0, h.chain_rank);
  out.generators.assign(h.generators.begin() + static_cast<std::ptrdiff_t>(offset), h.generators.end());
  return out;
}

}  // namespace critspec
