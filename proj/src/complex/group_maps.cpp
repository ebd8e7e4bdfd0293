#include "critspec/complex/group_maps.hpp"

#include <stdexcept>

namespace critspec {

namespace {

SmithDecomposition snf(const IntegerMatrix& m, const Coefficients& ring, SmithOptions options) {
  if (ring.ring == Ring::PrimeField) return smith_normal_form_mod(m, ring.prime, options);
  return smith_normal_form(m, options);
}

IntegerMatrix relations_of(const AbelianGroup& g, const Coefficients& ring) {
  if (ring.is_field()) return IntegerMatrix(g.generator_count(), 0);
  return relation_matrix(g);
}

void check_shape(const IntegerMatrix& phi, std::size_t domain_size, std::size_t codomain_size) {
  if (phi.rows() != codomain_size || phi.cols() != domain_size) {
    throw std::invalid_argument("map shape " + std::to_string(phi.rows()) + "x" + std::to_string(phi.cols()) +
                                " does not match groups");
  }
}

// phi must send every domain relation into the span of the codomain relations.
void check_well_defined(const IntegerMatrix& phi, const IntegerMatrix& domain_relations,
                        const IntegerMatrix& codomain_relations, const Coefficients& ring) {
  if (ring.is_field() || domain_relations.cols() == 0) return;
  const auto images = phi * domain_relations;
  if (images.is_zero()) return;
  const auto s = smith_normal_form(codomain_relations, {.track_left = true, .track_right = false});
  const auto w = s.u * images;
  bool ok = true;
  w.for_each([&](std::size_t r, std::size_t, const Integer& v) {
    ok = ok && r < s.rank && mpz_divisible_p(v.get_mpz_t(), s.diagonal[r].get_mpz_t()) != 0;
  });
  if (!ok) throw std::invalid_argument("map does not respect torsion relations");
}

}  // namespace

AbelianGroup cokernel_group(const IntegerMatrix& m, const Coefficients& ring) {
  const auto s = snf(m, ring, {.track_left = false, .track_right = false});
  AbelianGroup g;
  g.free_rank = m.rows() - s.rank;
  if (ring.ring == Ring::Integers) {
    for (const auto& d : s.diagonal) {
      if (d != 1) g.torsion.push_back(d);
    }
  }
  return g;
}

IntegerMatrix kernel_basis(const IntegerMatrix& m, const Coefficients& ring) {
  const auto s = snf(m, ring, {.track_left = false, .track_right = true});
  return s.v.block(0, m.cols(), s.rank, m.cols() - s.rank);
}

AbelianGroup subquotient(const IntegerMatrix& generators, const IntegerMatrix& relations,
                         const Coefficients& ring) {
  if (generators.rows() != relations.rows()) throw std::invalid_argument("subquotient shape mismatch");
  const auto s = snf(generators, ring, {.track_left = true, .track_right = false});
  auto w = s.u * relations;
  if (ring.ring == Ring::PrimeField) w = reduce_mod(w, ring.prime);
  IntegerMatrix coords(s.rank, relations.cols());
  bool contained = true;
  w.for_each([&](std::size_t r, std::size_t c, const Integer& v) {
    if (r >= s.rank) {
      contained = false;
      return;
    }
    const Integer& d = s.diagonal[r];
    if (ring.ring != Ring::PrimeField && mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) == 0) {
      contained = false;
      return;
    }
    coords.set(r, c, ring.ring == Ring::PrimeField ? v : Integer(v / d));
  });
  if (!contained) throw std::invalid_argument("relations are not contained in the generated subgroup");
  return cokernel_group(coords, ring);
}

MapSummary analyze_map(const IntegerMatrix& phi, const AbelianGroup& domain,
                       const AbelianGroup& codomain, const Coefficients& ring) {
  check_shape(phi, domain.generator_count(), codomain.generator_count());
  return analyze_map(phi, relations_of(domain, ring), relations_of(codomain, ring), ring);
}

MapSummary analyze_map(const IntegerMatrix& phi, const IntegerMatrix& domain_relations,
                       const IntegerMatrix& codomain_relations, const Coefficients& ring) {
  check_shape(phi, domain_relations.rows(), codomain_relations.rows());
  const auto rel_dom = ring.is_field() ? IntegerMatrix(phi.cols(), 0) : domain_relations;
  const auto rel_cod = ring.is_field() ? IntegerMatrix(phi.rows(), 0) : codomain_relations;
  check_well_defined(phi, rel_dom, rel_cod, ring);
  MapSummary out;
  const auto stacked = IntegerMatrix::hstack(phi, rel_cod);
  out.cokernel = cokernel_group(stacked, ring);
  const auto lattice = kernel_basis(stacked, ring);
  const auto projected = lattice.block(0, phi.cols(), 0, lattice.cols());
  out.kernel = subquotient(projected, rel_dom, ring);
  return out;
}

IntegerMatrix relation_matrix(std::span<const AbelianGroup> summands) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& g : summands) {
    rows += g.generator_count();
    cols += g.torsion.size();
  }
  IntegerMatrix r(rows, cols);
  std::size_t row = 0;
  std::size_t col = 0;
  for (const auto& g : summands) {
    for (std::size_t i = 0; i < g.torsion.size(); ++i) r.set(row + i, col + i, g.torsion[i]);
    row += g.generator_count();
    col += g.torsion.size();
  }
  return r;
}

GroupMapSolver::GroupMapSolver(const IntegerMatrix& phi, const AbelianGroup& domain,
                               const AbelianGroup& codomain, const Coefficients& ring)
    : ring_(ring), domain_(domain), codomain_size_(codomain.generator_count()) {
  check_shape(phi, domain.generator_count(), codomain.generator_count());
  check_well_defined(phi, relations_of(domain, ring), relations_of(codomain, ring), ring);
  snf_ = snf(IntegerMatrix::hstack(phi, relations_of(codomain, ring)), ring, {});
}

std::optional<std::vector<Integer>> GroupMapSolver::solve(std::span<const Integer> y) const {
  if (y.size() != codomain_size_) throw std::invalid_argument("right-hand side has wrong length");
  auto u = snf_.u.apply(y);
  if (ring_.ring == Ring::PrimeField) reduce_mod(u, ring_.prime);
  std::vector<Integer> z(snf_.v.rows());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i < snf_.rank) {
      const Integer& d = snf_.diagonal[i];
      if (mpz_divisible_p(u[i].get_mpz_t(), d.get_mpz_t()) == 0) return std::nullopt;
      z[i] = u[i] / d;
    } else if (u[i] != 0) {
      return std::nullopt;
    }
  }
  auto w = snf_.v.apply(z);
  w.resize(domain_.generator_count());
  if (ring_.ring == Ring::PrimeField) {
    reduce_mod(w, ring_.prime);
  } else if (ring_.ring == Ring::Integers) {
    for (std::size_t i = 0; i < domain_.torsion.size(); ++i) {
      mpz_fdiv_r(w[i].get_mpz_t(), w[i].get_mpz_t(), domain_.torsion[i].get_mpz_t());
    }
  }
  return w;
}

}  // namespace critspec
