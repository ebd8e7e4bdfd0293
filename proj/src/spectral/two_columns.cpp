#include "critspec/spectral/two_columns.hpp"

#include <map>
#include <tuple>

#include "critspec/complex/group_maps.hpp"

namespace critspec {

bool TwoColumnDegree::match() const {
  return complex_ok && successive_kernel == full_e2_1 && successive_cokernel == full_e2_0 && full_e2_2.is_zero();
}

bool TwoColumnReport::ok() const {
  if (!supported) return false;
  for (const auto& d : degrees) {
    if (!d.match()) return false;
  }
  return true;
}

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

void put(IntegerMatrix& m, std::size_t row0, std::size_t col0, const IntegerMatrix& block, int sign) {
  block.for_each([&](std::size_t r, std::size_t c, const Integer& v) {
    m.add(row0 + r, col0 + c, sign > 0 ? v : Integer(-v));
  });
}

class Verifier {
 public:
  Verifier(const SectionModel& model, int q) : model_(model), q_(q), ring_(model.ring()) {
    const std::size_t n = model.labels().size();
    for (std::size_t i = 0; i < n; ++i) crit_.push_back(model.critical_fiber(i).homology[uq()].size());
    for (std::size_t k = 0; k + 1 < n; ++k) {
      mid_.push_back(model.section_space_homology(k, q).size());
      s_.push_back(model.induced_endpoint_map(k, Endpoint::Lower, q).matrix);
      t_.push_back(model.induced_endpoint_map(k, Endpoint::Upper, q).matrix);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) basis_[{i, j}] = section_basis(i, j);
    }
  }

  TwoColumnDegree run(TwoColumnReport& report) {
    const std::size_t n = crit_.size();
    std::vector<Pair> pairs;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> triples;
    std::vector<std::array<std::size_t, 4>> quads;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        pairs.push_back({i, j});
        for (std::size_t l = j + 1; l < n; ++l) {
          triples.emplace_back(i, j, l);
          for (std::size_t m = l + 1; m < n; ++m) quads.push_back({i, j, l, m});
        }
      }
    }
    report.pairs = pairs.size();
    report.triples = triples.size();
    report.quadruples = quads.size();

    std::map<Pair, std::size_t> pair_offset;
    std::size_t pair_total = 0;
    for (const auto& p : pairs) {
      pair_offset[p] = pair_total;
      pair_total += rank(p);
    }
    std::vector<std::size_t> crit_offset{0};
    for (auto c : crit_) crit_offset.push_back(crit_offset.back() + c);

    // d1 = target - source.
    IntegerMatrix d1(crit_offset.back(), pair_total);
    for (const auto& [i, j] : pairs) {
      const auto& k = basis_.at({i, j});
      const std::size_t col = pair_offset[{i, j}];
      put(d1, crit_offset[j], col, t_[j - 1] * rows_of_gap(k, i, j, j - 1), +1);
      put(d1, crit_offset[i], col, s_[i] * rows_of_gap(k, i, j, i), -1);
    }

    // d2 on (i,j,l) with section space over (i,l): faces (j,l), (i,l), (i,j).
    std::vector<std::size_t> triple_offset;
    std::size_t triple_total = 0;
    for (const auto& [i, j, l] : triples) {
      triple_offset.push_back(triple_total);
      triple_total += rank({i, l});
    }
    IntegerMatrix d2(pair_total, triple_total);
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const auto [i, j, l] = triples[t];
      const std::size_t col = triple_offset[t];
      put(d2, pair_offset[{j, l}], col, restrict_basis({i, l}, {j, l}), +1);
      put(d2, pair_offset[{i, l}], col, IntegerMatrix::identity(rank({i, l})), -1);
      put(d2, pair_offset[{i, j}], col, restrict_basis({i, l}, {i, j}), +1);
    }

    // d3 on (i,j,l,m) with section space over (i,m).
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> triple_index;
    for (std::size_t t = 0; t < triples.size(); ++t) triple_index[triples[t]] = triple_offset[t];
    std::size_t quad_total = 0;
    for (const auto& qd : quads) quad_total += rank({qd[0], qd[3]});
    IntegerMatrix d3(triple_total, quad_total);
    std::size_t col = 0;
    for (const auto& [i, j, l, m] : quads) {
      const Pair whole{i, m};
      put(d3, triple_index[{j, l, m}], col, restrict_basis(whole, {j, m}), +1);
      put(d3, triple_index[{i, l, m}], col, IntegerMatrix::identity(rank(whole)), -1);
      put(d3, triple_index[{i, j, m}], col, IntegerMatrix::identity(rank(whole)), +1);
      put(d3, triple_index[{i, j, l}], col, restrict_basis(whole, {i, l}), -1);
      col += rank(whole);
    }

    TwoColumnDegree out;
    out.q = q_;
    out.complex_ok = reduce(d1 * d2).is_zero() && reduce(d2 * d3).is_zero();

    // Successive pairs only.
    IntegerMatrix succ(crit_offset.back(), 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const std::size_t c0 = pair_offset[{k, k + 1}];
      succ = IntegerMatrix::hstack(succ, d1.block(0, d1.rows(), c0, rank({k, k + 1})));
    }
    const auto summary = analyze_map(succ, AbelianGroup::free(succ.cols()), AbelianGroup::free(succ.rows()), ring_);
    out.successive_kernel = summary.kernel;
    out.successive_cokernel = summary.cokernel;
    out.full_e2_0 = cokernel_group(d1, ring_);
    out.full_e2_1 = subquotient(kernel_basis(d1, ring_), d2, ring_);
    out.full_e2_2 = subquotient(kernel_basis(d2, ring_), d3, ring_);
    return out;
  }

 private:
  std::size_t uq() const { return static_cast<std::size_t>(q_); }
  std::size_t rank(const Pair& p) const { return basis_.at(p).cols(); }

  IntegerMatrix reduce(const IntegerMatrix& m) const {
    return ring_.ring == Ring::PrimeField ? reduce_mod(m, ring_.prime) : m;
  }

  // Offset of gap k's block inside the ambient sum over gaps i..j-1.
  std::size_t gap_row(std::size_t i, std::size_t k) const {
    std::size_t off = 0;
    for (std::size_t g = i; g < k; ++g) off += mid_[g];
    return off;
  }

  IntegerMatrix rows_of_gap(const IntegerMatrix& k, std::size_t i, std::size_t, std::size_t gap) const {
    return k.block(gap_row(i, gap), mid_[gap], 0, k.cols());
  }

  // Columns span the classes over gaps i..j-1 that agree at each interior
  // critical fiber: t_{k-1} x_{k-1} = s_k x_k.
  IntegerMatrix section_basis(std::size_t i, std::size_t j) const {
    const std::size_t width = gap_row(i, j);
    std::size_t height = 0;
    for (std::size_t c = i + 1; c < j; ++c) height += crit_[c];
    IntegerMatrix constraint(height, width);
    std::size_t row = 0;
    for (std::size_t c = i + 1; c < j; ++c) {
      put(constraint, row, gap_row(i, c - 1), t_[c - 1], +1);
      put(constraint, row, gap_row(i, c), s_[c], -1);
      row += crit_[c];
    }
    return reduce(kernel_basis(reduce(constraint), ring_));
  }

  // Restriction of the (from) section basis to the sub-interval `to`,
  // expressed in the basis of `to`.
  IntegerMatrix restrict_basis(const Pair& from, const Pair& to) const {
    const auto& k_from = basis_.at(from);
    const auto& k_to = basis_.at(to);
    const auto coords = k_from.block(gap_row(from.first, to.first), gap_row(to.first, to.second), 0, k_from.cols());
    GroupMapSolver solver(k_to, AbelianGroup::free(k_to.cols()), AbelianGroup::free(k_to.rows()), ring_);
    IntegerMatrix out(k_to.cols(), k_from.cols());
    for (std::size_t c = 0; c < coords.cols(); ++c) {
      const auto x = solver.solve(coords.column(c));
      if (!x) throw SolveFailure("restricted section class outside the sub-interval model");
      for (std::size_t r = 0; r < x->size(); ++r) {
        if ((*x)[r] != 0) out.set(r, c, (*x)[r]);
      }
    }
    return out;
  }

  const SectionModel& model_;
  int q_;
  Coefficients ring_;
  std::vector<std::size_t> crit_;
  std::vector<std::size_t> mid_;
  std::vector<IntegerMatrix> s_;
  std::vector<IntegerMatrix> t_;
  std::map<Pair, IntegerMatrix> basis_;
};

}  // namespace

TwoColumnReport verify_two_columns(const SectionModel& model) {
  TwoColumnReport report;
  for (int q = 0; q <= model.top_degree(); ++q) {
    if (model.ring().ring == Ring::Integers) {
      for (std::size_t i = 0; i < model.labels().size(); ++i) {
        if (!model.critical_fiber(i).homology[static_cast<std::size_t>(q)].torsion.empty()) {
          report.supported = false;
          report.reason = "torsion in a critical fiber (degree " + std::to_string(q) + ")";
          return report;
        }
      }
      for (std::size_t k = 0; k < model.gap_count(); ++k) {
        if (!model.section_space_homology(k, q).torsion.empty()) {
          report.supported = false;
          report.reason = "torsion in a section space (degree " + std::to_string(q) + ")";
          return report;
        }
      }
    }
  }
  for (int q = 0; q <= model.top_degree(); ++q) report.degrees.push_back(Verifier(model, q).run(report));
  return report;
}

}  // namespace critspec
