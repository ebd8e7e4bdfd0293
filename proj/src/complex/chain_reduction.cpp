#include "critspec/complex/chain_reduction.hpp"

#include <limits>
#include <optional>

namespace critspec {

namespace {

std::int64_t checked_axpy(std::int64_t a, std::int64_t c, std::int64_t b) {
  std::int64_t prod, sum;
  if (__builtin_mul_overflow(c, b, &prod) || __builtin_add_overflow(a, prod, &sum) ||
      sum == std::numeric_limits<std::int64_t>::min()) {
    throw ChainReduction::Overflow{};
  }
  return sum;
}

std::int64_t to_small(const Integer& x) {
  if (!x.fits_slong_p()) throw ChainReduction::Overflow{};
  return x.get_si();
}

}  // namespace

ChainReduction::ChainReduction(const SimplicialComplex& c, int top)
    : top_(std::min(top, c.dimension())),
      sizes_(top_ + 1),
      columns_(top_ + 1),
      cofaces_(top_ + 1),
      alive_(top_ + 1),
      survivors_(top_ + 1) {
  for (int k = 0; k <= top_; ++k) {
    sizes_[k] = c.size(k);
    alive_[k].assign(sizes_[k], true);
    columns_[k].resize(sizes_[k]);
    cofaces_[k].resize(sizes_[k]);
  }
  for (int k = 1; k <= top_; ++k) {
    boundary_matrix(c, k).for_each([&](std::size_t r, std::size_t col, const Integer& v) {
      columns_[k][col][static_cast<std::uint32_t>(r)] = to_small(v);
      cofaces_[k - 1][r].insert(static_cast<std::uint32_t>(col));
    });
  }
  for (int k = 0; k < top_; ++k) {
    while (reduce_once(k)) {
    }
  }
  for (int k = 0; k <= top_; ++k) {
    for (std::uint32_t x = 0; x < sizes_[k]; ++x) {
      if (alive_[k][x]) survivors_[k].push_back(x);
    }
  }
}

// One sweep over the (k+1)-cells; the partner is the unit entry with the
// fewest cofaces, which keeps fill-in low.
bool ChainReduction::reduce_once(int k) {
  bool changed = false;
  for (std::uint32_t a = 0; a < sizes_[k + 1]; ++a) {
    if (!alive_[k + 1][a]) continue;
    std::optional<std::uint32_t> best;
    for (const auto& [b, v] : columns_[k + 1][a]) {
      if (v != 1 && v != -1) continue;
      if (!best || cofaces_[k][b].size() < cofaces_[k][*best].size()) best = b;
    }
    if (!best) continue;
    cancel(k, a, *best);
    changed = true;
  }
  return changed;
}

void ChainReduction::cancel(int k, std::uint32_t a, std::uint32_t b) {
  auto& cols = columns_[k + 1];
  Step step;
  step.k = k;
  step.a = a;
  step.b = b;
  step.eps = cols[a].at(b);
  step.boundary_a.assign(cols[a].begin(), cols[a].end());

  const std::vector<std::uint32_t> others(cofaces_[k][b].begin(), cofaces_[k][b].end());
  for (auto x : others) {
    if (x == a) continue;
    const std::int64_t beta = cols[x].at(b);
    step.row_b.emplace_back(x, beta);
    // dx -= (beta / eps) da, and eps = +-1
    const std::int64_t f = -beta * step.eps;
    for (const auto& [y, v] : step.boundary_a) {
      auto [it, inserted] = cols[x].try_emplace(y, 0);
      it->second = checked_axpy(it->second, f, v);
      if (it->second == 0) {
        cols[x].erase(it);
        cofaces_[k][y].erase(x);
      } else if (inserted) {
        cofaces_[k][y].insert(x);
      }
    }
  }

  // drop a, as a column here and as a row one degree up
  for (const auto& [y, v] : step.boundary_a) cofaces_[k][y].erase(a);
  cols[a].clear();
  if (k + 2 <= top_) {
    for (auto z : cofaces_[k + 1][a]) columns_[k + 2][z].erase(a);
  }
  if (k + 1 < static_cast<int>(cofaces_.size())) cofaces_[k + 1][a].clear();
  alive_[k + 1][a] = false;

  // drop b
  if (k >= 1) {
    for (const auto& [w, v] : columns_[k][b]) cofaces_[k - 1][w].erase(b);
    columns_[k][b].clear();
  }
  alive_[k][b] = false;
  steps_.push_back(std::move(step));
}

IntegerMatrix ChainReduction::boundary(int k) const {
  const auto& rows = survivors_[k - 1];
  const auto& cols = survivors_[k];
  std::vector<std::size_t> row_index(sizes_[k - 1]);
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  IntegerMatrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [y, v] : columns_[k][cols[j]]) out.set(row_index[y], j, Integer(static_cast<long>(v)));
  }
  return out;
}

IntegerMatrix ChainReduction::projection(int k) const {
  // Rows of the composite projection, built by replaying the steps.
  std::vector<Column> rows(sizes_[k]);
  for (std::uint32_t i = 0; i < sizes_[k]; ++i) rows[i][i] = 1;
  for (const auto& s : steps_) {
    if (s.k == k) {
      // pi(c) = c - (c_b / eps) da
      const Column row_b = rows[s.b];
      for (const auto& [y, v] : s.boundary_a) {
        if (y == s.b) continue;
        auto& row = rows[y];
        for (const auto& [j, w] : row_b) {
          auto [it, inserted] = row.try_emplace(j, 0);
          it->second = checked_axpy(it->second, -v * s.eps, w);
          if (it->second == 0) row.erase(it);
        }
      }
      rows[s.b].clear();
    } else if (s.k + 1 == k) {
      rows[s.a].clear();
    }
  }
  const auto& keep = survivors_[k];
  IntegerMatrix out(keep.size(), sizes_[k]);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (const auto& [j, w] : rows[keep[i]]) out.set(i, j, Integer(static_cast<long>(w)));
  }
  return out;
}

std::vector<Integer> ChainReduction::lift(int k, std::span<const Integer> reduced) const {
  std::vector<Integer> g(sizes_[k]);
  for (std::size_t i = 0; i < reduced.size(); ++i) g[survivors_[k][i]] = reduced[i];
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (it->k + 1 != k) continue;
    // iota(x) = x - (<dx, b> / eps) a
    Integer s = 0;
    for (const auto& [x, beta] : it->row_b) {
      if (sgn(g[x]) != 0) s += g[x] * static_cast<long>(beta);
    }
    g[it->a] = -s * static_cast<long>(it->eps);
  }
  return g;
}

}  // namespace critspec
