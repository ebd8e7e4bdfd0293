#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "critspec/complex/integer_matrix.hpp"
#include "critspec/complex/simplicial_complex.hpp"

namespace critspec {

// Shrinks the simplicial chain complex in degrees 0..top by cancelling pairs
// (a, b) with <da, b> = +-1. The result is chain homotopy equivalent to the
// original; project() and lift() are the two comparison maps, and
// project(lift(x)) = x. Coefficients are checked 64-bit integers; on
// overflow the constructor throws ChainReduction::Overflow.
class ChainReduction {
 public:
  struct Overflow {};

  ChainReduction(const SimplicialComplex& c, int top);

  // Surviving cells of degree k, in original order.
  const std::vector<std::uint32_t>& cells(int k) const { return survivors_[k]; }
  // Reduced boundary: rows = cells(k-1), columns = cells(k).
  IntegerMatrix boundary(int k) const;
  // cells(k).size() x c.size(k)
  IntegerMatrix projection(int k) const;
  // A reduced k-chain as a chain of the original complex.
  std::vector<Integer> lift(int k, std::span<const Integer> reduced) const;

 private:
  using Column = std::map<std::uint32_t, std::int64_t>;

  struct Step {
    int k = 0;            // a has degree k + 1, b has degree k
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::int64_t eps = 1;  // <da, b>
    std::vector<std::pair<std::uint32_t, std::int64_t>> boundary_a;
    std::vector<std::pair<std::uint32_t, std::int64_t>> row_b;  // <dx, b> for x != a
  };

  bool reduce_once(int k);
  void cancel(int k, std::uint32_t a, std::uint32_t b);

  int top_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Column>> columns_;                    // columns_[k][x] = dx, k >= 1
  std::vector<std::vector<std::set<std::uint32_t>>> cofaces_;  // cofaces_[k][y] in degree k + 1
  std::vector<std::vector<bool>> alive_;
  std::vector<std::vector<std::uint32_t>> survivors_;
  std::vector<Step> steps_;
};

}  // namespace critspec
