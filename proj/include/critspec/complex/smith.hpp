#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "critspec/complex/integer_matrix.hpp"

namespace critspec {

struct SmithOptions {
  bool track_left = true;   // compute u and u_inv
  bool track_right = true;  // compute v and v_inv
};

// u * a * v = d with u, v unimodular (invertible over the prime field for the
// modular variant). d is diagonal with d_0 | d_1 | ... nonnegative and zeros
// last. Untracked factors are left as empty 0x0 matrices.
struct SmithDecomposition {
  IntegerMatrix d;
  IntegerMatrix u;
  IntegerMatrix v;
  IntegerMatrix u_inv;
  IntegerMatrix v_inv;
  std::size_t rank = 0;
  std::vector<Integer> diagonal;  // the `rank` nonzero diagonal entries
};

// Pivot rule: entry of minimal absolute value, ties broken by (row, col) in
// the current working order. Runs on checked 64-bit integers first and
// restarts with arbitrary precision on overflow; the result is identical.
SmithDecomposition smith_normal_form(const IntegerMatrix& a, SmithOptions options = {});

// Same elimination over Z/p. Entries of all returned matrices lie in [0, p)
// and every nonzero diagonal entry is 1.
SmithDecomposition smith_normal_form_mod(const IntegerMatrix& a, std::uint32_t prime,
                                         SmithOptions options = {});

std::size_t rank_over_integers(const IntegerMatrix& a);
std::size_t rank_mod(const IntegerMatrix& a, std::uint32_t prime);

bool is_prime(std::uint64_t n);

}  // namespace critspec
