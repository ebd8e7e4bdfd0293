#include "critspec/complex/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

namespace critspec {

namespace {

struct Overflow {};

struct CheckedOps {
  using T = std::int64_t;
  static constexpr T kMin = std::numeric_limits<T>::min();

  T from(const Integer& x) const {
    if (!x.fits_slong_p()) throw Overflow{};
    const long v = x.get_si();
    if (v == kMin) throw Overflow{};
    return v;
  }
  Integer to_integer(T x) const { return Integer(static_cast<long>(x)); }
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T x) const { return x == 0; }
  bool is_unit(T x) const { return x == 1 || x == -1; }
  bool negative(T x) const { return x < 0; }
  bool norm_less(T a, T b) const { return std::llabs(a) < std::llabs(b); }
  T neg(T x) const { return -x; }
  // a + c * b
  T axpy(T a, T c, T b) const {
    T prod;
    T sum;
    if (__builtin_mul_overflow(c, b, &prod) || __builtin_add_overflow(a, prod, &sum) || sum == kMin) {
      throw Overflow{};
    }
    return sum;
  }
  T quot(T a, T b) const { return a / b; }
  bool divides(T b, T a) const { return a % b == 0; }
};

struct BigOps {
  using T = Integer;
  T from(const Integer& x) const { return x; }
  Integer to_integer(const T& x) const { return x; }
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(const T& x) const { return sgn(x) == 0; }
  bool is_unit(const T& x) const { return mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0; }
  bool negative(const T& x) const { return sgn(x) < 0; }
  bool norm_less(const T& a, const T& b) const { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  T neg(const T& x) const { return -x; }
  T axpy(const T& a, const T& c, const T& b) const { return a + c * b; }
  T quot(const T& a, const T& b) const {
    T q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  bool divides(const T& b, const T& a) const { return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0; }
};

struct FieldOps {
  using T = std::uint64_t;
  std::uint64_t p;

  T from(const Integer& x) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
    return r.get_ui();
  }
  Integer to_integer(T x) const { return Integer(static_cast<unsigned long>(x)); }
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T x) const { return x == 0; }
  bool is_unit(T x) const { return x != 0; }
  bool negative(T) const { return false; }
  bool norm_less(T, T) const { return false; }
  T neg(T x) const { return x == 0 ? 0 : p - x; }
  T axpy(T a, T c, T b) const { return (a + (c * b) % p) % p; }
  T inverse(T x) const {
    // Fermat: x^(p-2)
    T result = 1;
    T base = x % p;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) result = (result * base) % p;
      base = (base * base) % p;
      e >>= 1;
    }
    return result;
  }
  T quot(T a, T b) const { return (a * inverse(b)) % p; }
  bool divides(T, T) const { return true; }
};

template <class Ops>
class SmithEngine {
  using T = typename Ops::T;

 public:
  SmithEngine(const Ops& ops, const IntegerMatrix& a, SmithOptions options)
      : ops_(ops), m_(a.rows()), n_(a.cols()), options_(options), a_(m_ * n_, ops.zero()), row_nnz_(m_, 0) {
    a.for_each([&](std::size_t r, std::size_t c, const Integer& v) {
      a_[r * n_ + c] = ops_.from(v);
      ++row_nnz_[r];
    });
    if (options_.track_left) {
      u_ = identity(m_);
      u_inv_t_ = identity(m_);
    }
    if (options_.track_right) {
      v_t_ = identity(n_);
      v_inv_ = identity(n_);
    }
  }

  SmithDecomposition run() {
    const std::size_t limit = std::min(m_, n_);
    for (t_ = 0; t_ < limit; ++t_) {
      const std::size_t t = t_;
      if (!select_pivot(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m_; ++i) {
          if (ops_.is_zero(at(i, t))) continue;
          const T q = ops_.quot(at(i, t), at(t, t));
          if (!ops_.is_zero(q)) row_add(i, t, ops_.neg(q));
          if (!ops_.is_zero(at(i, t))) clean = false;
        }
        for (std::size_t j = t + 1; j < n_; ++j) {
          if (ops_.is_zero(at(t, j))) continue;
          const T q = ops_.quot(at(t, j), at(t, t));
          if (!ops_.is_zero(q)) col_add(j, t, ops_.neg(q));
          if (!ops_.is_zero(at(t, j))) clean = false;
        }
        if (!clean) {
          select_pivot(t);
          continue;
        }
        if (auto bad = find_non_multiple(t)) {
          row_add(t, *bad, ops_.one());
          continue;
        }
        break;
      }
      if (ops_.negative(at(t, t))) row_negate(t);
      if constexpr (requires(const Ops& o, T x) { o.inverse(x); }) {
        if (at(t, t) != ops_.one()) row_scale(t, ops_.inverse(at(t, t)));
      }
    }
    return finish(t_);
  }

 private:
  T& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  std::vector<T> identity(std::size_t k) const {
    std::vector<T> id(k * k, ops_.zero());
    for (std::size_t i = 0; i < k; ++i) id[i * k + i] = ops_.one();
    return id;
  }

  // Minimal norm over the active block, lexicographic (row, col) ties.
  // Rows without active entries are skipped via row_nnz_.
  bool select_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m_; ++i) {
      if (row_nnz_[i] == 0) continue;
      const T* row = &a_[i * n_];
      for (std::size_t j = t; j < n_; ++j) {
        const T& v = row[j];
        if (ops_.is_zero(v)) continue;
        if (!best || ops_.norm_less(v, at(best->first, best->second))) {
          best = {i, j};
          if (ops_.is_unit(v)) goto found;
        }
      }
    }
  found:
    if (!best) return false;
    if (best->first != t) row_swap(t, best->first);
    if (best->second != t) col_swap(t, best->second);
    return true;
  }

  std::optional<std::size_t> find_non_multiple(std::size_t t) {
    const T& pivot = at(t, t);
    if (ops_.is_unit(pivot)) return std::nullopt;
    for (std::size_t i = t + 1; i < m_; ++i) {
      if (row_nnz_[i] == 0) continue;
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (!ops_.is_zero(at(i, j)) && !ops_.divides(pivot, at(i, j))) return i;
      }
    }
    return std::nullopt;
  }

  // dst += c * src over k contiguous entries
  void axpy_range(T* dst, const T* src, const T& c, std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!ops_.is_zero(src[j])) dst[j] = ops_.axpy(dst[j], c, src[j]);
    }
  }

  // row_dst += c * row_src
  void row_add(std::size_t dst, std::size_t src, const T& c) {
    T* d = &a_[dst * n_];
    const T* s = &a_[src * n_];
    std::size_t count = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!ops_.is_zero(s[j])) d[j] = ops_.axpy(d[j], c, s[j]);
      if (j >= t_ && !ops_.is_zero(d[j])) ++count;
    }
    row_nnz_[dst] = count;
    if (options_.track_left) {
      axpy_range(&u_[dst * m_], &u_[src * m_], c, m_);
      // u_inv * E^-1: column src -= c * column dst
      axpy_range(&u_inv_t_[src * m_], &u_inv_t_[dst * m_], ops_.neg(c), m_);
    }
  }

  // col_dst += c * col_src
  void col_add(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t i = 0; i < m_; ++i) {
      const T& s = at(i, src);
      if (ops_.is_zero(s)) continue;
      T& d = at(i, dst);
      const bool was_zero = ops_.is_zero(d);
      d = ops_.axpy(d, c, s);
      if (dst >= t_) {
        if (was_zero && !ops_.is_zero(d)) ++row_nnz_[i];
        if (!was_zero && ops_.is_zero(d)) --row_nnz_[i];
      }
    }
    if (options_.track_right) {
      axpy_range(&v_t_[dst * n_], &v_t_[src * n_], c, n_);
      // F^-1 * v_inv: row src -= c * row dst
      axpy_range(&v_inv_[src * n_], &v_inv_[dst * n_], ops_.neg(c), n_);
    }
  }

  void row_swap(std::size_t i, std::size_t k) {
    std::swap_ranges(a_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                     a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_),
                     a_.begin() + static_cast<std::ptrdiff_t>(k * n_));
    std::swap(row_nnz_[i], row_nnz_[k]);
    if (options_.track_left) {
      swap_blocks(u_, i, k, m_);
      swap_blocks(u_inv_t_, i, k, m_);
    }
  }

  void col_swap(std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < m_; ++i) std::swap(at(i, j), at(i, k));
    if (options_.track_right) {
      swap_blocks(v_t_, j, k, n_);
      swap_blocks(v_inv_, j, k, n_);
    }
  }

  static void swap_blocks(std::vector<T>& data, std::size_t i, std::size_t k, std::size_t width) {
    std::swap_ranges(data.begin() + static_cast<std::ptrdiff_t>(i * width),
                     data.begin() + static_cast<std::ptrdiff_t>((i + 1) * width),
                     data.begin() + static_cast<std::ptrdiff_t>(k * width));
  }

  void row_negate(std::size_t t) {
    for (std::size_t j = 0; j < n_; ++j) at(t, j) = ops_.neg(at(t, j));
    if (options_.track_left) {
      for (std::size_t j = 0; j < m_; ++j) u_[t * m_ + j] = ops_.neg(u_[t * m_ + j]);
      for (std::size_t i = 0; i < m_; ++i) u_inv_t_[t * m_ + i] = ops_.neg(u_inv_t_[t * m_ + i]);
    }
  }

  // Field only: row_t *= c, c invertible.
  void row_scale(std::size_t t, const T& c) {
    const T c_inv = ops_.inverse(c);
    for (std::size_t j = 0; j < n_; ++j) at(t, j) = ops_.axpy(ops_.zero(), c, at(t, j));
    if (options_.track_left) {
      for (std::size_t j = 0; j < m_; ++j) u_[t * m_ + j] = ops_.axpy(ops_.zero(), c, u_[t * m_ + j]);
      for (std::size_t i = 0; i < m_; ++i) u_inv_t_[t * m_ + i] = ops_.axpy(ops_.zero(), c_inv, u_inv_t_[t * m_ + i]);
    }
  }

  // `transposed` data holds the matrix column by column.
  IntegerMatrix to_matrix(const std::vector<T>& dense, std::size_t rows, std::size_t cols, bool transposed) const {
    IntegerMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const T& v = transposed ? dense[j * rows + i] : dense[i * cols + j];
        if (!ops_.is_zero(v)) out.set(i, j, ops_.to_integer(v));
      }
    }
    return out;
  }

  SmithDecomposition finish(std::size_t rank) {
    SmithDecomposition out;
    out.rank = rank;
    out.d = IntegerMatrix(m_, n_);
    for (std::size_t t = 0; t < rank; ++t) {
      const Integer v = ops_.to_integer(at(t, t));
      out.d.set(t, t, v);
      out.diagonal.push_back(v);
    }
    if (options_.track_left) {
      out.u = to_matrix(u_, m_, m_, false);
      out.u_inv = to_matrix(u_inv_t_, m_, m_, true);
    }
    if (options_.track_right) {
      out.v = to_matrix(v_t_, n_, n_, true);
      out.v_inv = to_matrix(v_inv_, n_, n_, false);
    }
    return out;
  }

  Ops ops_;
  std::size_t m_;
  std::size_t n_;
  SmithOptions options_;
  std::vector<T> a_;
  // nonzeros of each row in the active columns t_.. n_-1
  std::vector<std::size_t> row_nnz_;
  std::size_t t_ = 0;
  // u and v_inv are updated by row operations and stored by rows; u_inv and
  // v are updated by column operations and stored by columns.
  std::vector<T> u_, u_inv_t_, v_t_, v_inv_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a, SmithOptions options) {
  try {
    return SmithEngine<CheckedOps>(CheckedOps{}, a, options).run();
  } catch (const Overflow&) {
    return SmithEngine<BigOps>(BigOps{}, a, options).run();
  }
}

SmithDecomposition smith_normal_form_mod(const IntegerMatrix& a, std::uint32_t prime,
                                         SmithOptions options) {
  if (!is_prime(prime)) throw std::invalid_argument("modulus " + std::to_string(prime) + " is not prime");
  return SmithEngine<FieldOps>(FieldOps{prime}, a, options).run();
}

std::size_t rank_over_integers(const IntegerMatrix& a) {
  return smith_normal_form(a, {.track_left = false, .track_right = false}).rank;
}

std::size_t rank_mod(const IntegerMatrix& a, std::uint32_t prime) {
  return smith_normal_form_mod(a, prime, {.track_left = false, .track_right = false}).rank;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace critspec
