#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critspec/complex/numbers.hpp"

namespace critspec {

// Sparse matrix of arbitrary-precision integers. Absent positions are zero;
// stored entries are never zero. Entries are keyed column-major so that a
// column is a contiguous range of the underlying map.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static IntegerMatrix identity(std::size_t n);
  // Dense row-major initializer, mostly for tests and golden data.
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }

  Integer at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, const Integer& value);
  void add(std::size_t row, std::size_t col, const Integer& value);

  // Visits nonzero entries in column-major order: f(row, col, value).
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [key, value] : entries_) f(key.second, key.first, value);
  }
  // Visits nonzero entries of one column: f(row, value).
  template <class F>
  void for_each_in_column(std::size_t col, F&& f) const {
    for (auto it = entries_.lower_bound({col, 0}); it != entries_.end() && it->first.first == col;
         ++it) {
      f(it->first.second, it->second);
    }
  }

  std::vector<Integer> column(std::size_t col) const;
  std::vector<Integer> apply(std::span<const Integer> x) const;

  IntegerMatrix transpose() const;
  IntegerMatrix block(std::size_t row0, std::size_t rows, std::size_t col0, std::size_t cols) const;
  static IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right);
  static IntegerMatrix vstack(const IntegerMatrix& top, const IntegerMatrix& bottom);

  bool is_zero() const { return entries_.empty(); }
  std::vector<std::vector<Integer>> to_dense() const;
  std::string to_string() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check_bounds(std::size_t row, std::size_t col) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Integer> entries_;  // (col, row) -> value
};

}  // namespace critspec
