#include "critspec/complex/integer_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace critspec {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.emplace(std::pair{i, i}, Integer(1));
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] != 0) m.set(i, j, Integer(rows[i][j]));
    }
  }
  return m;
}

void IntegerMatrix::check_bounds(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) {
    throw std::out_of_range("matrix position (" + std::to_string(row) + ", " +
                            std::to_string(col) + ") outside " + std::to_string(rows_) + "x" +
                            std::to_string(cols_));
  }
}

Integer IntegerMatrix::at(std::size_t row, std::size_t col) const {
  check_bounds(row, col);
  auto it = entries_.find({col, row});
  return it == entries_.end() ? Integer(0) : it->second;
}

void IntegerMatrix::set(std::size_t row, std::size_t col, const Integer& value) {
  check_bounds(row, col);
  if (value == 0) {
    entries_.erase({col, row});
  } else {
    entries_[{col, row}] = value;
  }
}

void IntegerMatrix::add(std::size_t row, std::size_t col, const Integer& value) {
  check_bounds(row, col);
  if (value == 0) return;
  auto [it, inserted] = entries_.try_emplace({col, row}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

std::vector<Integer> IntegerMatrix::column(std::size_t col) const {
  std::vector<Integer> out(rows_);
  for_each_in_column(col, [&](std::size_t r, const Integer& v) { out[r] = v; });
  return out;
}

std::vector<Integer> IntegerMatrix::apply(std::span<const Integer> x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<Integer> y(rows_);
  for (const auto& [key, value] : entries_) {
    if (x[key.first] != 0) y[key.second] += value * x[key.first];
  }
  return y;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (const auto& [key, value] : entries_) t.entries_.emplace(std::pair{key.second, key.first}, value);
  return t;
}

IntegerMatrix IntegerMatrix::block(std::size_t row0, std::size_t rows, std::size_t col0,
                                   std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_) throw std::out_of_range("block outside matrix");
  IntegerMatrix b(rows, cols);
  for (auto it = entries_.lower_bound({col0, 0}); it != entries_.end() && it->first.first < col0 + cols;
       ++it) {
    const auto r = it->first.second;
    if (r >= row0 && r < row0 + rows) {
      b.entries_.emplace(std::pair{it->first.first - col0, r - row0}, it->second);
    }
  }
  return b;
}

IntegerMatrix IntegerMatrix::hstack(const IntegerMatrix& left, const IntegerMatrix& right) {
  if (left.rows_ != right.rows_) throw std::invalid_argument("hstack row mismatch");
  IntegerMatrix m(left.rows_, left.cols_ + right.cols_);
  m.entries_ = left.entries_;
  for (const auto& [key, value] : right.entries_) {
    m.entries_.emplace_hint(m.entries_.end(), std::pair{key.first + left.cols_, key.second}, value);
  }
  return m;
}

IntegerMatrix IntegerMatrix::vstack(const IntegerMatrix& top, const IntegerMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw std::invalid_argument("vstack column mismatch");
  IntegerMatrix m(top.rows_ + bottom.rows_, top.cols_);
  m.entries_ = top.entries_;
  for (const auto& [key, value] : bottom.entries_) {
    m.entries_.emplace(std::pair{key.first, key.second + top.rows_}, value);
  }
  return m;
}

std::vector<std::vector<Integer>> IntegerMatrix::to_dense() const {
  std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_));
  for (const auto& [key, value] : entries_) d[key.second][key.first] = value;
  return d;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream out;
  const auto d = to_dense();
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << d[i][j].get_str();
  }
  out << "]";
  return out.str();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  IntegerMatrix c(a.rows_, b.cols_);
  for (const auto& [bkey, bval] : b.entries_) {
    const auto k = bkey.second;
    const auto j = bkey.first;
    a.for_each_in_column(k, [&](std::size_t i, const Integer& aval) { c.add(i, j, aval * bval); });
  }
  return c;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  IntegerMatrix c = a;
  for (const auto& [key, value] : b.entries_) c.add(key.second, key.first, -value);
  return c;
}

}  // namespace critspec
