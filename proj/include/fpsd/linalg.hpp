#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fpsd/rational.hpp"

namespace fpsd {

using SparseRow = std::map<std::size_t, Rational>;
using Vector = std::vector<Rational>;
using DenseMatrix = std::vector<std::vector<Rational>>;

// Row-major sparse matrix over Q. Zero entries are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  void add(std::size_t r, std::size_t c, const Rational& value);
  Rational at(std::size_t r, std::size_t c) const;
  const SparseRow& row(std::size_t r) const { return rows_.at(r); }
  std::size_t append_row(SparseRow row);

  Vector multiply(const Vector& x) const;
  SparseMatrix multiply(const SparseMatrix& rhs) const;
  SparseMatrix transpose() const;
  bool is_zero() const;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

// Reduced row echelon data produced by fraction-free elimination. Each stored
// row is an integer row with content 1; pivots are the leading columns.
struct Echelon {
  std::size_t cols = 0;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::map<std::size_t, Integer>> rows;

  std::size_t rank() const { return pivot_cols.size(); }
};

Echelon echelon(const SparseMatrix& m, bool reduced);

std::size_t rank(const SparseMatrix& m);

// Basis of {x : m x = 0}, one vector per non-pivot column.
std::vector<Vector> nullspace(const SparseMatrix& m);

// Particular solution with all free variables set to zero, or nullopt when the
// system is inconsistent.
std::optional<Vector> solve(const SparseMatrix& a, const Vector& b);

// Coordinates (columns) that are not pivots of the row space of m; their unit
// vectors span a complement of the row space.
std::vector<std::size_t> row_space_complement(const SparseMatrix& m);

Rational determinant(DenseMatrix m);
std::optional<DenseMatrix> inverse(const DenseMatrix& m);
DenseMatrix identity_matrix(std::size_t n);

}  // namespace fpsd
