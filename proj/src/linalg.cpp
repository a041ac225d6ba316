#include "fpsd/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpsd {

namespace {

using IntRow = std::map<std::size_t, Integer>;

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  const bool flip = row.begin()->second < 0;
  if (g != 1 || flip) {
    if (flip) g = -g;
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

IntRow to_integer_row(const SparseRow& row) {
  Integer den = 1;
  for (const auto& [c, v] : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  for (const auto& [c, v] : row) {
    Integer scaled = den / v.get_den();
    scaled *= v.get_num();
    out.emplace(c, std::move(scaled));
  }
  make_primitive(out);
  return out;
}

// row <- a*row - b*pivot_row, where a is the pivot entry and b the entry of row
// in the pivot column; the pivot column cancels.
void eliminate(IntRow& row, const IntRow& pivot_row, std::size_t col) {
  auto it = row.find(col);
  if (it == row.end()) return;
  const Integer a = pivot_row.at(col);
  const Integer b = it->second;
  if (a != 1) {
    for (auto& [c, v] : row) v *= a;
  }
  for (const auto& [c, v] : pivot_row) {
    auto [slot, inserted] = row.try_emplace(c, 0);
    slot->second -= b * v;
    if (slot->second == 0) row.erase(slot);
  }
  make_primitive(row);
}

}  // namespace

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_.size() || c >= cols_) throw std::out_of_range("SparseMatrix::add");
  if (value == 0) return;
  auto [it, inserted] = rows_[r].try_emplace(c, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) rows_[r].erase(it);
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = row.find(c);
  return it == row.end() ? Rational(0) : it->second;
}

std::size_t SparseMatrix::append_row(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= cols_) throw std::out_of_range("SparseMatrix::append_row");
    it = it->second == 0 ? row.erase(it) : std::next(it);
  }
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

Vector SparseMatrix::multiply(const Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
  Vector out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational acc = 0;
    for (const auto& [c, v] : rows_[r]) acc += v * x[c];
    out[r] = acc;
  }
  return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  if (rhs.rows() != cols_) throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
  SparseMatrix out(rows_.size(), rhs.cols());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [k, v] : rows_[r]) {
      for (const auto& [c, w] : rhs.row(k)) out.add(r, c, v * w);
    }
  }
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix out(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, v] : rows_[r]) out.rows_[c].emplace(r, v);
  }
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const SparseRow& r) { return r.empty(); });
}

Echelon echelon(const SparseMatrix& m, bool reduced) {
  Echelon out;
  out.cols = m.cols();
  std::map<std::size_t, IntRow> basis;  // pivot column -> row
  for (std::size_t r = 0; r < m.rows(); ++r) {
    IntRow row = to_integer_row(m.row(r));
    // Eliminate every column that already carries a pivot, in increasing order.
    std::size_t pos = 0;
    for (auto lead = row.begin(); lead != row.end(); lead = row.lower_bound(pos)) {
      const std::size_t col = lead->first;
      pos = col + 1;
      auto pit = basis.find(col);
      if (pit != basis.end()) eliminate(row, pit->second, col);
    }
    if (row.empty()) continue;
    const std::size_t lead_col = row.begin()->first;
    if (reduced) {
      for (auto& [c, other] : basis) eliminate(other, row, lead_col);
    }
    basis.emplace(lead_col, std::move(row));
  }
  for (auto& [c, row] : basis) {
    out.pivot_cols.push_back(c);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::size_t rank(const SparseMatrix& m) { return echelon(m, false).rank(); }

std::vector<Vector> nullspace(const SparseMatrix& m) {
  const Echelon e = echelon(m, true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      auto it = e.rows[i].find(f);
      if (it == e.rows[i].end()) continue;
      const std::size_t p = e.pivot_cols[i];
      Rational val(it->second, e.rows[i].at(p));
      val.canonicalize();
      v[p] = -val;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vector> solve(const SparseMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  const std::size_t aug = a.cols();
  SparseMatrix m(0, aug + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow row = a.row(r);
    if (b[r] != 0) row.emplace(aug, b[r]);
    m.append_row(std::move(row));
  }
  const Echelon e = echelon(m, true);
  Vector x(aug, Rational(0));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const std::size_t p = e.pivot_cols[i];
    if (p == aug) return std::nullopt;
    auto it = e.rows[i].find(aug);
    if (it == e.rows[i].end()) continue;
    Rational val(it->second, e.rows[i].at(p));
    val.canonicalize();
    x[p] = val;
  }
  return x;
}

std::vector<std::size_t> row_space_complement(const SparseMatrix& m) {
  const Echelon e = echelon(m, false);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) out.push_back(c);
  }
  return out;
}

Rational determinant(DenseMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

DenseMatrix identity_matrix(std::size_t n) {
  DenseMatrix out(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

std::optional<DenseMatrix> inverse(const DenseMatrix& input) {
  const std::size_t n = input.size();
  DenseMatrix m = input;
  DenseMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational scale = m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] /= scale;
      inv[col][c] /= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= factor * m[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace fpsd
