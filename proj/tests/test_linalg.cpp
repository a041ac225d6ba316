#include "doctest.h"
#include "fpsd/linalg.hpp"
#include "support.hpp"

using namespace fpsd;

namespace {

SparseMatrix from_dense(const DenseMatrix& d) {
  SparseMatrix m(0, d.empty() ? 0 : d[0].size());
  for (const auto& row : d) {
    SparseRow r;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) r.emplace(c, row[c]);
    }
    m.append_row(r);
  }
  return m;
}

}  // namespace

TEST_CASE("rank and nullspace of a small matrix") {
  DenseMatrix d = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  SparseMatrix m = from_dense(d);
  CHECK(rank(m) == 2);
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  Vector prod = m.multiply(ns[0]);
  for (const auto& v : prod) CHECK(v == 0);
}

TEST_CASE("solve returns nullopt on inconsistent systems") {
  SparseMatrix m = from_dense({{1, 1}, {2, 2}});
  CHECK_FALSE(solve(m, {1, 3}).has_value());
  auto x = solve(m, {1, 2});
  REQUIRE(x.has_value());
  CHECK(m.multiply(*x) == Vector{1, 2});
}

TEST_CASE("random rank matches dense determinant") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 5);
    DenseMatrix d(n, std::vector<Rational>(n));
    for (auto& row : d)
      for (auto& v : row) v = gen.integer(0, 2) ? gen.rational(3) : Rational(0);
    const bool full = determinant(d) != 0;
    CHECK((rank(from_dense(d)) == static_cast<std::size_t>(n)) == full);
    if (full) {
      auto inv = inverse(d);
      REQUIRE(inv.has_value());
      CHECK(from_dense(d).multiply(from_dense(*inv)).transpose().multiply(Vector(n, 1)) ==
            Vector(n, 1));
    }
  }
}

TEST_CASE("row space complement") {
  SparseMatrix m = from_dense({{0, 1, 1}, {0, 2, 2}});
  CHECK(row_space_complement(m) == std::vector<std::size_t>{0, 2});
}
