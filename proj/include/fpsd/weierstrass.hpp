#pragma once

#include <vector>

#include "fpsd/linalg.hpp"
#include "fpsd/series.hpp"

namespace fpsd {

// g = quotient * f + sum_i remainder[i] * x_n^i with each remainder[i] a
// series in x_1..x_{n-1}.
struct DivisionResult {
  Series quotient;
  std::vector<Series> remainder;
  int order = 0;  // x_n-order d of the divisor
};

// Weierstrass division by an x_n-regular f.
//
// Output precisions are certified: with weights w(x_n) = 1 and w(x_i) = c for
// i < n, where c >= 1 strictly exceeds (d - e)/|a| for every term x'^a x_n^e
// (e < d) of f, the division is continuous for the w-adic filtration. Unknown
// input terms have weight > N = min(prec g, prec f), so a remainder monomial is
// exact when its weight is below N + 1 and a quotient monomial when its weight
// is below N + 1 - d. Two exact inputs give an exact answer when the iteration
// terminates; otherwise InsufficientPrecision.
DivisionResult weierstrass_divide(const Series& g, const Series& f);

struct WeierstrassForm {
  Series unit;
  int degree = 0;
  std::vector<Series> tail;  // b_0..b_{d-1} in n-1 variables
  int precision = 0;         // precision of unit * polynomial() == f

  // x_n^d + sum_i b_i x_n^i as a series in n variables.
  Series polynomial() const;
  Series reconstruct() const { return unit * polynomial(); }
};

WeierstrassForm weierstrass_prepare(const Series& f);

// x_i -> sum_j matrix[i][j] x_j.
class LinearSubstitution {
 public:
  explicit LinearSubstitution(DenseMatrix matrix);

  static LinearSubstitution identity(int n);
  static LinearSubstitution swap(int n, int i, int j);

  int num_vars() const { return static_cast<int>(matrix_.size()); }
  const DenseMatrix& matrix() const { return matrix_; }
  LinearSubstitution inverse() const;

  friend bool operator==(const LinearSubstitution&, const LinearSubstitution&) = default;

 private:
  DenseMatrix matrix_;
};

// f(Lx); precision is preserved because the substitution is homogeneous.
Series apply_linear_substitution(const Series& f, const LinearSubstitution& l);

struct RegularizingResult {
  LinearSubstitution substitution;
  int order;
  std::string strategy;  // "identity", "swap", or "shear"
};

// Tries, in order: the identity, swaps x_i <-> x_n (i = 1..n-1), then shears
// x_i -> x_i + c_i x_n with c_i enumerated by max |c_i| (1..shear_bound) and
// within a radius in the order 0, 1, -1, 2, -2, ...
RegularizingResult find_regularizing_substitution(const Series& f, int shear_bound = 3);

std::string to_string(const LinearSubstitution& l);

}  // namespace fpsd
