#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpsd/errors.hpp"
#include "fpsd/rational.hpp"

namespace fpsd {

using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

// Graded lexicographic order: lower total degree first; within a degree,
// larger powers of earlier variables first (x1^2 < x1*x2 < x2^2).
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// All exponent vectors of `num_vars` variables with total degree in [lo, hi],
// in graded lexicographic order.
std::vector<Exponent> monomials_up_to(int num_vars, int hi, int lo = 0);

// Precision bookkeeping. A precision p means every coefficient of total degree
// <= p is exact; p == -1 means nothing is known; kExact means a polynomial
// known to all orders.
namespace precision {
inline constexpr int kExact = std::numeric_limits<int>::max();
inline constexpr int kUnknown = -1;
int sub(int p, int k);
int min(int a, int b);
std::string to_string(int p);
}  // namespace precision

// Truncated multivariate formal power series over Q.
class Series {
 public:
  using Terms = std::map<Exponent, Rational, GrlexLess>;

  Series() = default;
  Series(int num_vars, int precision);

  static Series zero(int num_vars, int precision = precision::kExact);
  static Series constant(int num_vars, const Rational& c, int precision = precision::kExact);
  // x_{axis+1}; axis is 0-based.
  static Series variable(int num_vars, int axis, int precision = precision::kExact);
  static Series monomial(int num_vars, const Exponent& e, const Rational& c,
                         int precision = precision::kExact);

  int num_vars() const { return num_vars_; }
  int precision() const { return precision_; }
  bool is_exact() const { return precision_ == precision::kExact; }
  const Terms& terms() const { return terms_; }

  Rational coefficient(const Exponent& e) const;
  Rational constant_term() const;
  // Zero to the stated precision.
  bool is_zero() const { return terms_.empty(); }
  // Lowest total degree carrying a nonzero coefficient; precision + 1 when the
  // series vanishes to precision (kExact for the exact zero).
  int order() const;
  // Highest total degree present (-1 for zero).
  int degree() const;

  // Adds c * x^e, dropping it when deg(e) exceeds the precision.
  void add_term(const Exponent& e, const Rational& c);

  Series truncated(int new_precision) const;
  Series with_precision(int new_precision) const { return truncated(new_precision); }

  Series operator-() const;
  Series& operator+=(const Series& b);
  Series& operator-=(const Series& b);
  Series& operator*=(const Rational& c);

  friend bool operator==(const Series& a, const Series& b) = default;

 private:
  int num_vars_ = 0;
  int precision_ = precision::kExact;
  Terms terms_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(Series a, const Rational& c);
Series operator*(const Rational& c, Series a);

enum class ArithOp { Add, Sub, Mul };
Series series_arithmetic(const Series& a, const Series& b, ArithOp op);

Series power(const Series& a, int k);

// Multiplicative inverse of a series with nonzero constant term.
Series invert_unit(const Series& a);

// exp(a) for a with zero constant term.
Series exp_series(const Series& a);

// d/dx_{axis+1}; precision drops by one.
Series partial_derivative(const Series& a, int axis);

// Coefficient of x_n^j as a series in the first n-1 variables.
Series xn_coefficient(const Series& f, int j);

// Sets x_{axis+1} = 0 and removes that variable.
Series restrict_to_zero(const Series& f, int axis);

// Inverse of restrict_to_zero: inserts a new variable at position `axis`.
Series insert_variable(const Series& f, int axis);

// R_{n-1} -> R, appending x_n.
Series embed_last(const Series& f);

struct RegularityOrder {
  std::optional<int> order;     // least d with a nonzero x_n^d term in f(0,..,0,x_n)
  int certified_to_precision;  // a "none" answer is only valid up to here
};

RegularityOrder is_xn_regular(const Series& f);

// Canonical graded-lex text. Truncated series end in "+ O(p+1)".
std::string to_string(const Series& s);
std::string monomial_to_string(const Exponent& e, char var = 'x');

// Appends c * mono to a printed sum. Single exact terms print as r*x^a*mono;
// anything else is parenthesized unless it is the whole expression.
void append_scaled_term(std::string& out, const Series& c, const std::string& mono, bool alone);

}  // namespace fpsd
