#pragma once

#include <random>

#include "fpsd/series.hpp"
#include "fpsd/symbols.hpp"
#include "fpsd/weyl.hpp"

namespace fpsd::testing {

// Deterministic generator shared by the randomized suites.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int range = 5) {
    int num = integer(-range, range);
    int den = integer(1, 3);
    return make_rational(num, den);
  }

  // Random polynomial with up to `terms` terms of degree in [lo, hi].
  Series series(int n, int hi, int prec, int terms = 6, int lo = 0) {
    Series s(n, prec);
    for (int k = 0; k < terms; ++k) {
      Exponent e(n, 0);
      int deg = integer(lo, hi);
      for (int d = 0; d < deg; ++d) e[integer(0, n - 1)] += 1;
      s.add_term(e, rational());
    }
    return s;
  }

  Series unit(int n, int hi, int prec) {
    Series s = series(n, hi, prec, 5, 1);
    s.add_term(Exponent(n, 0), make_rational(integer(1, 4)) * (integer(0, 1) ? 1 : -1));
    return s;
  }

  // Random operator with polynomial coefficients and order <= max_order.
  DiffOp op(int n, int max_order, int coeff_deg, int prec = precision::kExact, int terms = 3) {
    DiffOp out(n);
    for (int k = 0; k < terms; ++k) {
      Exponent a(n, 0);
      const int ord = integer(0, max_order);
      for (int d = 0; d < ord; ++d) a[integer(0, n - 1)] += 1;
      out.add_term(a, series(n, coeff_deg, prec, 3));
    }
    return out;
  }

  Symbol symbol(int n, int max_zdeg, int coeff_deg, int prec = precision::kExact, int terms = 3) {
    Symbol out(n);
    for (int k = 0; k < terms; ++k) {
      Exponent z(n, 0);
      const int deg = integer(0, max_zdeg);
      for (int d = 0; d < deg; ++d) z[integer(0, n - 1)] += 1;
      out.add_term(z, series(n, coeff_deg, prec, 3));
    }
    return out;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

inline Series poly(int n, std::initializer_list<std::pair<Exponent, long>> terms,
                   int prec = precision::kExact) {
  Series s(n, prec);
  for (const auto& [e, c] : terms) s.add_term(e, make_rational(c));
  return s;
}

inline Series var(int n, int i, int prec = precision::kExact) { return Series::variable(n, i - 1, prec); }

}  // namespace fpsd::testing
