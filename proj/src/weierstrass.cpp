#include "fpsd/weierstrass.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace fpsd {

namespace {

// Integer weights w(x^a x_n^e) = x_weight * |a| + xn_weight * e.
struct Weights {
  long long x_weight = 1;
  long long xn_weight = 1;

  long long of(const Exponent& e) const {
    long long w = 0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) w += x_weight * e[i];
    return w + xn_weight * e.back();
  }
};

using Terms = Series::Terms;

Series weight_truncate(const Series& s, const Weights& w, long long cap) {
  Series out(s.num_vars(), precision::kExact);
  for (const auto& [e, c] : s.terms()) {
    if (w.of(e) <= cap) out.add_term(e, c);
  }
  return out;
}

Series weight_mul(const Series& a, const Series& b, const Weights& w, long long cap) {
  Series out(a.num_vars(), precision::kExact);
  std::vector<std::pair<long long, const Terms::value_type*>> bw;
  bw.reserve(b.terms().size());
  for (const auto& t : b.terms()) bw.emplace_back(w.of(t.first), &t);
  Exponent e(a.num_vars());
  for (const auto& [ea, ca] : a.terms()) {
    const long long wa = w.of(ea);
    if (wa > cap) continue;
    for (const auto& [wb, tb] : bw) {
      if (wa + wb > cap) continue;
      for (int i = 0; i < a.num_vars(); ++i) e[i] = ea[i] + tb->first[i];
      out.add_term(e, ca * tb->second);
    }
  }
  return out;
}

// Splits h = low + x_n^d * high, low holding the terms of x_n-degree < d.
void split_at(const Series& h, int d, Series& low, Series& high) {
  const int n = h.num_vars();
  low = Series(n, precision::kExact);
  high = Series(n, precision::kExact);
  for (const auto& [e, c] : h.terms()) {
    if (e[n - 1] < d) {
      low.add_term(e, c);
    } else {
      Exponent s = e;
      s[n - 1] -= d;
      high.add_term(s, c);
    }
  }
}

// Multiplies by x_n^i, raising the precision accordingly.
Series shift_xn(const Series& s, int i) {
  const int n = s.num_vars();
  const int p = s.is_exact() ? precision::kExact : s.precision() + i;
  Series out(n, p);
  for (const auto& [e, c] : s.terms()) {
    Exponent t = e;
    t[n - 1] += i;
    out.add_term(t, c);
  }
  return out;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int clamp_precision(long long p) {
  if (p < precision::kUnknown) return precision::kUnknown;
  return static_cast<int>(p);
}

}  // namespace

DivisionResult weierstrass_divide(const Series& g, const Series& f) {
  const int n = f.num_vars();
  if (g.num_vars() != n) fail(ErrorCode::VariableMismatch, "divide: variable counts differ");
  const RegularityOrder reg = is_xn_regular(f);
  if (!reg.order) {
    fail(ErrorCode::NotRegular, "divisor is not x_n-regular to precision " +
                                    precision::to_string(reg.certified_to_precision));
  }
  const int d = *reg.order;
  if (!f.is_exact() && f.precision() < d) {
    fail(ErrorCode::InsufficientPrecision, "divisor precision below its x_n-order");
  }
  const bool exact = g.is_exact() && f.is_exact();
  const int prec = std::min(g.precision(), f.precision());

  Series p_part, u_part;
  split_at(f, d, p_part, u_part);

  // Weight for x_1..x_{n-1}: c >= 1 and c > (d - e)/|a| over every term of the
  // non-monic part, including the unknown tail of f.
  Rational lower = 0;
  for (const auto& [e, c] : p_part.terms()) {
    const int a = total_degree(e) - e[n - 1];
    lower = std::max(lower, make_rational(d - e[n - 1], a));
  }
  if (!f.is_exact()) lower = std::max(lower, make_rational(d, f.precision() + 1));
  Rational c = 1;
  if (lower >= 1) {
    Rational eps(1, 2);
    eps /= Rational(lower.get_den()) * (exact ? 1 : prec + 2);
    c = lower + eps;
  }
  Weights w;
  w.x_weight = c.get_num().get_si();
  w.xn_weight = c.get_den().get_si();

  const long long cap = exact ? LLONG_MAX / 4 : w.xn_weight * (prec + 1) - 1;

  Series unit_inverse;
  const Rational c0 = u_part.constant_term();
  if (exact) {
    if (u_part.degree() > 0) {
      fail(ErrorCode::InsufficientPrecision,
           "exact division by a divisor with non-constant unit part needs a precision");
    }
    unit_inverse = Series::constant(n, 1 / c0);
  } else {
    const Series step = weight_truncate(u_part - Series::constant(n, c0), w, cap) * (-1 / c0);
    unit_inverse = Series::constant(n, 1);
    const long long rounds = cap / w.xn_weight + 1;
    for (long long k = 0; k < rounds; ++k) {
      unit_inverse = Series::constant(n, 1) + weight_mul(step, unit_inverse, w, cap);
    }
    unit_inverse = unit_inverse * (1 / c0);
  }

  Series quotient(n, precision::kExact);
  Series remainder(n, precision::kExact);
  // Known terms of g only; the unknown tail sits above the weight cap.
  Series h = weight_truncate(g, w, cap);
  const int max_rounds = exact ? 256 : static_cast<int>(cap) + 2;
  for (int round = 0; !h.is_zero(); ++round) {
    if (round > max_rounds) {
      fail(ErrorCode::InsufficientPrecision, "exact division does not terminate; truncate first");
    }
    Series low, high;
    split_at(h, d, low, high);
    remainder += low;
    const Series qk = weight_mul(high, unit_inverse, w, cap);
    quotient += qk;
    h = -weight_mul(qk, p_part, w, cap);
  }

  DivisionResult out;
  out.order = d;
  if (exact) {
    out.quotient = quotient;
    for (int i = 0; i < d; ++i) out.remainder.push_back(xn_coefficient(remainder, i));
    return out;
  }
  const long long q_bound = w.xn_weight * (prec + 1 - d);
  out.quotient = quotient.truncated(clamp_precision(floor_div(q_bound - 1, w.x_weight)));
  for (int i = 0; i < d; ++i) {
    const long long r_bound = w.xn_weight * (prec + 1) - w.xn_weight * i;
    const int pi = clamp_precision(floor_div(r_bound - 1, w.x_weight));
    Series ri = xn_coefficient(remainder, i);
    out.remainder.push_back(Series(ri.num_vars(), pi) + ri);
  }
  return out;
}

Series WeierstrassForm::polynomial() const {
  const int n = unit.num_vars();
  Exponent top(n, 0);
  top[n - 1] = degree;
  Series out = Series::monomial(n, top, 1);
  for (int i = 0; i < degree; ++i) out += shift_xn(embed_last(tail[i]), i);
  return out;
}

WeierstrassForm weierstrass_prepare(const Series& f) {
  const int n = f.num_vars();
  const RegularityOrder reg = is_xn_regular(f);
  if (!reg.order) {
    fail(ErrorCode::NotRegular, "series is not x_n-regular to precision " +
                                    precision::to_string(reg.certified_to_precision));
  }
  const int d = *reg.order;
  if (f.precision() < d) fail(ErrorCode::InsufficientPrecision, "precision below x_n-order");
  Exponent top(n, 0);
  top[n - 1] = d;
  // x_n^d = q f + r, hence f = q^{-1} (x_n^d - r).
  const DivisionResult div = weierstrass_divide(Series::monomial(n, top, 1), f);
  WeierstrassForm out;
  out.degree = d;
  out.unit = invert_unit(div.quotient);
  int prec = out.unit.precision();
  for (int i = 0; i < d; ++i) {
    out.tail.push_back(-div.remainder[i]);
    const int pi = div.remainder[i].precision();
    prec = std::min(prec, pi == precision::kExact ? pi : pi + i);
  }
  out.precision = std::min(prec, f.precision());
  return out;
}

LinearSubstitution::LinearSubstitution(DenseMatrix matrix) : matrix_(std::move(matrix)) {
  for (const auto& row : matrix_) {
    if (row.size() != matrix_.size()) fail(ErrorCode::InvalidArgument, "substitution matrix not square");
  }
  if (determinant(matrix_) == 0) fail(ErrorCode::SingularMatrix, "substitution matrix is singular");
}

LinearSubstitution LinearSubstitution::identity(int n) { return LinearSubstitution(identity_matrix(n)); }

LinearSubstitution LinearSubstitution::swap(int n, int i, int j) {
  DenseMatrix m = identity_matrix(n);
  std::swap(m[i], m[j]);
  return LinearSubstitution(std::move(m));
}

LinearSubstitution LinearSubstitution::inverse() const { return LinearSubstitution(*fpsd::inverse(matrix_)); }

Series apply_linear_substitution(const Series& f, const LinearSubstitution& l) {
  const int n = f.num_vars();
  if (l.num_vars() != n) fail(ErrorCode::VariableMismatch, "substitution size differs from series");
  const int prec = f.precision();
  std::vector<Series> forms;
  for (int i = 0; i < n; ++i) {
    Series form(n, prec);
    for (int j = 0; j < n; ++j) {
      Exponent e(n, 0);
      e[j] = 1;
      form.add_term(e, l.matrix()[i][j]);
    }
    forms.push_back(std::move(form));
  }
  std::vector<std::vector<Series>> powers(n);
  Series out(n, prec);
  for (const auto& [e, c] : f.terms()) {
    Series term = Series::constant(n, c, prec);
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Series::constant(n, 1, prec));
      while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * forms[i]);
      term = term * cache[e[i]];
    }
    out += term;
  }
  return out;
}

namespace {

// 0, 1, -1, 2, -2, ...
int shear_value(int index) { return index % 2 == 1 ? (index + 1) / 2 : -(index / 2); }

bool next_shear(std::vector<int>& idx, int radius) {
  const int top = 2 * radius;
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (idx[k] < top) {
      ++idx[k];
      return true;
    }
    idx[k] = 0;
  }
  return false;
}

}  // namespace

RegularizingResult find_regularizing_substitution(const Series& f, int shear_bound) {
  const int n = f.num_vars();
  if (f.is_zero()) fail(ErrorCode::NotFoundWithinBudget, "series vanishes to precision");
  auto try_sub = [&](const LinearSubstitution& l) -> std::optional<int> {
    return is_xn_regular(apply_linear_substitution(f, l)).order;
  };
  if (auto d = try_sub(LinearSubstitution::identity(n))) return {LinearSubstitution::identity(n), *d, "identity"};
  for (int i = 0; i + 1 < n; ++i) {
    const auto l = LinearSubstitution::swap(n, i, n - 1);
    if (auto d = try_sub(l)) return {l, *d, "swap"};
  }
  for (int radius = 1; radius <= shear_bound && n > 1; ++radius) {
    std::vector<int> idx(n - 1, 0);
    do {
      int max_abs = 0;
      for (int k : idx) max_abs = std::max(max_abs, std::abs(shear_value(k)));
      if (max_abs != radius) continue;
      DenseMatrix m = identity_matrix(n);
      for (int i = 0; i + 1 < n; ++i) m[i][n - 1] = shear_value(idx[i]);
      LinearSubstitution l(std::move(m));
      if (auto d = try_sub(l)) return {l, *d, "shear"};
    } while (next_shear(idx, radius));
  }
  fail(ErrorCode::NotFoundWithinBudget,
       "no regularizing substitution with shear coefficients up to " + std::to_string(shear_bound));
}

std::string to_string(const LinearSubstitution& l) {
  const int n = l.num_vars();
  std::ostringstream os;
  for (int i = 0; i < n; ++i) {
    Series form(n, precision::kExact);
    for (int j = 0; j < n; ++j) {
      Exponent e(n, 0);
      e[j] = 1;
      form.add_term(e, l.matrix()[i][j]);
    }
    if (i > 0) os << "; ";
    os << 'x' << i + 1 << " -> " << to_string(form);
  }
  return os.str();
}

}  // namespace fpsd
