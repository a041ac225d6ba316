#include "fpsd/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fpsd {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void monomials_of_degree(int num_vars, int degree, int var, Exponent& current,
                         std::vector<Exponent>& out) {
  if (var == num_vars - 1) {
    current[var] = degree;
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int k = degree; k >= 0; --k) {
    current[var] = k;
    monomials_of_degree(num_vars, degree - k, var + 1, current, out);
  }
  current[var] = 0;
}

void check_same_vars(const Series& a, const Series& b, const char* what) {
  if (a.num_vars() != b.num_vars()) {
    fail(ErrorCode::VariableMismatch, std::string(what) + ": series in " +
                                          std::to_string(a.num_vars()) + " and " +
                                          std::to_string(b.num_vars()) + " variables");
  }
}

}  // namespace

std::vector<Exponent> monomials_up_to(int num_vars, int hi, int lo) {
  std::vector<Exponent> out;
  if (num_vars == 0) {
    if (lo <= 0 && hi >= 0) out.emplace_back();
    return out;
  }
  Exponent current(num_vars, 0);
  for (int d = std::max(lo, 0); d <= hi; ++d) monomials_of_degree(num_vars, d, 0, current, out);
  return out;
}

namespace precision {

int sub(int p, int k) {
  if (p == kExact) return kExact;
  return std::max(p - k, kUnknown);
}

int min(int a, int b) { return std::min(a, b); }

std::string to_string(int p) { return p == kExact ? "exact" : std::to_string(p); }

}  // namespace precision

Series::Series(int num_vars, int precision) : num_vars_(num_vars), precision_(precision) {
  if (num_vars < 0) fail(ErrorCode::InvalidArgument, "negative variable count");
  if (precision < precision::kUnknown) precision_ = precision::kUnknown;
}

Series Series::zero(int num_vars, int precision) { return Series(num_vars, precision); }

Series Series::constant(int num_vars, const Rational& c, int precision) {
  Series s(num_vars, precision);
  s.add_term(Exponent(num_vars, 0), c);
  return s;
}

Series Series::variable(int num_vars, int axis, int precision) {
  if (axis < 0 || axis >= num_vars) fail(ErrorCode::AxisOutOfRange, "variable index out of range");
  Exponent e(num_vars, 0);
  e[axis] = 1;
  return monomial(num_vars, e, 1, precision);
}

Series Series::monomial(int num_vars, const Exponent& e, const Rational& c, int precision) {
  Series s(num_vars, precision);
  s.add_term(e, c);
  return s;
}

Rational Series::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Series::constant_term() const { return coefficient(Exponent(num_vars_, 0)); }

int Series::order() const {
  if (terms_.empty()) return precision_ == precision::kExact ? precision::kExact : precision_ + 1;
  return total_degree(terms_.begin()->first);
}

int Series::degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

void Series::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != num_vars_) {
    fail(ErrorCode::VariableMismatch, "exponent length does not match variable count");
  }
  if (c == 0 || total_degree(e) > precision_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Series Series::truncated(int new_precision) const {
  Series out(num_vars_, std::min(new_precision, precision_));
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) > out.precision_) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Series& Series::operator+=(const Series& b) {
  check_same_vars(*this, b, "add");
  if (b.precision_ < precision_) *this = truncated(b.precision_);
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

Series& Series::operator-=(const Series& b) {
  check_same_vars(*this, b, "sub");
  if (b.precision_ < precision_) *this = truncated(b.precision_);
  for (const auto& [e, c] : b.terms_) add_term(e, -c);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }
Series operator*(Series a, const Rational& c) { return a *= c; }
Series operator*(const Rational& c, Series a) { return a *= c; }

Series operator*(const Series& a, const Series& b) {
  check_same_vars(a, b, "mul");
  Series out(a.num_vars(), std::min(a.precision(), b.precision()));
  const int cap = out.precision();
  Exponent e(a.num_vars());
  for (const auto& [ea, ca] : a.terms()) {
    const int da = total_degree(ea);
    if (da > cap) break;
    for (const auto& [eb, cb] : b.terms()) {
      if (da + total_degree(eb) > cap) break;
      for (int i = 0; i < a.num_vars(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Series series_arithmetic(const Series& a, const Series& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return a;
}

Series power(const Series& a, int k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "negative power of a series");
  Series result = Series::constant(a.num_vars(), 1, a.precision());
  Series base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Series invert_unit(const Series& a) {
  const Rational c0 = a.constant_term();
  if (c0 == 0) fail(ErrorCode::NotAUnit, "series has zero constant term");
  const Rational inv_c0 = 1 / c0;
  Series h = a - Series::constant(a.num_vars(), c0);
  if (h.is_zero() && a.is_exact()) return Series::constant(a.num_vars(), inv_c0);
  if (a.is_exact()) {
    fail(ErrorCode::InsufficientPrecision, "inverse of a non-constant exact series needs a precision");
  }
  // 1/a = (1/c0) * sum_k g^k with g = -h/c0 of order >= 1; Horner form.
  const Series g = h * (-inv_c0);
  const int n = a.num_vars();
  Series result = Series::constant(n, 1, a.precision());
  for (int k = 0; k < a.precision(); ++k) result = Series::constant(n, 1) + g * result;
  return result * inv_c0;
}

Series exp_series(const Series& a) {
  if (a.constant_term() != 0) {
    fail(ErrorCode::UnsupportedExponent, "exp of a series with nonzero constant term");
  }
  const int n = a.num_vars();
  if (a.is_zero()) return Series::constant(n, 1, a.precision());
  if (a.is_exact()) {
    fail(ErrorCode::InsufficientPrecision, "exp of a non-zero exact series needs a precision");
  }
  // 1 + a(1 + a/2(1 + a/3(...))) truncated at the precision.
  const int terms = a.precision();
  Series result = Series::constant(n, 1, a.precision());
  for (int k = terms; k >= 1; --k) {
    result = Series::constant(n, 1) + (a * result) * make_rational(1, k);
  }
  return result;
}

Series partial_derivative(const Series& a, int axis) {
  if (axis < 0 || axis >= a.num_vars()) {
    fail(ErrorCode::AxisOutOfRange, "derivative axis " + std::to_string(axis + 1) +
                                        " outside 1.." + std::to_string(a.num_vars()));
  }
  Series out(a.num_vars(), precision::sub(a.precision(), 1));
  for (const auto& [e, c] : a.terms()) {
    if (e[axis] == 0) continue;
    Exponent d = e;
    d[axis] -= 1;
    out.add_term(d, c * e[axis]);
  }
  return out;
}

Series xn_coefficient(const Series& f, int j) {
  if (j < 0) fail(ErrorCode::InvalidArgument, "negative x_n power");
  const int n = f.num_vars();
  if (n == 0) fail(ErrorCode::AxisOutOfRange, "series has no variables");
  Series out(n - 1, precision::sub(f.precision(), j));
  if (f.precision() != precision::kExact && j > f.precision()) return out;
  for (const auto& [e, c] : f.terms()) {
    if (e[n - 1] != j) continue;
    out.add_term(Exponent(e.begin(), e.end() - 1), c);
  }
  return out;
}

Series restrict_to_zero(const Series& f, int axis) {
  if (axis < 0 || axis >= f.num_vars()) fail(ErrorCode::AxisOutOfRange, "restriction axis");
  Series out(f.num_vars() - 1, f.precision());
  for (const auto& [e, c] : f.terms()) {
    if (e[axis] != 0) continue;
    Exponent r = e;
    r.erase(r.begin() + axis);
    out.add_term(r, c);
  }
  return out;
}

Series insert_variable(const Series& f, int axis) {
  if (axis < 0 || axis > f.num_vars()) fail(ErrorCode::AxisOutOfRange, "insertion axis");
  Series out(f.num_vars() + 1, f.precision());
  for (const auto& [e, c] : f.terms()) {
    Exponent r = e;
    r.insert(r.begin() + axis, 0);
    out.add_term(r, c);
  }
  return out;
}

Series embed_last(const Series& f) { return insert_variable(f, f.num_vars()); }

RegularityOrder is_xn_regular(const Series& f) {
  const int n = f.num_vars();
  if (n == 0) fail(ErrorCode::AxisOutOfRange, "series has no variables");
  for (const auto& [e, c] : f.terms()) {
    if (std::all_of(e.begin(), e.end() - 1, [](int v) { return v == 0; })) {
      return {e[n - 1], f.precision()};
    }
  }
  return {std::nullopt, f.precision()};
}

std::string monomial_to_string(const Exponent& e, char var) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += var;
    out += std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

std::string to_string(const Series& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    const std::string mono = monomial_to_string(e);
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << mono;
    }
    first = false;
  }
  if (!s.is_exact()) {
    if (!first) os << " + ";
    os << "O(" << s.precision() + 1 << ')';
  } else if (first) {
    os << '0';
  }
  return os.str();
}

void append_scaled_term(std::string& out, const Series& c, const std::string& mono, bool alone) {
  std::string piece;
  bool negative = false;
  if (c.is_exact() && c.terms().size() == 1) {
    const auto& [e, v] = *c.terms().begin();
    negative = v < 0;
    const Rational mag = abs(v);
    const std::string xm = monomial_to_string(e);
    if (mag != 1 || (xm.empty() && mono.empty())) piece = mag.get_str();
    for (const std::string* part : {&xm, &mono}) {
      if (part->empty()) continue;
      if (!piece.empty()) piece += '*';
      piece += *part;
    }
  } else if (alone && mono.empty()) {
    out += to_string(c);
    return;
  } else {
    piece = "(" + to_string(c) + ")";
    if (!mono.empty()) piece += "*" + mono;
  }
  if (out.empty()) {
    out = negative ? "-" + piece : piece;
  } else {
    out += negative ? " - " : " + ";
    out += piece;
  }
}

}  // namespace fpsd
