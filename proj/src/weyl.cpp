#include "fpsd/weyl.hpp"

#include <algorithm>

namespace fpsd {

namespace {

void check_same_vars(int a, int b) {
  if (a != b) fail(ErrorCode::VariableMismatch, "operators in different variable counts");
}

// Calls fn(gamma, C(alpha, gamma)) for every gamma <= alpha componentwise.
template <class Fn>
void for_each_below(const Exponent& alpha, Fn&& fn) {
  Exponent gamma(alpha.size(), 0);
  while (true) {
    Integer c = 1;
    for (std::size_t i = 0; i < alpha.size(); ++i) c *= binomial(alpha[i], gamma[i]);
    fn(gamma, c);
    std::size_t i = 0;
    for (; i < alpha.size(); ++i) {
      if (gamma[i] < alpha[i]) {
        ++gamma[i];
        break;
      }
      gamma[i] = 0;
    }
    if (i == alpha.size()) return;
  }
}

Series apply_monomial(const Exponent& alpha, Series g) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int k = 0; k < alpha[i]; ++k) g = partial_derivative(g, static_cast<int>(i));
  }
  return g;
}

void check_same_tau(const TauOp& a, const TauOp& b) {
  if (!(a.tau_def() == b.tau_def())) fail(ErrorCode::InvalidArgument, "tau operators with different tau");
}

std::string tau_monomial(int i) {
  if (i == 0) return "";
  return i == 1 ? "t" : "t^" + std::to_string(i);
}

}  // namespace

DiffOp DiffOp::multiplication(const Series& g) {
  DiffOp out(g.num_vars());
  out.add_term(Exponent(g.num_vars(), 0), g);
  return out;
}

DiffOp DiffOp::partial(int num_vars, int axis) {
  if (axis < 0 || axis >= num_vars) fail(ErrorCode::AxisOutOfRange, "derivative index out of range");
  DiffOp out(num_vars);
  Exponent alpha(num_vars, 0);
  alpha[axis] = 1;
  out.add_term(alpha, Series::constant(num_vars, 1));
  return out;
}

Series DiffOp::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Series::zero(num_vars_) : it->second;
}

int DiffOp::precision() const {
  int p = precision::kExact;
  for (const auto& [a, c] : terms_) p = std::min(p, c.precision());
  return p;
}

void DiffOp::add_term(const Exponent& alpha, const Series& c) {
  if (static_cast<int>(alpha.size()) != num_vars_ || c.num_vars() != num_vars_) {
    fail(ErrorCode::VariableMismatch, "operator term has the wrong variable count");
  }
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffOp DiffOp::operator-() const {
  DiffOp out = *this;
  for (auto& [a, c] : out.terms_) c = -c;
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& b) {
  check_same_vars(num_vars_, b.num_vars_);
  for (const auto& [a, c] : b.terms_) add_term(a, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& b) {
  check_same_vars(num_vars_, b.num_vars_);
  for (const auto& [a, c] : b.terms_) add_term(a, -c);
  return *this;
}

DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
DiffOp operator*(const DiffOp& a, const DiffOp& b) { return op_product(a, b); }

// (a d^alpha)(b d^beta) = sum_gamma C(alpha, gamma) a d^gamma(b) d^(alpha - gamma + beta)
DiffOp op_product(const DiffOp& a, const DiffOp& b) {
  check_same_vars(a.num_vars(), b.num_vars());
  const int n = a.num_vars();
  DiffOp out(n);
  for (const auto& [alpha, ca] : a.terms()) {
    for (const auto& [beta, cb] : b.terms()) {
      for_each_below(alpha, [&](const Exponent& gamma, const Integer& binom) {
        Exponent e(n);
        for (int i = 0; i < n; ++i) e[i] = alpha[i] - gamma[i] + beta[i];
        out.add_term(e, (ca * apply_monomial(gamma, cb)) * Rational(binom));
      });
    }
  }
  return out;
}

Series apply_op(const DiffOp& a, const Series& g) {
  check_same_vars(a.num_vars(), g.num_vars());
  Series out(g.num_vars(), precision::kExact);
  if (a.is_zero()) return Series::zero(g.num_vars(), g.precision());
  for (const auto& [alpha, c] : a.terms()) out += c * apply_monomial(alpha, g);
  return out;
}

int order_of(const DiffOp& a) {
  if (a.is_zero()) fail(ErrorCode::ZeroOperator, "order of the zero operator");
  int best = 0;
  for (const auto& [alpha, c] : a.terms()) best = std::max(best, total_degree(alpha));
  return best;
}

Symbol principal_symbol(const DiffOp& a) {
  const int top = order_of(a);
  Symbol out(a.num_vars());
  for (const auto& [alpha, c] : a.terms()) {
    if (total_degree(alpha) == top) out.add_term(alpha, c);
  }
  return out;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return op_product(a, b) - op_product(b, a); }

TauOp::TauOp(std::vector<Series> coeffs, Series tau_def) : coeffs_(std::move(coeffs)), tau_def_(std::move(tau_def)) {
  for (const auto& c : coeffs_) {
    if (c.num_vars() != tau_def_.num_vars()) fail(ErrorCode::VariableMismatch, "tau coefficient variable count");
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

TauOp TauOp::tau(const Series& tau_def) {
  const int n = tau_def.num_vars();
  return TauOp({Series::zero(n), Series::constant(n, 1)}, tau_def);
}

TauOp TauOp::scalar(const Series& g, const Series& tau_def) { return TauOp({g}, tau_def); }

Series TauOp::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Series::zero(num_vars());
  return coeffs_[i];
}

TauOp operator+(const TauOp& a, const TauOp& b) {
  check_same_tau(a, b);
  const int len = std::max(a.degree(), b.degree()) + 1;
  std::vector<Series> c;
  for (int i = 0; i < len; ++i) c.push_back(a.coefficient(i) + b.coefficient(i));
  return TauOp(std::move(c), a.tau_def());
}

TauOp operator-(const TauOp& a, const TauOp& b) {
  check_same_tau(a, b);
  const int len = std::max(a.degree(), b.degree()) + 1;
  std::vector<Series> c;
  for (int i = 0; i < len; ++i) c.push_back(a.coefficient(i) - b.coefficient(i));
  return TauOp(std::move(c), a.tau_def());
}

Series tau_power_apply(const Series& tau_def, int k, const Series& g) {
  const int n = g.num_vars();
  check_same_vars(tau_def.num_vars(), n);
  Series out = g;
  for (int i = 0; i < k; ++i) out = tau_def * partial_derivative(out, n - 1);
  return out;
}

Series tau_apply(const TauOp& s, const Series& g) {
  Series out(g.num_vars(), precision::kExact);
  if (s.is_zero()) return Series::zero(g.num_vars(), g.precision());
  for (int i = 0; i <= s.degree(); ++i) out += s.coeffs()[i] * tau_power_apply(s.tau_def(), i, g);
  return out;
}

// (a tau^i)(b tau^j) = a sum_k C(i,k) tau^k(b) tau^(i-k+j)
TauOp tau_product(const TauOp& a, const TauOp& b) {
  check_same_tau(a, b);
  const int n = a.num_vars();
  if (a.is_zero() || b.is_zero()) return TauOp({}, a.tau_def());
  std::vector<Series> c(a.degree() + b.degree() + 1, Series::zero(n));
  for (int i = 0; i <= a.degree(); ++i) {
    for (int j = 0; j <= b.degree(); ++j) {
      Series tk = b.coeffs()[j];
      for (int k = 0; k <= i; ++k) {
        if (k > 0) tk = tau_power_apply(a.tau_def(), 1, tk);
        c[i - k + j] += (a.coeffs()[i] * tk) * Rational(binomial(i, k));
      }
    }
  }
  return TauOp(std::move(c), a.tau_def());
}

DiffOp tau_expand(const TauOp& t) {
  const int n = t.num_vars();
  DiffOp out(n);
  const DiffOp tau = op_product(DiffOp::multiplication(t.tau_def()), DiffOp::partial(n, n - 1));
  DiffOp power = DiffOp::multiplication(Series::constant(n, 1));
  for (int i = 0; i <= t.degree(); ++i) {
    if (i > 0) power = op_product(power, tau);
    out += op_product(DiffOp::multiplication(t.coeffs()[i]), power);
  }
  return out;
}

// (c tau^i)* = (-1)^i tau^i c = (-1)^i sum_k C(i,k) tau^k(c) tau^(i-k)
TauOp tau_transpose(const TauOp& t) {
  const int n = t.num_vars();
  std::vector<Series> c(t.degree() + 1, Series::zero(n));
  for (int i = 0; i <= t.degree(); ++i) {
    Series tk = t.coeffs()[i];
    const Rational sign = i % 2 ? -1 : 1;
    for (int k = 0; k <= i; ++k) {
      if (k > 0) tk = tau_power_apply(t.tau_def(), 1, tk);
      c[i - k] += tk * (sign * Rational(binomial(i, k)));
    }
  }
  return TauOp(std::move(c), t.tau_def());
}

// c tau^i = sum_k (-1)^k C(i,k) tau^(i-k) tau^k(c)
std::vector<Series> tau_right_form(const TauOp& t) {
  const int n = t.num_vars();
  std::vector<Series> d(t.degree() + 1, Series::zero(n));
  for (int i = 0; i <= t.degree(); ++i) {
    Series tk = t.coeffs()[i];
    for (int k = 0; k <= i; ++k) {
      if (k > 0) tk = tau_power_apply(t.tau_def(), 1, tk);
      d[i - k] += tk * Rational(k % 2 ? -binomial(i, k) : binomial(i, k));
    }
  }
  return d;
}

std::string to_string(const DiffOp& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [alpha, c] : a.terms()) {
    append_scaled_term(out, c, monomial_to_string(alpha, 'd'), a.terms().size() == 1);
  }
  return out;
}

std::string to_string(const TauOp& t) {
  if (t.is_zero()) return "0";
  std::string out;
  int nonzero = 0;
  for (const auto& c : t.coeffs()) nonzero += c.is_zero() ? 0 : 1;
  for (int i = 0; i <= t.degree(); ++i) {
    if (t.coeffs()[i].is_zero()) continue;
    append_scaled_term(out, t.coeffs()[i], tau_monomial(i), nonzero == 1);
  }
  return out;
}

}  // namespace fpsd
