#include "fpsd/malgrange.hpp"

#include <algorithm>

namespace fpsd {

namespace {

Rational falling(int t, int i) {
  Rational out = 1;
  for (int k = 0; k < i; ++k) out *= t - k;
  return out;
}

Rational coeff1(const Series& s, int k) { return k < 0 ? Rational(0) : s.coefficient(Exponent{k}); }

// The x^j coefficient of op(x^k), or nullopt when a coefficient is unknown.
std::optional<Rational> image_coefficient(const OneVarOp& op, int k, int j) {
  Rational acc = 0;
  for (int i = 0; i <= op.order(); ++i) {
    if (i > k) break;
    const int d = j - k + i;
    if (d < 0) continue;
    if (d > op.coeffs[i].precision()) return std::nullopt;
    acc += falling(k, i) * coeff1(op.coeffs[i], d);
  }
  return acc;
}

}  // namespace

OneVarOp make_one_var_op(std::vector<Series> coeffs) {
  for (const auto& c : coeffs) {
    if (c.num_vars() != 1) fail(ErrorCode::VariableMismatch, "one-variable operator needs one-variable coefficients");
  }
  while (!coeffs.empty() && coeffs.back().is_zero() && coeffs.back().is_exact()) coeffs.pop_back();
  if (coeffs.empty()) fail(ErrorCode::ZeroOperator, "operator is zero");
  if (coeffs.back().is_zero()) fail(ErrorCode::ZeroOperator, "top coefficient vanishes to precision");
  return OneVarOp{std::move(coeffs)};
}

OneVarOp one_var_op(const DiffOp& op) {
  if (op.num_vars() != 1) fail(ErrorCode::VariableMismatch, "expected an operator in one variable");
  std::vector<Series> coeffs;
  for (const auto& [alpha, c] : op.terms()) {
    const auto i = static_cast<std::size_t>(alpha[0]);
    if (coeffs.size() <= i) coeffs.resize(i + 1, Series::zero(1));
    coeffs[i] = c;
  }
  return make_one_var_op(std::move(coeffs));
}

DiffOp to_diffop(const OneVarOp& op) {
  DiffOp out(1);
  for (int i = 0; i <= op.order(); ++i) out.add_term(Exponent{i}, op.coeffs[i]);
  return out;
}

Series apply(const OneVarOp& op, const Series& f) {
  Series out = Series::zero(1);
  Series d = f;
  for (int i = 0; i <= op.order(); ++i) {
    if (i) d = partial_derivative(d, 0);
    out += op.coeffs[i] * d;
  }
  return out;
}

std::string to_string(const OneVarOp& op) { return to_string(to_diffop(op)); }

Valuation valuation(const Series& r) {
  if (r.is_zero()) return {r.precision() == precision::kExact ? precision::kExact : r.precision() + 1, true};
  return {r.order(), false};
}

std::string to_string(const Valuation& v) {
  if (!v.lower_bound) return std::to_string(v.value);
  if (v.value == precision::kExact) return "infinity";
  return ">= " + std::to_string(v.value) + " (to precision)";
}

Rational evaluate(const std::vector<Rational>& p, const Rational& t) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string poly_to_string(const std::vector<Rational>& p, char var) {
  std::string out;
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    Rational c = p[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) out = neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(k));
    if (mono.empty()) out += c.get_str();
    else if (c == 1) out += mono;
    else out += c.get_str() + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

IndicialData indicial_data(const OneVarOp& op) {
  IndicialData out;
  bool any = false;
  std::vector<int> nu(op.coeffs.size());
  for (int i = 0; i <= op.order(); ++i) {
    const Valuation v = valuation(op.coeffs[i]);
    if (v.lower_bound) {
      nu[i] = -1;
      continue;
    }
    nu[i] = v.value;
    if (!any || i - v.value > out.s) out.s = i - v.value;
    any = true;
  }
  if (!any) fail(ErrorCode::ZeroOperator, "operator vanishes to precision");
  // A coefficient known only to vanish below its precision could still shift s.
  for (int i = 0; i <= op.order(); ++i) {
    if (nu[i] < 0 && i - (op.coeffs[i].precision() + 1) >= out.s) {
      fail(ErrorCode::InsufficientPrecision, "coefficient of d^" + std::to_string(i) + " is too short to fix s");
    }
  }
  out.poly.assign(1, Rational(0));
  for (int i = 0; i <= op.order(); ++i) {
    if (nu[i] < 0 || i - nu[i] != out.s) continue;
    out.index_set.push_back(i);
    // rho_i(0) * t(t-1)...(t-i+1)
    std::vector<Rational> f{Rational(1)};
    for (int k = 0; k < i; ++k) {
      std::vector<Rational> g(f.size() + 1, Rational(0));
      for (std::size_t a = 0; a < f.size(); ++a) {
        g[a + 1] += f[a];
        g[a] -= f[a] * k;
      }
      f = std::move(g);
    }
    const Rational rho = coeff1(op.coeffs[i], nu[i]);
    if (out.poly.size() < f.size()) out.poly.resize(f.size(), Rational(0));
    for (std::size_t a = 0; a < f.size(); ++a) out.poly[a] += rho * f[a];
  }
  while (out.poly.size() > 1 && out.poly.back() == 0) out.poly.pop_back();
  // Cauchy bound 1 + max |a_k / a_lead|.
  const Rational lead = out.poly.back();
  Rational bound = 0;
  for (std::size_t k = 0; k + 1 < out.poly.size(); ++k) bound = std::max(bound, Rational(abs(out.poly[k] / lead)));
  const Rational shifted = bound + 1;
  Integer b;
  mpz_cdiv_q(b.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  const int lo = std::max(out.s, 0);
  out.t0 = lo;
  for (long t = -b.get_si(); t <= b.get_si(); ++t) {
    if (evaluate(out.poly, Rational(t)) != 0) continue;
    out.integer_roots.push_back(static_cast<int>(t));
    out.t0 = std::max(out.t0, static_cast<int>(t) + 1);
  }
  return out;
}

Series solve(const OneVarOp& op, const Series& g, int t, int cap) {
  const IndicialData data = indicial_data(op);
  if (t < data.t0) fail(ErrorCode::PreconditionViolated, "t is below t0 = " + std::to_string(data.t0));
  if (g.num_vars() != 1) fail(ErrorCode::VariableMismatch, "right-hand side must be a one-variable series");
  if (!g.is_zero() && g.order() < t - data.s) {
    fail(ErrorCode::PreconditionViolated, "right-hand side has valuation below t - s = " + std::to_string(t - data.s));
  }
  int prec = std::min(cap, precision::sub(g.precision(), -data.s));
  for (int i = 0; i <= op.order(); ++i) {
    const int pi = op.coeffs[i].precision();
    if (pi != precision::kExact) prec = std::min(prec, pi + data.s + t - i);
  }
  if (g.precision() != precision::kExact && g.precision() < t - data.s) prec = std::min(prec, t - 1);
  Series f(1, std::max(prec, t - 1));
  std::vector<Rational> c;  // c[k - t]
  for (int k = t; k <= prec; ++k) {
    const int j = k - data.s;
    Rational rhs = coeff1(g, j);
    for (int kp = t; kp < k; ++kp) {
      const auto a = image_coefficient(op, kp, j);
      if (!a) fail(ErrorCode::InsufficientPrecision, "operator coefficient unknown");
      rhs -= c[kp - t] * *a;
    }
    c.push_back(rhs / evaluate(data.poly, Rational(k)));
    f.add_term(Exponent{k}, c.back());
  }
  return f;
}

SparseMatrix op_matrix(const OneVarOp& op, int lo, int hi, int target) {
  SparseMatrix m(0, static_cast<std::size_t>(std::max(target, 0)));
  for (int k = lo; k < hi; ++k) {
    SparseRow row;
    for (int j = 0; j < target; ++j) {
      const auto a = image_coefficient(op, k, j);
      if (!a) fail(ErrorCode::InsufficientPrecision, "operator coefficients too short for the matrix");
      if (*a != 0) row.emplace(j, *a);
    }
    m.append_row(std::move(row));
  }
  return m;
}

CokernelDims cokernel_dim(const OneVarOp& op) {
  CokernelDims out;
  out.data = indicial_data(op);
  out.t = out.data.t0;
  const int target = out.t - out.data.s;
  const SparseMatrix m = op_matrix(op, 0, out.t, target);
  const int r = static_cast<int>(rank(m));
  out.cokernel = target - r;
  out.kernel = out.t - r;
  for (std::size_t c : row_space_complement(m)) out.cokernel_monomials.push_back(static_cast<int>(c));
  return out;
}

int truncated_cokernel(const OneVarOp& op, int size) {
  SparseMatrix m(0, static_cast<std::size_t>(size));
  for (int k = 0; k < size + op.order(); ++k) {
    const Series img = apply(op, Series::monomial(1, Exponent{k}, 1));
    if (img.precision() < size - 1) fail(ErrorCode::InsufficientPrecision, "operator coefficients too short for the oracle");
    SparseRow row;
    for (const auto& [e, v] : img.terms()) {
      if (e[0] < size) row.emplace(e[0], v);
    }
    m.append_row(std::move(row));
  }
  return size - static_cast<int>(rank(m));
}

namespace {

void collect_generators(const DiffOp& op, WeiergenReport& rep, std::vector<Series>& gens) {
  const int n = op.num_vars();
  if (n == 1) {
    const CokernelDims cd = cokernel_dim(one_var_op(op));
    rep.chain.push_back(cd);
    for (int e : cd.cokernel_monomials) gens.push_back(Series::monomial(1, Exponent{e}, 1));
    return;
  }
  // Restrict the coefficients at x_{n-1} = 0 and recurse; lift by inserting x_{n-1}.
  DiffOp restricted(n - 1);
  for (const auto& [alpha, c] : op.terms()) {
    Exponent a(n - 1, 0);
    a[n - 2] = alpha[n - 1];
    restricted.add_term(a, restrict_to_zero(c, n - 2));
  }
  std::vector<Series> lower;
  collect_generators(restricted, rep, lower);
  for (const auto& g : lower) gens.push_back(insert_variable(g, n - 2));
}

}  // namespace

WeiergenReport weiergen_generators(const DiffOp& op, int n_trunc) {
  const int n = op.num_vars();
  if (op.is_zero()) fail(ErrorCode::ZeroOperator, "operator is zero");
  int l = 0;
  for (const auto& [alpha, c] : op.terms()) {
    for (int i = 0; i + 1 < n; ++i) {
      if (alpha[i] != 0) fail(ErrorCode::InvalidArgument, "operator may only differentiate in the last variable");
    }
    l = std::max(l, alpha[n - 1]);
  }
  Exponent top(n, 0);
  top[n - 1] = l;
  const RegularityOrder reg = is_xn_regular(op.coefficient(top));
  if (!reg.order) fail(ErrorCode::NotRegularLeadingCoefficient, "leading coefficient is not x_n-regular");
  WeiergenReport rep;
  collect_generators(op, rep, rep.generators);
  rep.verified_degree = n_trunc;

  // Every monomial of degree <= N must lie in sum R_{n-1} f_j + op(R) modulo degree > N.
  const auto targets = monomials_up_to(n, n_trunc);
  std::map<Exponent, std::size_t> pos;
  for (std::size_t k = 0; k < targets.size(); ++k) pos.emplace(targets[k], k);
  SparseMatrix span(0, targets.size());
  auto add = [&](const Series& s) {
    if (s.precision() < n_trunc) fail(ErrorCode::InsufficientPrecision, "operator coefficients too short for degree " + std::to_string(n_trunc));
    SparseRow row;
    for (const auto& [e, v] : s.terms()) {
      if (total_degree(e) > n_trunc) break;
      row.emplace(pos.at(e), v);
    }
    span.append_row(std::move(row));
  };
  for (const auto& g : rep.generators) {
    for (const auto& mu : monomials_up_to(n - 1, n_trunc)) add(embed_last(Series::monomial(n - 1, mu, 1)) * g);
  }
  for (const auto& mu : monomials_up_to(n, n_trunc + l)) add(apply_op(op, Series::monomial(n, mu, 1)));
  rep.verified = rank(span) == targets.size();
  return rep;
}

}  // namespace fpsd
