#include "fpsd/symbols.hpp"

#include <algorithm>

#include "fpsd/linalg.hpp"

namespace fpsd {

namespace {

void check_same_vars(const Symbol& a, const Symbol& b) {
  if (a.num_vars() != b.num_vars()) fail(ErrorCode::VariableMismatch, "symbols in different variable counts");
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

// Products of bounded count; the guard keeps the membership systems desk-sized.
constexpr double kMaxUnknowns = 250000;

double count_monomials(int n, int deg) {
  if (deg < 0) return 0;
  double c = 1;
  for (int k = 1; k <= n; ++k) c = c * (deg + k) / k;
  return c;
}

}  // namespace

Symbol::Symbol(const Series& s) : num_vars_(s.num_vars()) { add_term(Exponent(num_vars_, 0), s); }

Symbol Symbol::zeta(int num_vars, int axis) {
  if (axis < 0 || axis >= num_vars) fail(ErrorCode::AxisOutOfRange, "zeta index out of range");
  Symbol out(num_vars);
  Exponent z(num_vars, 0);
  z[axis] = 1;
  out.add_term(z, Series::constant(num_vars, 1));
  return out;
}

int Symbol::zeta_degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

int Symbol::low_zeta_degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

int Symbol::precision() const {
  int p = precision::kExact;
  for (const auto& [z, c] : terms_) p = std::min(p, c.precision());
  return p;
}

Series Symbol::coefficient(const Exponent& z) const {
  auto it = terms_.find(z);
  return it == terms_.end() ? Series::zero(num_vars_) : it->second;
}

Symbol Symbol::homogeneous_component(int k) const {
  Symbol out(num_vars_);
  for (const auto& [z, c] : terms_) {
    if (total_degree(z) == k) out.terms_.emplace(z, c);
  }
  return out;
}

void Symbol::add_term(const Exponent& z, const Series& c) {
  if (static_cast<int>(z.size()) != num_vars_ || c.num_vars() != num_vars_) {
    fail(ErrorCode::VariableMismatch, "symbol term has the wrong variable count");
  }
  auto it = terms_.find(z);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(z, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Symbol Symbol::operator-() const {
  Symbol out = *this;
  for (auto& [z, c] : out.terms_) c = -c;
  return out;
}

Symbol& Symbol::operator+=(const Symbol& b) {
  check_same_vars(*this, b);
  for (const auto& [z, c] : b.terms_) add_term(z, c);
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& b) {
  check_same_vars(*this, b);
  for (const auto& [z, c] : b.terms_) add_term(z, -c);
  return *this;
}

Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }

Symbol operator*(const Symbol& a, const Symbol& b) {
  check_same_vars(a, b);
  Symbol out(a.num_vars());
  for (const auto& [za, ca] : a.terms()) {
    for (const auto& [zb, cb] : b.terms()) out.add_term(add_exponents(za, zb), ca * cb);
  }
  return out;
}

Symbol operator*(const Series& c, const Symbol& a) { return Symbol(c) * a; }

Symbol x_derivative(const Symbol& a, int axis) {
  Symbol out(a.num_vars());
  for (const auto& [z, c] : a.terms()) out.add_term(z, partial_derivative(c, axis));
  return out;
}

Symbol zeta_derivative(const Symbol& a, int axis) {
  if (axis < 0 || axis >= a.num_vars()) fail(ErrorCode::AxisOutOfRange, "zeta derivative axis");
  Symbol out(a.num_vars());
  for (const auto& [z, c] : a.terms()) {
    if (z[axis] == 0) continue;
    Exponent e = z;
    e[axis] -= 1;
    out.add_term(e, c * Rational(z[axis]));
  }
  return out;
}

Symbol poisson_bracket(const Symbol& a, const Symbol& b) {
  check_same_vars(a, b);
  Symbol out(a.num_vars());
  for (int i = 0; i < a.num_vars(); ++i) {
    out += zeta_derivative(a, i) * x_derivative(b, i);
    out -= x_derivative(a, i) * zeta_derivative(b, i);
  }
  return out;
}

MembershipVerdict membership_truncated(const Symbol& g, const std::vector<Symbol>& gens, int n_trunc,
                                       int zeta_bound) {
  const int n = g.num_vars();
  for (const auto& h : gens) check_same_vars(g, h);
  if (n_trunc < 0 || zeta_bound < 0) fail(ErrorCode::InvalidArgument, "membership bounds must be nonnegative");

  MembershipVerdict out;
  out.zeta_bound = zeta_bound;
  int x_cap = std::min(n_trunc, g.precision());
  for (const auto& h : gens) x_cap = std::min(x_cap, h.precision());
  out.x_precision = x_cap;
  if (x_cap < 0) {
    out.reason = "no coefficient is known at the given precision";
    return out;
  }

  double unknowns = 0;
  for (const auto& h : gens) {
    if (h.is_zero()) continue;
    unknowns += count_monomials(n, x_cap) * count_monomials(n, zeta_bound - h.zeta_degree());
  }
  if (unknowns > kMaxUnknowns) {
    fail(ErrorCode::BoundOverflow, "membership system too large; lower --trunc or --zeta-bound");
  }

  // Columns: (generator, z-monomial, x-monomial). Rows: (z-monomial, x-monomial).
  struct Column {
    std::size_t gen;
    Exponent z, x;
  };
  std::vector<Column> columns;
  std::map<std::pair<Exponent, Exponent>, SparseRow> rows;
  const auto x_monos = monomials_up_to(n, x_cap);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Symbol& h = gens[i];
    if (h.is_zero()) continue;
    for (const auto& zm : monomials_up_to(n, zeta_bound - h.zeta_degree())) {
      for (const auto& xm : x_monos) {
        const std::size_t col = columns.size();
        columns.push_back({i, zm, xm});
        for (const auto& [zh, ch] : h.terms()) {
          const Exponent z = add_exponents(zm, zh);
          if (total_degree(z) > zeta_bound) continue;
          for (const auto& [xh, c] : ch.terms()) {
            if (total_degree(xh) + total_degree(xm) > x_cap) break;
            rows[{z, add_exponents(xm, xh)}][col] += c;
          }
        }
      }
    }
  }
  std::map<std::pair<Exponent, Exponent>, Rational> rhs;
  for (const auto& [z, c] : g.terms()) {
    if (total_degree(z) > zeta_bound) continue;
    for (const auto& [x, v] : c.terms()) {
      if (total_degree(x) > x_cap) break;
      rhs[{z, x}] = v;
      rows.try_emplace({z, x});
    }
  }
  SparseMatrix a(0, columns.size());
  Vector b;
  for (auto& [key, row] : rows) {
    for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
    a.append_row(row);
    auto it = rhs.find(key);
    b.push_back(it == rhs.end() ? Rational(0) : it->second);
  }
  const auto sol = solve(a, b);
  if (!sol) {
    const bool homogeneous =
        std::all_of(gens.begin(), gens.end(), [](const Symbol& h) { return h.is_zero() || h.is_homogeneous(); });
    if (homogeneous) {
      out.status = Membership::NotMemberCertified;
      out.reason = "truncated system infeasible";
    } else {
      out.reason = "truncated system infeasible but a generator is not z-homogeneous";
    }
    return out;
  }
  out.status = Membership::MemberWitness;
  out.multipliers.assign(gens.size(), Symbol(n));
  std::vector<std::map<Exponent, Series, GrlexLess>> coeffs(gens.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if ((*sol)[k] == 0) continue;
    const Column& c = columns[k];
    auto [it, inserted] = coeffs[c.gen].try_emplace(c.z, Series(n, x_cap));
    it->second.add_term(c.x, (*sol)[k]);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& [z, s] : coeffs[i]) out.multipliers[i].add_term(z, s);
  }
  return out;
}

InvolutivityReport involutivity_check(const std::vector<Symbol>& gens, int n_trunc, int zeta_bound) {
  InvolutivityReport out;
  bool inconclusive = false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      ++out.pairs_checked;
      const Symbol br = poisson_bracket(gens[j], gens[i]);
      if (br.is_zero()) continue;
      const MembershipVerdict v = membership_truncated(br, gens, n_trunc, zeta_bound);
      if (v.status == Membership::NotMemberCertified) {
        out.status = Involutivity::Fail;
        out.witness_pair = {static_cast<int>(j), static_cast<int>(i)};
        out.witness = br;
        return out;
      }
      if (v.status == Membership::Inconclusive) inconclusive = true;
    }
  }
  out.status = inconclusive ? Involutivity::Inconclusive : Involutivity::Pass;
  return out;
}

ChainReport bracket_chain_probe(const Series& f, int max_steps) {
  const int n = f.num_vars();
  if (n == 0) fail(ErrorCode::AxisOutOfRange, "series has no variables");
  ChainReport out;
  Series g = f;
  for (int l = 0;; ++l) {
    out.chain.push_back(g);
    out.step = l;
    if (g.constant_term() != 0) {
      out.outcome = ChainOutcome::UnitReached;
      return out;
    }
    if (g.is_zero() && g.is_exact()) {
      out.outcome = ChainOutcome::Stable;
      return out;
    }
    if (l == max_steps || g.precision() <= 0) {
      out.outcome = ChainOutcome::BudgetExhausted;
      return out;
    }
    // {z_n, g} = d_n g; the derivative keeps track of the lost precision.
    g = partial_derivative(g, n - 1);
  }
}

std::string to_string(const Symbol& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [z, c] : s.terms()) append_scaled_term(out, c, monomial_to_string(z, 'z'), s.terms().size() == 1);
  return out;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::NotMemberCertified: return "NotMember_certified";
    case Membership::MemberWitness: return "MemberWitness";
    case Membership::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(Involutivity v) {
  switch (v) {
    case Involutivity::Pass: return "pass";
    case Involutivity::Fail: return "fail";
    case Involutivity::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(ChainOutcome c) {
  switch (c) {
    case ChainOutcome::UnitReached: return "unit_reached";
    case ChainOutcome::Stable: return "stable";
    case ChainOutcome::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

}  // namespace fpsd
