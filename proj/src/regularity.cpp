#include "fpsd/regularity.hpp"

#include <algorithm>

#include "fpsd/derham.hpp"
#include "fpsd/linalg.hpp"

namespace fpsd {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::NoEvidence: return "no-evidence";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ModuleElement scale(const ModulePresentation& m, const ModuleElement& e, const Series& s) {
  ModuleElement out = e;
  for (auto& c : out.components) c = s * c;
  if (m.kind() == ModuleKind::Localization) return loc_normalize(out, m.f());
  return out;
}

namespace {

// Ambient truncated space: level 1 of the model at (N+1, P-1), i.e. pole P and
// numerators modulo order above N + ord(f) P.
struct Ambient {
  TruncatedModule t;
  int pole;
  Ambient(const ModulePresentation& m, int n_trunc, int pole) : t(m, n_trunc + 1, std::max(pole - 1, 0)), pole(t.pole(1)) {}

  SparseRow row(const ModuleElement& e) const {
    SparseRow out;
    const int cap = t.max_degree(1);
    for (std::size_t c = 0; c < e.components.size(); ++c) {
      Series num = e.components[c];
      if (t.module().kind() == ModuleKind::Localization) {
        if (e.pole > pole) fail(ErrorCode::PoleBudgetExceeded, "element pole above the truncation");
        num = num * power(t.module().f(), pole - e.pole);
      }
      if (num.precision() < cap) {
        fail(ErrorCode::InsufficientPrecision, "element known to precision " + precision::to_string(num.precision()) +
                                                   ", truncation needs " + std::to_string(cap));
      }
      for (const auto& [k, v] : t.row_of(1, static_cast<int>(c), num)) out.emplace(k, v);
    }
    return out;
  }
  std::size_t dim() const { return t.dim(1); }
};

bool is_zero_at(const Ambient& a, const ModuleElement& e) { return a.row(e).empty(); }

ModulePresentation with_budget(const ModulePresentation& m, int k) { return m.with_pole_bound(k); }

// Monomials of degree <= N, graded so low-degree unknowns become pivots first.
std::vector<Exponent> graded_monomials(int n, int hi) { return monomials_up_to(n, hi); }

}  // namespace

ETauReport e_tau_relation(const ModulePresentation& m, const ModuleElement& e, const Series& f, int p_max, int n_trunc,
                          int pole_bound) {
  const int n = m.num_vars();
  if (f.num_vars() != n) fail(ErrorCode::VariableMismatch, "tau coefficient has the wrong number of variables");
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "tau coefficient vanishes");
  if (p_max < 1) fail(ErrorCode::InvalidArgument, "p_max must be positive");
  const ModulePresentation mk = with_budget(m, pole_bound);
  ETauReport out;
  out.p_max = p_max;
  out.n_trunc = n_trunc;
  out.pole_bound = pole_bound;
  ModuleElement cur = m.kind() == ModuleKind::Localization ? loc_normalize(e, m.f()) : e;
  out.powers.push_back(cur);
  const auto monos = graded_monomials(n, n_trunc);
  for (int p = 1; p <= p_max; ++p) {
    cur = scale(mk, partial_action(mk, cur, n - 1), f);
    out.powers.push_back(cur);
    int pole = 0;
    for (const auto& x : out.powers) pole = std::max(pole, x.pole);
    const Ambient amb(m, n_trunc, pole);
    // Columns: x^nu tau^i(m) for i < p; unknowns ordered by (degree, i).
    SparseMatrix cols(0, amb.dim());
    std::vector<std::pair<int, std::size_t>> labels;
    for (std::size_t k = 0; k < monos.size(); ++k) {
      for (int i = 0; i < p; ++i) {
        cols.append_row(amb.row(scale(mk, out.powers[i], Series::monomial(n, monos[k], 1))));
        labels.emplace_back(i, k);
      }
    }
    const SparseRow target = amb.row(out.powers[p]);
    Vector rhs(amb.dim(), Rational(0));
    for (const auto& [c, v] : target) rhs[c] = v;
    const auto sol = solve(cols.transpose(), rhs);
    if (!sol) continue;
    out.p = p;
    out.relation.assign(p, Series::zero(n));
    for (std::size_t u = 0; u < labels.size(); ++u) {
      if ((*sol)[u] != 0) out.relation[labels[u].first].add_term(monos[labels[u].second], (*sol)[u]);
    }
    return out;
  }
  return out;
}

RegularElementReport xn_regular_element_check(const ModulePresentation& m, const ModuleElement& e, const Series& f,
                                              int p_max, int n_trunc, int pole_bound) {
  RegularElementReport out;
  const RegularityOrder reg = is_xn_regular(f);
  out.regularity_order = reg.order;
  try {
    out.relation = e_tau_relation(m, e, f, p_max, n_trunc, pole_bound);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::PoleBudgetExceeded && err.code() != ErrorCode::InsufficientPrecision) throw;
    out.reason = err.what();
    return out;
  }
  if (!reg.order) {
    out.reason = "f is not x_n-regular to precision " + precision::to_string(reg.certified_to_precision);
    out.verdict = f.is_exact() ? Verdict::NoEvidence : Verdict::Inconclusive;
    return out;
  }
  if (!out.relation->p) {
    out.verdict = Verdict::NoEvidence;
    out.reason = "no relation up to p = " + std::to_string(p_max);
    return out;
  }
  out.verdict = Verdict::Yes;
  return out;
}

ReglinkReport reglink_power_search(const ModulePresentation& m, const ModuleElement& e, const Series& f, int s_max,
                                   int p_max, int n_trunc, int pole_bound) {
  ReglinkReport out;
  Series fs = Series::constant(m.num_vars(), 1);
  for (int s = 0; s <= s_max; ++s) {
    if (s) fs = fs * f;
    try {
      const ETauReport rep = e_tau_relation(m, e, fs, p_max, n_trunc, pole_bound);
      if (rep.p) {
        out.attempts.push_back("s = " + std::to_string(s) + ": relation with p = " + std::to_string(*rep.p));
        out.s = s;
        return out;
      }
      out.attempts.push_back("s = " + std::to_string(s) + ": no relation up to p = " + std::to_string(p_max));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::PoleBudgetExceeded && err.code() != ErrorCode::InsufficientPrecision) throw;
      out.attempts.push_back("s = " + std::to_string(s) + ": " + err.what());
    }
  }
  return out;
}

KernelRelationReport kernel_relation_homogeneity(const ModulePresentation& m, const std::vector<ModuleElement>& elements,
                                                 const std::vector<Series>& coeffs, int n_trunc, int pole_bound) {
  const int n = m.num_vars();
  if (elements.size() != coeffs.size() || elements.empty()) {
    fail(ErrorCode::InvalidArgument, "need matching nonempty lists of elements and coefficients");
  }
  const ModulePresentation mk = with_budget(m, pole_bound);
  int pole = 0;
  for (const auto& x : elements) pole = std::max(pole, x.pole + 1);
  const Ambient amb(m, n_trunc, pole);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!is_zero_at(amb, partial_action(mk, elements[i], n - 1))) {
      fail(ErrorCode::PreconditionViolated, "element " + std::to_string(i + 1) + " is not in the kernel of d_n");
    }
  }
  auto combination = [&](const std::vector<Series>& fs) {
    ModuleElement acc = scale(m, elements[0], fs[0]);
    SparseRow row = amb.row(acc);
    for (std::size_t i = 1; i < elements.size(); ++i) {
      for (const auto& [c, v] : amb.row(scale(m, elements[i], fs[i]))) {
        auto [it, ins] = row.try_emplace(c, 0);
        it->second += v;
        if (it->second == 0) row.erase(it);
      }
    }
    return row;
  };
  if (!combination(coeffs).empty()) fail(ErrorCode::PreconditionViolated, "sum f_i m_i is not zero at truncation");
  KernelRelationReport out;
  out.checked_to = n_trunc;
  for (int j = 0; j <= n_trunc; ++j) {
    std::vector<Series> fj;
    for (const auto& c : coeffs) fj.push_back(embed_last(xn_coefficient(c, j)));
    if (!combination(fj).empty()) {
      out.holds = false;
      out.first_failure = j;
      return out;
    }
  }
  return out;
}

E0CoverReport e0_cover_check(const ModulePresentation& m, const ModuleElement& e, const Series& f, int n_trunc,
                             int pole_bound) {
  const int n = m.num_vars();
  E0CoverReport out;
  out.verified_degree = n_trunc;
  const RegularElementReport reg = xn_regular_element_check(m, e, f, n_trunc + 1, n_trunc, pole_bound);
  if (reg.verdict != Verdict::Yes) {
    out.reason = "m is not an x_n-regular element at this budget: " + reg.reason;
    return out;
  }
  const int p = *reg.relation->p;
  const int d = std::max(*reg.regularity_order, 1);
  const ModulePresentation mk = with_budget(m, pole_bound);
  // Congruence representatives x_n^k tau^i(m), k < d, i < p.
  for (int i = 0; i < p; ++i) {
    for (int k = 0; k < d; ++k) {
      Exponent xk(n, 0);
      xk[n - 1] = k;
      out.generators.push_back(scale(mk, reg.relation->powers[i], Series::monomial(n, xk, 1)));
    }
  }
  int pole = std::max(pole_bound, 1);
  if (m.kind() != ModuleKind::Localization) pole = 1;
  const Ambient amb(m, n_trunc, pole);
  SparseMatrix span(0, amb.dim());
  for (const auto& g : out.generators) {
    for (const auto& mu : monomials_up_to(n - 1, n_trunc)) span.append_row(amb.row(scale(mk, g, embed_last(Series::monomial(n - 1, mu, 1)))));
  }
  const SparseMatrix& dn = amb.t.partial(0, n - 1);
  for (std::size_t r = 0; r < dn.rows(); ++r) span.append_row(dn.row(r));
  std::size_t base = rank(span);
  for (const auto& mu : monomials_up_to(n, n_trunc)) {
    span.append_row(amb.row(scale(mk, e, Series::monomial(n, mu, 1))));
    if (rank(span) > base) {
      out.first_uncovered = mu;
      out.verdict = Verdict::NoEvidence;
      out.reason = "x^mu m is not covered at truncation";
      return out;
    }
  }
  out.verdict = Verdict::Yes;
  return out;
}

}  // namespace fpsd
