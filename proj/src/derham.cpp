#include "fpsd/derham.hpp"

#include <algorithm>

namespace fpsd {

namespace {

void combinations(int m, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < m; ++i) {
    cur.push_back(i);
    combinations(m, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// dx_s ^ dx_J = sign * dx_{J'} with J' = J + {s} sorted; nullopt when s in J.
std::optional<std::pair<std::vector<int>, int>> wedge(int s, const std::vector<int>& j) {
  int before = 0;
  for (int v : j) {
    if (v == s) return std::nullopt;
    if (v < s) ++before;
  }
  std::vector<int> out = j;
  out.insert(std::upper_bound(out.begin(), out.end(), s), s);
  return std::make_pair(out, before % 2 ? -1 : 1);
}

std::size_t form_position(const std::vector<std::vector<int>>& forms, const std::vector<int>& j) {
  return static_cast<std::size_t>(std::lower_bound(forms.begin(), forms.end(), j) - forms.begin());
}

void add_scaled(SparseRow& dst, const SparseRow& src, const Rational& scale, std::size_t offset) {
  for (const auto& [c, v] : src) {
    auto [it, inserted] = dst.try_emplace(c + offset, 0);
    it->second += scale * v;
    if (it->second == 0) dst.erase(it);
  }
}

SparseRow combine_rows(const SparseMatrix& m, const Vector& w) {
  SparseRow out;
  for (std::size_t q = 0; q < w.size(); ++q) {
    if (w[q] != 0) add_scaled(out, m.row(q), w[q], 0);
  }
  return out;
}


}  // namespace

std::vector<std::vector<int>> form_indices(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (k >= 0 && k <= m) combinations(m, k, 0, cur, out);
  return out;
}

TruncatedModule::TruncatedModule(const ModulePresentation& m, int n_trunc, int pole_bound)
    : module_(m), n_trunc_(n_trunc), pole_bound_(m.kind() == ModuleKind::Localization ? pole_bound : 0) {
  if (n_trunc < 0) fail(ErrorCode::InvalidArgument, "truncation must be nonnegative");
  if (pole_bound_ < 0) fail(ErrorCode::InvalidArgument, "pole bound must be nonnegative");
  const int n = m.num_vars();
  if (m.kind() == ModuleKind::Localization) {
    f_order_ = m.f().order();
    const int need = std::max(max_degree(0), max_degree(n));
    if (m.f().precision() < need) {
      fail(ErrorCode::InsufficientPrecision, "localizing series needs precision " + std::to_string(need) +
                                                 " for this truncation, has " + precision::to_string(m.f().precision()));
    }
  }
  if (m.kind() == ModuleKind::Connection) {
    const IntegrabilityReport rep = check_integrability(m);
    if (!rep.integrable) fail(ErrorCode::NonIntegrable, "connection is not integrable");
    for (const auto& mat : m.matrices()) {
      for (const auto& row : mat) {
        for (const auto& e : row) {
          if (e.precision() < n_trunc) {
            fail(ErrorCode::InsufficientPrecision, "connection entries need precision " + std::to_string(n_trunc));
          }
        }
      }
    }
  }
  for (int p = 0; p <= n + 1; ++p) {
    monomials_.push_back(monomials_up_to(n, max_degree(p)));
    std::map<Exponent, std::size_t> pos;
    for (std::size_t k = 0; k < monomials_.back().size(); ++k) pos.emplace(monomials_.back()[k], k);
    positions_.push_back(std::move(pos));
  }
}

int TruncatedModule::max_degree(int p) const { return n_trunc_ - p + f_order_ * (pole_bound_ + p); }

std::size_t TruncatedModule::dim(int p) const { return module_.rank() * monomials_.at(p).size(); }

std::size_t TruncatedModule::index(int p, int comp, const Exponent& e) const {
  return comp * monomials_[p].size() + positions_[p].at(e);
}

SparseRow TruncatedModule::image(int p, int s, std::size_t basis_index) const {
  const int n = num_vars();
  const std::size_t nmon = monomials_[p].size();
  const int comp = static_cast<int>(basis_index / nmon);
  const Exponent& mu = monomials_[p][basis_index % nmon];
  const int cap = max_degree(p + 1);
  SparseRow row;
  auto emit = [&](int c, const Series& s_val) {
    for (const auto& [e, v] : s_val.terms()) {
      if (total_degree(e) > cap) break;
      row[index(p + 1, c, e)] += v;
    }
  };
  const Series x_mu = Series::monomial(n, mu, 1);
  if (module_.kind() == ModuleKind::Connection) {
    emit(comp, partial_derivative(x_mu, s));
    const auto& a = module_.matrices()[s];
    for (int d = 0; d < module_.rank(); ++d) emit(d, a[d][comp] * x_mu);
  } else if (module_.kind() == ModuleKind::Localization) {
    const Series& f = module_.f();
    emit(0, partial_derivative(x_mu, s) * f - x_mu * partial_derivative(f, s) * Rational(pole(p)));
  } else {
    emit(0, partial_derivative(x_mu, s));
  }
  for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
  return row;
}

const SparseMatrix& TruncatedModule::partial(int p, int s) const {
  auto it = partials_.find({p, s});
  if (it != partials_.end()) return it->second;
  SparseMatrix m(0, dim(p + 1));
  for (std::size_t q = 0; q < dim(p); ++q) m.append_row(image(p, s, q));
  return partials_.emplace(std::make_pair(p, s), std::move(m)).first->second;
}

SparseRow TruncatedModule::row_of(int p, int comp, const Series& num) const {
  const int cap = max_degree(p);
  SparseRow row;
  for (const auto& [e, v] : num.terms()) {
    if (total_degree(e) > cap) break;
    row.emplace(index(p, comp, e), v);
  }
  return row;
}

ModuleElement TruncatedModule::element(int p, const Vector& coords) const {
  const int n = num_vars();
  const std::size_t nmon = monomials_[p].size();
  ModuleElement out;
  out.pole = module_.kind() == ModuleKind::Localization ? pole(p) : 0;
  for (int c = 0; c < module_.rank(); ++c) {
    Series s(n, precision::kExact);
    for (std::size_t k = 0; k < nmon; ++k) s.add_term(monomials_[p][k], coords[c * nmon + k]);
    out.components.push_back(s);
  }
  if (module_.kind() == ModuleKind::Localization) return loc_normalize(out, module_.f());
  return out;
}

ModuleElement TruncatedModule::basis_element(int p, std::size_t index) const {
  Vector v(dim(p), Rational(0));
  v.at(index) = 1;
  return element(p, v);
}

namespace {

SparseMatrix stack(const std::vector<const SparseMatrix*>& parts, std::size_t cols) {
  SparseMatrix out(0, cols);
  for (const SparseMatrix* m : parts) {
    if (!m) continue;
    for (std::size_t r = 0; r < m->rows(); ++r) out.append_row(m->row(r));
  }
  return out;
}

// One complex built from the levels of a truncated module: forms over the
// first m variables, level offset off, optionally restricted to ker d_n or
// taken modulo d_n(previous level).
enum class Flavor { Full, Kernel, Cokernel };

struct Subquotient {
  std::vector<std::size_t> ambient;
  std::vector<std::optional<SparseMatrix>> sub;  // nullopt: everything
  std::vector<SparseMatrix> quot;                // rows divided out
  std::vector<SparseMatrix> d;
};

Subquotient make_complex(const TruncatedModule& t, Flavor flavor) {
  const int n = t.num_vars();
  const int m = flavor == Flavor::Full ? n : n - 1;
  const int off = flavor == Flavor::Cokernel ? 1 : 0;
  Subquotient out;
  for (int p = 0; p <= m; ++p) {
    const auto forms = form_indices(m, p);
    const std::size_t block = t.dim(p + off);
    out.ambient.push_back(forms.size() * block);
    SparseMatrix q(0, out.ambient.back());
    std::optional<SparseMatrix> w;
    if (flavor == Flavor::Kernel) {
      w = SparseMatrix(0, out.ambient.back());
      const auto ker = nullspace(t.partial(p, n - 1).transpose());
      for (std::size_t b = 0; b < forms.size(); ++b) {
        for (const auto& v : ker) {
          SparseRow row;
          for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] != 0) row.emplace(b * block + k, v[k]);
          w->append_row(std::move(row));
        }
      }
    }
    if (flavor == Flavor::Cokernel) {
      const SparseMatrix& img = t.partial(p, n - 1);
      for (std::size_t b = 0; b < forms.size(); ++b) {
        for (std::size_t r = 0; r < img.rows(); ++r) {
          SparseRow row;
          add_scaled(row, img.row(r), 1, b * block);
          q.append_row(std::move(row));
        }
      }
    }
    out.sub.push_back(std::move(w));
    out.quot.push_back(std::move(q));
  }
  for (int p = 0; p < m; ++p) {
    const auto forms = form_indices(m, p);
    const auto next = form_indices(m, p + 1);
    SparseMatrix d(0, out.ambient[p + 1]);
    for (const auto& j : forms) {
      for (std::size_t q = 0; q < t.dim(p + off); ++q) {
        SparseRow row;
        for (int s = 0; s < m; ++s) {
          const auto wd = wedge(s, j);
          if (!wd) continue;
          add_scaled(row, t.partial(p + off, s).row(q), wd->second, form_position(next, wd->first) * t.dim(p + off + 1));
        }
        d.append_row(std::move(row));
      }
    }
    out.d.push_back(std::move(d));
  }
  return out;
}

// Level inclusion K -> K+1 (multiply the numerator by f), block diagonal over forms.
std::vector<SparseMatrix> inclusions(const TruncatedModule& coarse, const TruncatedModule& fine, int m, int off) {
  const int n = coarse.num_vars();
  const Series& f = coarse.module().f();
  std::vector<SparseMatrix> out;
  for (int p = 0; p <= m; ++p) {
    const std::size_t nforms = form_indices(m, p).size();
    SparseMatrix level(0, fine.dim(p + off));
    for (const auto& mu : coarse.monomials(p + off)) level.append_row(fine.row_of(p + off, 0, Series::monomial(n, mu, 1) * f));
    SparseMatrix inc(0, nforms * fine.dim(p + off));
    for (std::size_t b = 0; b < nforms; ++b) {
      for (std::size_t r = 0; r < level.rows(); ++r) {
        SparseRow row;
        add_scaled(row, level.row(r), 1, b * fine.dim(p + off));
        inc.append_row(std::move(row));
      }
    }
    out.push_back(std::move(inc));
  }
  return out;
}

SparseMatrix identity_rows(std::size_t k) {
  SparseMatrix out(0, k);
  for (std::size_t i = 0; i < k; ++i) out.append_row(SparseRow{{i, Rational(1)}});
  return out;
}

const SparseMatrix& generators(const Subquotient& c, int p, SparseMatrix& scratch) {
  if (c.sub[p]) return *c.sub[p];
  scratch = identity_rows(c.ambient[p]);
  return scratch;
}

// Cycles of c in degree p: {z in sub : d z in quot}.
SparseMatrix cycles(const Subquotient& c, int p) {
  SparseMatrix scratch;
  const SparseMatrix& g = generators(c, p, scratch);
  if (p >= static_cast<int>(c.d.size())) return g;
  const SparseMatrix gd = g.multiply(c.d[p]);
  const SparseMatrix s = stack({&gd, &c.quot[p + 1]}, c.ambient[p + 1]);
  SparseMatrix out(0, c.ambient[p]);
  for (const auto& v : nullspace(s.transpose())) {
    Vector coeff(v.begin(), v.begin() + static_cast<long>(g.rows()));
    out.append_row(combine_rows(g, coeff));
  }
  return out;
}

// Boundaries plus the quotient in degree p.
SparseMatrix trivial_part(const Subquotient& c, int p) {
  if (p == 0) return c.quot[0];
  SparseMatrix scratch;
  const SparseMatrix gd = generators(c, p - 1, scratch).multiply(c.d[p - 1]);
  return stack({&gd, &c.quot[p]}, c.ambient[p]);
}

// dim of the image of H^p(coarse) in H^p(fine); fine == nullptr means the plain H^p.
std::vector<int> image_cohomology(const Subquotient& coarse, const Subquotient* fine, const std::vector<SparseMatrix>* inc) {
  const Subquotient& target = fine ? *fine : coarse;
  std::vector<int> out;
  for (std::size_t p = 0; p < coarse.ambient.size(); ++p) {
    SparseMatrix z = cycles(coarse, static_cast<int>(p));
    if (inc) z = z.multiply((*inc)[p]);
    const SparseMatrix triv = trivial_part(target, static_cast<int>(p));
    const long base = static_cast<long>(rank(triv));
    out.push_back(static_cast<int>(static_cast<long>(rank(stack({&z, &triv}, target.ambient[p]))) - base));
  }
  return out;
}

struct Model {
  TruncatedModule coarse;
  std::optional<TruncatedModule> fine;
  Model(const ModulePresentation& m, int n_trunc, int k) : coarse(m, n_trunc, k) {
    if (m.kind() == ModuleKind::Localization) fine.emplace(m, n_trunc, coarse.pole_bound() + 1);
  }
  std::vector<int> cohomology(Flavor flavor) const {
    const Subquotient a = make_complex(coarse, flavor);
    if (!fine) return image_cohomology(a, nullptr, nullptr);
    const Subquotient b = make_complex(*fine, flavor);
    const int m = flavor == Flavor::Full ? coarse.num_vars() : coarse.num_vars() - 1;
    const auto inc = inclusions(coarse, *fine, m, flavor == Flavor::Cokernel ? 1 : 0);
    return image_cohomology(a, &b, &inc);
  }
};

}  // namespace

TruncatedComplex build_complex(const ModulePresentation& m, int n_trunc, int pole_bound) {
  const Model model(m, n_trunc, pole_bound);
  const int n = m.num_vars();
  TruncatedComplex out;
  out.num_vars = n;
  out.n_trunc = n_trunc;
  out.pole_bound = model.coarse.pole_bound();
  Subquotient c = make_complex(model.coarse, Flavor::Full);
  for (auto a : c.ambient) out.dims.push_back(a);
  out.differentials = std::move(c.d);
  for (int i = 0; i + 1 < n; ++i) {
    if (!out.differentials[i].multiply(out.differentials[i + 1]).is_zero()) out.d_squared_zero = false;
  }
  if (model.fine) {
    Subquotient f = make_complex(*model.fine, Flavor::Full);
    out.refined_differentials = std::move(f.d);
    out.inclusions = inclusions(model.coarse, *model.fine, n, 0);
    for (int i = 0; i + 1 < n; ++i) {
      if (!out.refined_differentials[i].multiply(out.refined_differentials[i + 1]).is_zero()) out.d_squared_zero = false;
    }
  }
  return out;
}

CohomologyReport cohomology_dims(const TruncatedComplex& c) {
  CohomologyReport out;
  out.schedule.emplace_back(c.n_trunc, c.pole_bound);
  out.d_squared_zero = c.d_squared_zero;
  auto wrap = [](const std::vector<std::size_t>& dims, std::vector<SparseMatrix> d) {
    Subquotient s;
    s.ambient = dims;
    for (std::size_t a : dims) {
      s.sub.emplace_back();
      s.quot.emplace_back(0, a);
    }
    s.d = std::move(d);
    return s;
  };
  if (c.inclusions.empty()) {
    std::vector<long> ranks;
    for (const auto& d : c.differentials) ranks.push_back(static_cast<long>(rank(d)));
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
      long h = static_cast<long>(c.dims[i]);
      if (i < ranks.size()) h -= ranks[i];
      if (i > 0) h -= ranks[i - 1];
      out.dims.push_back(static_cast<int>(h));
    }
  } else {
    std::vector<std::size_t> fine_dims;
    for (const auto& inc : c.inclusions) fine_dims.push_back(inc.cols());
    const Subquotient a = wrap(c.dims, c.differentials);
    const Subquotient b = wrap(fine_dims, c.refined_differentials);
    out.dims = image_cohomology(a, &b, &c.inclusions);
  }
  out.history.push_back(out.dims);
  return out;
}

CohomologyReport stabilized_dims(const ModulePresentation& m, const std::vector<std::pair<int, int>>& schedule) {
  if (schedule.size() < 2) fail(ErrorCode::InvalidArgument, "stabilization needs at least two (N, K) pairs");
  CohomologyReport out;
  for (const auto& [n_trunc, k] : schedule) {
    const CohomologyReport run = cohomology_dims(build_complex(m, n_trunc, k));
    out.schedule.push_back(run.schedule.front());
    out.history.push_back(run.dims);
    out.d_squared_zero = out.d_squared_zero && run.d_squared_zero;
  }
  out.dims = out.history.back();
  const auto& prev = out.history[out.history.size() - 2];
  for (std::size_t i = 0; i < out.dims.size(); ++i) out.stabilized.push_back(out.dims[i] == prev[i]);
  return out;
}

KernelReport kernel_of_dn(const ModulePresentation& m, int n_trunc, int pole_bound) {
  const Model model(m, n_trunc, pole_bound);
  const TruncatedModule& t = model.coarse;
  const int n = m.num_vars();
  KernelReport out;
  out.cohomology = model.cohomology(Flavor::Kernel);
  const auto kernel = nullspace(t.partial(0, n - 1).transpose());
  for (const auto& w : kernel) out.basis.push_back(t.element(0, w));
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<ModuleElement> act;
    for (const auto& w : kernel) {
      const SparseRow r = combine_rows(t.partial(0, i), w);
      Vector v(t.dim(1), Rational(0));
      for (const auto& [c, x] : r) v[c] = x;
      act.push_back(t.element(1, v));
    }
    out.actions.push_back(std::move(act));
  }
  return out;
}

CokernelReport cokernel_of_dn(const ModulePresentation& m, int n_trunc, int pole_bound) {
  const Model model(m, n_trunc, pole_bound);
  const TruncatedModule& t = model.coarse;
  const int n = m.num_vars();
  CokernelReport out;
  out.cohomology = model.cohomology(Flavor::Cokernel);
  const auto candidates = row_space_complement(t.partial(0, n - 1));
  if (!model.fine) {
    for (std::size_t c : candidates) out.basis.push_back(t.basis_element(1, c));
    return out;
  }
  // Keep the representatives that stay independent after enlarging the pole bound.
  const TruncatedModule& f = *model.fine;
  SparseMatrix acc = f.partial(0, n - 1);
  std::size_t r = rank(acc);
  for (std::size_t c : candidates) {
    acc.append_row(f.row_of(1, 0, Series::monomial(n, t.monomials(1)[c], 1) * m.f()));
    const std::size_t r2 = rank(acc);
    if (r2 > r) {
      out.basis.push_back(t.basis_element(1, c));
      r = r2;
    }
  }
  return out;
}

LesReport les_consistency(const ModulePresentation& m, int n_trunc, int pole_bound) {
  const Model model(m, n_trunc, pole_bound);
  LesReport out;
  out.h_m = model.cohomology(Flavor::Full);
  out.h_kernel = model.cohomology(Flavor::Kernel);
  out.h_cokernel = model.cohomology(Flavor::Cokernel);
  auto at = [](const std::vector<int>& v, int i) { return i >= 0 && i < static_cast<int>(v.size()) ? v[i] : 0; };
  long chi_m = 0, chi_k = 0, chi_c = 0;
  for (int i = 0; i < static_cast<int>(out.h_m.size()); ++i) {
    if (at(out.h_m, i) > at(out.h_kernel, i) + at(out.h_cokernel, i - 1)) {
      if (out.inequalities_hold) out.first_violation = i;
      out.inequalities_hold = false;
    }
    chi_m += (i % 2 ? -1 : 1) * at(out.h_m, i);
    chi_k += (i % 2 ? -1 : 1) * at(out.h_kernel, i);
    chi_c += (i % 2 ? -1 : 1) * at(out.h_cokernel, i);
  }
  out.euler_identity_holds = chi_m == chi_k - chi_c;
  return out;
}

}  // namespace fpsd
