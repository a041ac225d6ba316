#include "fpsd/dmodule.hpp"

#include <algorithm>

#include "fpsd/weierstrass.hpp"

namespace fpsd {

ModulePresentation ModulePresentation::structure_sheaf(int num_vars) {
  if (num_vars < 1) fail(ErrorCode::InvalidArgument, "module needs at least one variable");
  ModulePresentation m;
  m.num_vars_ = num_vars;
  m.f_ = Series::constant(num_vars, 1);
  return m;
}

ModulePresentation ModulePresentation::localization(const Series& f, int pole_bound) {
  if (f.num_vars() < 1) fail(ErrorCode::InvalidArgument, "module needs at least one variable");
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "localization at a series vanishing to precision");
  if (pole_bound < 0) fail(ErrorCode::InvalidArgument, "negative pole bound");
  ModulePresentation m;
  m.kind_ = ModuleKind::Localization;
  m.num_vars_ = f.num_vars();
  m.f_ = f;
  m.pole_bound_ = pole_bound;
  return m;
}

ModulePresentation ModulePresentation::connection(int num_vars, std::vector<SeriesMatrix> a) {
  if (num_vars < 1) fail(ErrorCode::InvalidArgument, "module needs at least one variable");
  if (static_cast<int>(a.size()) != num_vars) {
    fail(ErrorCode::VariableMismatch, "connection needs one matrix per variable");
  }
  const std::size_t r = a.front().size();
  if (r == 0) fail(ErrorCode::InvalidArgument, "connection of rank zero");
  for (const auto& mat : a) {
    if (mat.size() != r) fail(ErrorCode::InvalidArgument, "connection matrices of different sizes");
    for (const auto& row : mat) {
      if (row.size() != r) fail(ErrorCode::InvalidArgument, "connection matrix not square");
      for (const auto& s : row) {
        if (s.num_vars() != num_vars) fail(ErrorCode::VariableMismatch, "connection entry variable count");
      }
    }
  }
  ModulePresentation m;
  m.kind_ = ModuleKind::Connection;
  m.num_vars_ = num_vars;
  m.f_ = Series::constant(num_vars, 1);
  m.a_ = std::move(a);
  return m;
}

ModulePresentation ModulePresentation::with_pole_bound(int k) const {
  ModulePresentation m = *this;
  if (kind_ == ModuleKind::Localization) m.pole_bound_ = k;
  return m;
}

ModuleElement scalar_element(const Series& s, int pole) { return {{s}, pole}; }

IntegrabilityReport check_integrability(const ModulePresentation& m) {
  if (m.kind() != ModuleKind::Connection) fail(ErrorCode::WrongVariant, "integrability needs a connection");
  const auto& a = m.matrices();
  const int n = m.num_vars();
  const int r = m.rank();
  IntegrabilityReport out;
  int worst = precision::kExact;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int row = 0; row < r; ++row) {
        for (int col = 0; col < r; ++col) {
          Series e = partial_derivative(a[j][row][col], i) - partial_derivative(a[i][row][col], j);
          for (int k = 0; k < r; ++k) e += a[i][row][k] * a[j][k][col] - a[j][row][k] * a[i][k][col];
          out.precision = std::min(out.precision, e.precision());
          if (e.is_zero()) continue;
          if (out.integrable || e.order() < worst) {
            out.integrable = false;
            worst = e.order();
            out.i = i;
            out.j = j;
            out.row = row;
            out.col = col;
            out.entry = e;
          }
        }
      }
    }
  }
  return out;
}

std::optional<Series> polynomial_divide(const Series& g, const Series& f) {
  if (!g.is_exact() || !f.is_exact() || f.is_zero()) return std::nullopt;
  const int n = f.num_vars();
  const auto& [lf, lc] = *f.terms().rbegin();
  Series rem = g;
  Series q(n, precision::kExact);
  while (!rem.is_zero()) {
    const auto [lr, rc] = *rem.terms().rbegin();
    Exponent e(n);
    for (int i = 0; i < n; ++i) {
      e[i] = lr[i] - lf[i];
      if (e[i] < 0) return std::nullopt;
    }
    const Series step = Series::monomial(n, e, rc / lc);
    q += step;
    rem -= step * f;
  }
  return q;
}

namespace {

// g / f in R when the division is visible at the available precision.
std::optional<Series> series_divide(const Series& g, const Series& f) {
  if (g.is_exact() && f.is_exact()) return polynomial_divide(g, f);
  try {
    const RegularizingResult reg = find_regularizing_substitution(f);
    const Series fl = apply_linear_substitution(f, reg.substitution);
    const Series gl = apply_linear_substitution(g, reg.substitution);
    const DivisionResult div = weierstrass_divide(gl, fl);
    for (const auto& r : div.remainder) {
      if (!r.is_zero() || r.precision() < 0) return std::nullopt;
    }
    if (div.quotient.precision() < 0) return std::nullopt;
    return apply_linear_substitution(div.quotient, reg.substitution.inverse());
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

ModuleElement loc_normalize(const ModuleElement& e, const Series& f) {
  ModuleElement out = e;
  if (out.components.size() != 1) fail(ErrorCode::WrongVariant, "normalization applies to localization elements");
  Series& g = out.components[0];
  if (g.is_zero() && g.is_exact()) out.pole = 0;
  while (out.pole > 0) {
    auto q = series_divide(g, f);
    if (!q) break;
    g = *q;
    --out.pole;
  }
  return out;
}

ModuleElement partial_action(const ModulePresentation& m, const ModuleElement& e, int axis) {
  const int n = m.num_vars();
  if (axis < 0 || axis >= n) fail(ErrorCode::AxisOutOfRange, "derivative axis out of range");
  if (static_cast<int>(e.components.size()) != m.rank()) {
    fail(ErrorCode::WrongVariant, "element does not belong to the module");
  }
  switch (m.kind()) {
    case ModuleKind::StructureSheaf:
      return scalar_element(partial_derivative(e.components[0], axis));
    case ModuleKind::Localization: {
      const ModuleElement in = loc_normalize(e, m.f());
      const Series& g = in.components[0];
      if (in.pole == 0) return scalar_element(partial_derivative(g, axis));
      if (in.pole + 1 > m.pole_bound()) {
        fail(ErrorCode::PoleBudgetExceeded, "derivative needs pole order " + std::to_string(in.pole + 1) +
                                                " above the bound " + std::to_string(m.pole_bound()));
      }
      const Series num = partial_derivative(g, axis) * m.f() - g * partial_derivative(m.f(), axis) * Rational(in.pole);
      return loc_normalize(scalar_element(num, in.pole + 1), m.f());
    }
    case ModuleKind::Connection: {
      const auto& a = m.matrices()[axis];
      ModuleElement out;
      for (int c = 0; c < m.rank(); ++c) {
        Series v = partial_derivative(e.components[c], axis);
        for (int d = 0; d < m.rank(); ++d) v += a[c][d] * e.components[d];
        out.components.push_back(v);
      }
      return out;
    }
  }
  return e;
}

std::string to_string(const ModulePresentation& m) {
  switch (m.kind()) {
    case ModuleKind::StructureSheaf: return "R";
    case ModuleKind::Localization: return "R_loc(" + to_string(m.f()) + ")";
    case ModuleKind::Connection: {
      std::string out = "conn(" + std::to_string(m.rank());
      for (const auto& mat : m.matrices()) {
        out += "; [";
        for (std::size_t r = 0; r < mat.size(); ++r) {
          out += r ? ", [" : "[";
          for (std::size_t c = 0; c < mat[r].size(); ++c) out += (c ? ", " : "") + to_string(mat[r][c]);
          out += "]";
        }
        out += "]";
      }
      return out + ")";
    }
  }
  return "?";
}

std::string to_string(const ModulePresentation& m, const ModuleElement& e) {
  if (m.kind() == ModuleKind::Connection) {
    std::string out = "[";
    for (std::size_t c = 0; c < e.components.size(); ++c) out += (c ? ", " : "") + to_string(e.components[c]);
    return out + "]";
  }
  const Series& g = e.components.at(0);
  if (e.pole == 0) return to_string(g);
  std::string num = to_string(g);
  if (!(g.is_exact() && g.terms().size() <= 1)) num = "(" + num + ")";
  std::string out = num + "/(" + to_string(m.f()) + ")";
  if (e.pole > 1) out += "^" + std::to_string(e.pole);
  return out;
}

std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::StructureSheaf: return "structure_sheaf";
    case ModuleKind::Localization: return "localization";
    case ModuleKind::Connection: return "connection";
  }
  return "?";
}

}  // namespace fpsd
