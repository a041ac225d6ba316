#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpsd/series.hpp"

namespace fpsd {

using SeriesMatrix = std::vector<std::vector<Series>>;

enum class ModuleKind { StructureSheaf, Localization, Connection };

// R, R_f with a pole budget K, or R^r with an integrable connection d + A_i.
class ModulePresentation {
 public:
  static ModulePresentation structure_sheaf(int num_vars);
  static ModulePresentation localization(const Series& f, int pole_bound);
  // a[i] is the r x r matrix A_{i+1}.
  static ModulePresentation connection(int num_vars, std::vector<SeriesMatrix> a);

  ModuleKind kind() const { return kind_; }
  int num_vars() const { return num_vars_; }
  int rank() const { return kind_ == ModuleKind::Connection ? static_cast<int>(a_.front().size()) : 1; }
  // Localization data; f = 1 for the other variants.
  const Series& f() const { return f_; }
  int pole_bound() const { return pole_bound_; }
  ModulePresentation with_pole_bound(int k) const;
  const std::vector<SeriesMatrix>& matrices() const { return a_; }

 private:
  ModuleKind kind_ = ModuleKind::StructureSheaf;
  int num_vars_ = 0;
  Series f_;
  int pole_bound_ = 0;
  std::vector<SeriesMatrix> a_;
};

// components / f^pole; components has rank() entries.
struct ModuleElement {
  std::vector<Series> components;
  int pole = 0;

  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;
};

ModuleElement scalar_element(const Series& s, int pole = 0);

struct IntegrabilityReport {
  bool integrable = true;
  int precision = precision::kExact;  // residual known to this precision
  // Worst entry: lowest order, then first by (i, j, row, col).
  int i = 0, j = 0, row = 0, col = 0;
  Series entry;
};

// d_i A_j - d_j A_i + [A_i, A_j] for i < j.
IntegrabilityReport check_integrability(const ModulePresentation& m);

// Removes factors of f from a localization element while the pole is positive.
// Exact numerators are divided as polynomials; truncated ones by Weierstrass
// division after a regularizing substitution.
ModuleElement loc_normalize(const ModuleElement& e, const Series& f);

ModuleElement partial_action(const ModulePresentation& m, const ModuleElement& e, int axis);

std::string to_string(const ModulePresentation& m);
std::string to_string(const ModulePresentation& m, const ModuleElement& e);
std::string to_string(ModuleKind k);

// Exact polynomial division; nullopt when f does not divide g.
std::optional<Series> polynomial_divide(const Series& g, const Series& f);

}  // namespace fpsd
