#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fpsd/dmodule.hpp"
#include "fpsd/linalg.hpp"

namespace fpsd {

// Finite model of a module at truncation (N, K).
//
// Level p holds the elements h / f^(K+p) (h in R^r) modulo those whose
// numerator has order above N - p + o(K+p), o = ord f. The derivatives map
// level p into level p+1 and preserve the submodules divided out, so every
// complex built from the levels is an honest quotient complex. For R and for
// connections f = 1, o = K = 0 and level p is R^r modulo degree > N - p.
class TruncatedModule {
 public:
  TruncatedModule(const ModulePresentation& m, int n_trunc, int pole_bound);

  const ModulePresentation& module() const { return module_; }
  int num_vars() const { return module_.num_vars(); }
  int trunc() const { return n_trunc_; }
  int pole_bound() const { return pole_bound_; }
  int pole(int p) const { return pole_bound_ + p; }
  int max_degree(int p) const;
  std::size_t dim(int p) const;

  // d_s on level p, one row per basis element (the image in level p+1).
  const SparseMatrix& partial(int p, int s) const;

  const std::vector<Exponent>& monomials(int p) const { return monomials_.at(p); }
  // Coordinates of num / f^pole(p) in component comp, truncated to level p.
  SparseRow row_of(int p, int comp, const Series& num) const;

  ModuleElement element(int p, const Vector& coords) const;
  ModuleElement basis_element(int p, std::size_t index) const;

 private:
  std::size_t index(int p, int comp, const Exponent& e) const;
  SparseRow image(int p, int s, std::size_t basis_index) const;

  ModulePresentation module_;
  int n_trunc_;
  int pole_bound_;
  int f_order_ = 0;
  std::vector<std::vector<Exponent>> monomials_;
  std::vector<std::map<Exponent, std::size_t>> positions_;
  mutable std::map<std::pair<int, int>, SparseMatrix> partials_;
};

// Wedge-basis index sets (sorted, lexicographic) of size k from {0..m-1}.
std::vector<std::vector<int>> form_indices(int m, int k);

struct TruncatedComplex {
  int num_vars = 0;
  int n_trunc = 0;
  int pole_bound = 0;
  std::vector<std::size_t> dims;             // dim C^i
  std::vector<SparseMatrix> differentials;   // d^i: rows are images of the basis of C^i
  // Localizations only: the complex at pole bound K+1 and the inclusion maps
  // into it. Reported dimensions are ranks of the induced maps on cohomology,
  // which drops classes that only exist because the pole bound is finite.
  std::vector<SparseMatrix> refined_differentials;
  std::vector<SparseMatrix> inclusions;
  bool d_squared_zero = true;
};

TruncatedComplex build_complex(const ModulePresentation& m, int n_trunc, int pole_bound);

struct CohomologyReport {
  std::vector<int> dims;
  std::vector<bool> stabilized;                  // empty for a single run
  std::vector<std::pair<int, int>> schedule;     // (N, K) per run
  std::vector<std::vector<int>> history;         // dims per run
  bool d_squared_zero = true;
};

CohomologyReport cohomology_dims(const TruncatedComplex& c);
CohomologyReport stabilized_dims(const ModulePresentation& m, const std::vector<std::pair<int, int>>& schedule);

// Kernel of d_n on level 0 and the cohomology of the complex M_* over
// x_1..x_{n-1}.
struct KernelReport {
  std::vector<ModuleElement> basis;
  // actions[i][k]: d_i of basis[k] for i < n-1, an element of level 1.
  std::vector<std::vector<ModuleElement>> actions;
  std::vector<int> cohomology;
};

// Cokernel of d_n: level 1 modulo d_n(level 0), and the cohomology of M-bar.
struct CokernelReport {
  std::vector<ModuleElement> basis;  // representatives in level 1
  std::vector<int> cohomology;
};

KernelReport kernel_of_dn(const ModulePresentation& m, int n_trunc, int pole_bound);
CokernelReport cokernel_of_dn(const ModulePresentation& m, int n_trunc, int pole_bound);

struct LesReport {
  std::vector<int> h_m, h_kernel, h_cokernel;
  bool inequalities_hold = true;
  bool euler_identity_holds = true;
  int first_violation = -1;
};

LesReport les_consistency(const ModulePresentation& m, int n_trunc, int pole_bound);

}  // namespace fpsd
