#pragma once

#include <vector>

#include "fpsd/series.hpp"
#include "fpsd/symbols.hpp"

namespace fpsd {

// Element of R<d_1..d_n> in normal form: d-exponent -> series coefficient,
// coefficients to the left of the d-monomials.
class DiffOp {
 public:
  using Terms = std::map<Exponent, Series, GrlexLess>;

  DiffOp() = default;
  explicit DiffOp(int num_vars) : num_vars_(num_vars) {}

  static DiffOp multiplication(const Series& g);
  static DiffOp partial(int num_vars, int axis);

  int num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Series coefficient(const Exponent& alpha) const;
  int precision() const;

  void add_term(const Exponent& alpha, const Series& c);

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& b);
  DiffOp& operator-=(const DiffOp& b);

  friend bool operator==(const DiffOp&, const DiffOp&) = default;

 private:
  int num_vars_ = 0;
  Terms terms_;
};

DiffOp operator+(DiffOp a, const DiffOp& b);
DiffOp operator-(DiffOp a, const DiffOp& b);
DiffOp operator*(const DiffOp& a, const DiffOp& b);

DiffOp op_product(const DiffOp& a, const DiffOp& b);
Series apply_op(const DiffOp& a, const Series& g);
int order_of(const DiffOp& a);
Symbol principal_symbol(const DiffOp& a);
DiffOp commutator(const DiffOp& a, const DiffOp& b);

// sum_i coeffs[i] tau^i with tau = tau_def * d_n.
class TauOp {
 public:
  TauOp() = default;
  TauOp(std::vector<Series> coeffs, Series tau_def);

  static TauOp tau(const Series& tau_def);
  static TauOp scalar(const Series& g, const Series& tau_def);

  int num_vars() const { return tau_def_.num_vars(); }
  const std::vector<Series>& coeffs() const { return coeffs_; }
  const Series& tau_def() const { return tau_def_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Series coefficient(int i) const;

  friend bool operator==(const TauOp&, const TauOp&) = default;

 private:
  std::vector<Series> coeffs_;
  Series tau_def_;
};

TauOp operator+(const TauOp& a, const TauOp& b);
TauOp operator-(const TauOp& a, const TauOp& b);

// tau^k applied to a series.
Series tau_power_apply(const Series& tau_def, int k, const Series& g);
// Action of S on g.
Series tau_apply(const TauOp& s, const Series& g);
TauOp tau_product(const TauOp& a, const TauOp& b);
DiffOp tau_expand(const TauOp& t);
TauOp tau_transpose(const TauOp& t);

// Coefficients d_i with S = sum_i tau^i d_i (coefficients on the right).
std::vector<Series> tau_right_form(const TauOp& t);

std::string to_string(const DiffOp& a);
std::string to_string(const TauOp& t);

}  // namespace fpsd
