#pragma once

#include <string>
#include <vector>

#include "fpsd/linalg.hpp"
#include "fpsd/series.hpp"
#include "fpsd/weyl.hpp"

namespace fpsd {

// sum_i r_i d^i in one variable.
struct OneVarOp {
  std::vector<Series> coeffs;  // r_0..r_l, one-variable series

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Validates and trims trailing coefficients that vanish exactly.
OneVarOp make_one_var_op(std::vector<Series> coeffs);
OneVarOp one_var_op(const DiffOp& op);
DiffOp to_diffop(const OneVarOp& op);
Series apply(const OneVarOp& op, const Series& f);
std::string to_string(const OneVarOp& op);

struct Valuation {
  int value = 0;
  bool lower_bound = false;  // all known terms vanish: the valuation is at least value
};

Valuation valuation(const Series& r);
std::string to_string(const Valuation& v);

struct IndicialData {
  int s = 0;
  std::vector<int> index_set;
  std::vector<Rational> poly;       // P(t) coefficients, constant first
  std::vector<int> integer_roots;
  int t0 = 0;
};

IndicialData indicial_data(const OneVarOp& op);
std::string poly_to_string(const std::vector<Rational>& p, char var = 't');
Rational evaluate(const std::vector<Rational>& p, const Rational& t);

// Unique f in m^t with op(f) = g, to precision at most cap.
Series solve(const OneVarOp& op, const Series& g, int t, int cap);

// Matrix of op from span{x^k : lo <= k < hi} to R / m^target (rows are images).
SparseMatrix op_matrix(const OneVarOp& op, int lo, int hi, int target);

struct CokernelDims {
  IndicialData data;
  int t = 0;
  int cokernel = 0;
  int kernel = 0;
  std::vector<int> cokernel_monomials;  // exponents spanning a complement of the image
};

CokernelDims cokernel_dim(const OneVarOp& op);

// dim R / (op(R) + m^size) from op applied to x^k, k < size + l.
int truncated_cokernel(const OneVarOp& op, int size);

struct WeiergenReport {
  std::vector<Series> generators;  // in R
  int verified_degree = 0;
  bool verified = false;
  std::vector<CokernelDims> chain;  // one-variable base case
};

// op = sum_i r_i d_n^i in n variables.
WeiergenReport weiergen_generators(const DiffOp& op, int n_trunc);

}  // namespace fpsd
