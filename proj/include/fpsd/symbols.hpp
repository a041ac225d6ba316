#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpsd/series.hpp"

namespace fpsd {

// Element of gr D = R[z_1..z_n]: z-exponent -> series coefficient.
class Symbol {
 public:
  using Terms = std::map<Exponent, Series, GrlexLess>;

  Symbol() = default;
  explicit Symbol(int num_vars) : num_vars_(num_vars) {}
  explicit Symbol(const Series& s);  // z-degree 0

  static Symbol zeta(int num_vars, int axis);

  int num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // -1 for zero.
  int zeta_degree() const;
  int low_zeta_degree() const;
  bool is_homogeneous() const { return zeta_degree() == low_zeta_degree(); }
  // Minimum precision over the coefficients (kExact for zero).
  int precision() const;

  Series coefficient(const Exponent& z) const;
  Symbol homogeneous_component(int k) const;

  // Adds c * z^e; zero series are dropped.
  void add_term(const Exponent& z, const Series& c);

  Symbol operator-() const;
  Symbol& operator+=(const Symbol& b);
  Symbol& operator-=(const Symbol& b);

  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  int num_vars_ = 0;
  Terms terms_;
};

Symbol operator+(Symbol a, const Symbol& b);
Symbol operator-(Symbol a, const Symbol& b);
Symbol operator*(const Symbol& a, const Symbol& b);
Symbol operator*(const Series& c, const Symbol& a);

Symbol x_derivative(const Symbol& a, int axis);
Symbol zeta_derivative(const Symbol& a, int axis);

// sum_i (da/dz_i * db/dx_i - da/dx_i * db/dz_i)
Symbol poisson_bracket(const Symbol& a, const Symbol& b);

enum class Membership { NotMemberCertified, MemberWitness, Inconclusive };

struct MembershipVerdict {
  Membership status = Membership::Inconclusive;
  std::vector<Symbol> multipliers;  // when MemberWitness
  int x_precision = 0;              // N actually used
  int zeta_bound = 0;               // B
  std::string reason;
};

// Decides g = sum a_i gens_i on the finite system of x-degree <= N and z-degree
// <= B, with multipliers of z-degree <= B - deg gens_i. Infeasibility is a
// certificate only when every generator is z-homogeneous.
MembershipVerdict membership_truncated(const Symbol& g, const std::vector<Symbol>& gens, int n_trunc,
                                       int zeta_bound);

enum class Involutivity { Pass, Fail, Inconclusive };

struct InvolutivityReport {
  Involutivity status = Involutivity::Pass;
  // For Fail: the certified pair (j, i) with j > i and the bracket {g_j, g_i}.
  std::optional<std::pair<int, int>> witness_pair;
  Symbol witness;
  int pairs_checked = 0;
};

InvolutivityReport involutivity_check(const std::vector<Symbol>& gens, int n_trunc, int zeta_bound);

enum class ChainOutcome { UnitReached, Stable, BudgetExhausted };

struct ChainReport {
  ChainOutcome outcome = ChainOutcome::BudgetExhausted;
  int step = 0;                // unit step, or the last step examined
  std::vector<Series> chain;   // g_0 .. g_step
};

// g_0 = f, g_{l+1} = {z_n, g_l}. Stops at the first unit, an exact zero, or when
// the precision or the step limit runs out.
ChainReport bracket_chain_probe(const Series& f, int max_steps);

std::string to_string(const Symbol& s);
std::string to_string(Membership m);
std::string to_string(Involutivity v);
std::string to_string(ChainOutcome c);

}  // namespace fpsd
