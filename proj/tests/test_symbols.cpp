#include "doctest.h"
#include "fpsd/symbols.hpp"
#include "fpsd/weyl.hpp"
#include "support.hpp"

using namespace fpsd;
using testing::var;

namespace {

Symbol z(int n, int i) { return Symbol::zeta(n, i - 1); }
Symbol xs(int n, int i) { return Symbol(var(n, i)); }

}  // namespace

TEST_CASE("bracket examples") {
  CHECK(to_string(poisson_bracket(z(3, 3), xs(3, 3))) == "1");
  const Series f = var(2, 1) * var(2, 2) * var(2, 2);
  CHECK(poisson_bracket(z(2, 2), Symbol(f)) == Symbol(partial_derivative(f, 1)));
  const Symbol br = poisson_bracket(z(2, 1) * z(2, 2), xs(2, 1) * xs(2, 2));
  CHECK(to_string(br) == "x1*z1 + x2*z2");
  const DiffOp d12 = DiffOp::partial(2, 0) * DiffOp::partial(2, 1);
  const DiffOp m = DiffOp::multiplication(var(2, 1) * var(2, 2));
  CHECK(principal_symbol(commutator(d12, m)) == br);
}

TEST_CASE("bracket identities on random symbols") {
  testing::Gen gen(41);
  for (int k = 0; k < 100; ++k) {
    const int n = gen.integer(1, 3);
    const Symbol a = gen.symbol(n, 2, 3), b = gen.symbol(n, 2, 3), c = gen.symbol(n, 2, 3);
    CHECK(poisson_bracket(a, b) == -poisson_bracket(b, a));
    CHECK(poisson_bracket(a, a).is_zero());
    CHECK(poisson_bracket(a * b, c) == a * poisson_bracket(b, c) + b * poisson_bracket(a, c));
    const Symbol jacobi = poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
                          poisson_bracket(c, poisson_bracket(a, b));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("bracket agrees with symbols of commutators") {
  testing::Gen gen(43);
  int tested = 0;
  while (tested < 100) {
    const int n = gen.integer(1, 3);
    const DiffOp a = gen.op(n, 2, 2), b = gen.op(n, 2, 2);
    if (a.is_zero() || b.is_zero()) continue;
    const DiffOp c = commutator(a, b);
    if (c.is_zero() || order_of(c) != order_of(a) + order_of(b) - 1) continue;
    CHECK(poisson_bracket(principal_symbol(a), principal_symbol(b)) == principal_symbol(c));
    ++tested;
  }
}

TEST_CASE("membership") {
  const int n = 2;
  const auto v1 = membership_truncated(z(n, 2), {z(n, 2)}, 4, 2);
  CHECK(v1.status == Membership::MemberWitness);
  CHECK(v1.multipliers[0] == Symbol(Series::constant(n, 1, 4)));
  const auto v2 = membership_truncated(Symbol(Series::constant(n, 1)), {xs(n, 2), z(n, 2)}, 4, 2);
  CHECK(v2.status == Membership::NotMemberCertified);
  const Symbol f = Symbol(var(n, 2) * var(n, 2) + var(n, 1));
  const auto v3 = membership_truncated(Symbol(var(n, 2) * Rational(2)), {f, z(n, 2)}, 4, 2);
  CHECK(v3.status == Membership::NotMemberCertified);
  // x1 = (x2^2 + x1) - x2 * x2: member.
  const auto v4 = membership_truncated(xs(n, 1) + Symbol(var(n, 2) * var(n, 2)), {f}, 4, 2);
  CHECK(v4.status == Membership::MemberWitness);
  // Non-homogeneous generator: infeasible is only inconclusive.
  const auto v5 = membership_truncated(Symbol(Series::constant(n, 1)), {z(n, 1) + z(n, 1) * z(n, 1)}, 3, 3);
  CHECK(v5.status == Membership::Inconclusive);
  CHECK_THROWS_AS(membership_truncated(z(3, 1), {z(3, 1), z(3, 2), z(3, 3)}, 40, 40), Error);
}

TEST_CASE("involutivity") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Symbol> zs;
    for (int i = 1; i <= n; ++i) zs.push_back(z(n, i));
    CHECK(involutivity_check(zs, 4, 2).status == Involutivity::Pass);
  }
  const auto r = involutivity_check({xs(2, 2), z(2, 2)}, 4, 2);
  CHECK(r.status == Involutivity::Fail);
  REQUIRE(r.witness_pair.has_value());
  CHECK(*r.witness_pair == std::pair<int, int>{1, 0});
  CHECK(to_string(r.witness) == "1");
  CHECK(involutivity_check({xs(2, 1), z(2, 2)}, 4, 2).status == Involutivity::Pass);
}

TEST_CASE("bracket chain") {
  const ChainReport a = bracket_chain_probe(var(2, 2, 6), 10);
  CHECK(a.outcome == ChainOutcome::UnitReached);
  CHECK(a.step == 1);
  const Series f = (var(2, 2) * var(2, 2) + var(2, 1)).truncated(6);
  const ChainReport b = bracket_chain_probe(f, 10);
  CHECK(b.outcome == ChainOutcome::UnitReached);
  CHECK(b.step == 2);
  CHECK(to_string(b.chain[1]) == "2*x2 + O(6)");
  const ChainReport c = bracket_chain_probe((var(2, 1) * var(2, 2)).truncated(6), 10);
  CHECK(c.outcome == ChainOutcome::BudgetExhausted);
  const ChainReport e = bracket_chain_probe(var(2, 1) * var(2, 2), 10);
  CHECK(e.outcome == ChainOutcome::Stable);

  const int n = 4;
  const Series wild = var(n, 1, 5) * var(n, 4, 5) + var(n, 2, 5) +
                      var(n, 3, 5) * var(n, 4, 5) * exp_series(var(n, 4, 5));
  CHECK(bracket_chain_probe(wild, 20).outcome == ChainOutcome::BudgetExhausted);

  testing::Gen gen(51);
  for (int k = 0; k < 30; ++k) {
    const int m = gen.integer(2, 3);
    const int d = gen.integer(0, 4);
    Series s = gen.series(m, 6, 7, 6, 1);
    for (int j = 0; j <= d; ++j) {
      Exponent e(m, 0);
      e[m - 1] = j;
      s.add_term(e, -s.coefficient(e));
    }
    Exponent e(m, 0);
    e[m - 1] = d;
    s.add_term(e, gen.integer(1, 4));
    const ChainReport r = bracket_chain_probe(s, 20);
    REQUIRE(is_xn_regular(s).order.has_value());
    CHECK(r.outcome == ChainOutcome::UnitReached);
    CHECK(r.step == *is_xn_regular(s).order);
  }
}
