#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fpsd/dmodule.hpp"
#include "fpsd/symbols.hpp"
#include "fpsd/weyl.hpp"

namespace fpsd {

// num / den with den a non-constant series; only produced for module elements.
struct Fraction {
  Series num, den;
};

using ParsedValue = std::variant<Series, DiffOp, Symbol, Fraction>;

// Grammar: rationals, x1..xn, d1..dn, z1..zn (x, d, z when n = 1),
// + - * / ^ ( ), exp(...), O(k). exp results are cut at precision n_trunc;
// everything else stays exact unless O(k) appears.
ParsedValue parse_expression(const std::string& text, int num_vars, int n_trunc = precision::kExact);

Series parse_series(const std::string& text, int num_vars, int n_trunc = precision::kExact);
DiffOp parse_operator(const std::string& text, int num_vars, int n_trunc = precision::kExact);
Symbol parse_symbol(const std::string& text, int num_vars, int n_trunc = precision::kExact);

// R, R_loc(f), conn(r; A1; ...; An) with A = [[a, b], [c, d]].
ModulePresentation parse_module(const std::string& text, int num_vars, int n_trunc, int pole_bound);

// Series, num/(f)^k for localizations, [a, b, ...] for connections.
ModuleElement parse_element(const std::string& text, const ModulePresentation& m, int n_trunc = precision::kExact);

// "N1,K1;N2,K2" (K may be omitted or "-").
std::vector<std::pair<int, int>> parse_schedule(const std::string& text);

}  // namespace fpsd
