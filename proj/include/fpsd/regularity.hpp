#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpsd/dmodule.hpp"

namespace fpsd {

enum class Verdict { Yes, NoEvidence, Inconclusive };
std::string to_string(Verdict v);

// Least p with tau^p(m) = sum_{i<p} r_i tau^i(m) at truncation, tau = f d_n.
// The truncated space is pole P = max pole of the tau^i(m) with numerators
// modulo order above N + ord(f_loc) P; the r_i are polynomials of degree <= N.
struct ETauReport {
  std::optional<int> p;
  std::vector<Series> relation;       // r_0..r_{p-1}
  std::vector<ModuleElement> powers;  // tau^0(m)..tau^p(m), or up to p_max
  int p_max = 0, n_trunc = 0, pole_bound = 0;
};

ETauReport e_tau_relation(const ModulePresentation& m, const ModuleElement& e, const Series& f, int p_max, int n_trunc,
                          int pole_bound);

struct RegularElementReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<int> regularity_order;  // of f
  std::optional<ETauReport> relation;
  std::string reason;
};

RegularElementReport xn_regular_element_check(const ModulePresentation& m, const ModuleElement& e, const Series& f,
                                              int p_max, int n_trunc, int pole_bound);

struct ReglinkReport {
  std::optional<int> s;
  std::vector<std::string> attempts;  // one line per s tried
};

ReglinkReport reglink_power_search(const ModulePresentation& m, const ModuleElement& e, const Series& f, int s_max,
                                   int p_max, int n_trunc, int pole_bound);

struct KernelRelationReport {
  bool holds = true;
  int checked_to = 0;
  std::optional<int> first_failure;  // j with sum_i f_{i,j} m_i != 0
};

// The m_i lie in ker d_n and sum f_i m_i = 0; checks each x_n-coefficient of the relation.
KernelRelationReport kernel_relation_homogeneity(const ModulePresentation& m, const std::vector<ModuleElement>& elements,
                                                 const std::vector<Series>& coeffs, int n_trunc, int pole_bound);

struct E0CoverReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<ModuleElement> generators;  // R_{n-1}-generators of E_0
  int verified_degree = 0;
  std::optional<Exponent> first_uncovered;  // x^mu with x^mu m outside E_0 + d_n(M)
  std::string reason;
};

E0CoverReport e0_cover_check(const ModulePresentation& m, const ModuleElement& e, const Series& f, int n_trunc,
                             int pole_bound);

// Multiplication of a module element by a series (normalized for localizations).
ModuleElement scale(const ModulePresentation& m, const ModuleElement& e, const Series& s);

}  // namespace fpsd
