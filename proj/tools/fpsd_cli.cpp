// Command-line front end. Talks to the library only through fpsd.h.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fpsd/fpsd.h"

namespace {

struct Flags {
  int vars = 1;
  std::optional<int> trunc, pole_bound, zeta_bound, pmax, smax, steps;
  std::optional<std::string> schedule, module, element, f;
  std::vector<std::string> args, elements, coeffs;
  bool oracle = false, machine = false;
};

// "@path" reads the input from a file.
std::string resolve(const std::string& a) {
  if (a.size() < 2 || a[0] != '@') return a;
  std::ifstream in(a.substr(1));
  if (!in) throw CLI::ValidationError("cannot read " + a.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

void common(CLI::App* sub, Flags& f) {
  sub->add_option("--vars", f.vars, "number of variables n")->check(CLI::PositiveNumber);
  sub->add_option("--trunc", f.trunc, "truncation degree N");
  sub->add_option("--pole-bound", f.pole_bound, "pole budget K");
  sub->add_option("--zeta-bound", f.zeta_bound, "zeta-degree bound B");
  sub->add_option("--pmax", f.pmax, "largest tau power");
  sub->add_option("--smax", f.smax, "largest power of f in the power search");
  sub->add_option("--steps", f.steps, "bracket chain steps");
  sub->add_option("--schedule", f.schedule, "N1,K1;N2,K2;...");
  sub->add_option("--module", f.module, "R, R_loc(f) or conn(r; A1; ...; An)");
  sub->add_option("--element", f.elements, "module element (repeatable)");
  sub->add_option("--f", f.f, "series f");
  sub->add_option("--coeff", f.coeffs, "relation coefficient (repeatable)");
  sub->add_flag("--oracle", f.oracle, "run the brute-force cross-check");
  sub->add_flag("--machine", f.machine, "JSON output");
  sub->add_option("inputs", f.args, "expressions (or @file)");
}

int set(fpsd_request* r, const char* k, const std::optional<int>& v) {
  return v ? fpsd_request_set(r, k, std::to_string(*v).c_str()) : FPSD_OK;
}
int set(fpsd_request* r, const char* k, const std::optional<std::string>& v) {
  return v ? fpsd_request_set(r, k, resolve(*v).c_str()) : FPSD_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated formal power series, D-module and de Rham toolkit"};
  app.set_version_flag("--version", fpsd_version());
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"prep", "Weierstrass preparation"},
      {"divide", "Weierstrass division g by f"},
      {"regularize", "find a substitution making f x_n-regular"},
      {"poisson", "Poisson bracket of two symbols"},
      {"bracket-probe", "bracket chain {z_n, .} starting at f"},
      {"involutive", "truncated involutivity of a symbol ideal"},
      {"malgrange", "indicial data and cokernel of an operator"},
      {"derham", "truncated de Rham cohomology"},
      {"kernel", "kernel of d_n"},
      {"cokernel", "cokernel of d_n"},
  };
  for (const auto& [name, help] : verbs) common(app.add_subcommand(name, help), flags);
  CLI::App* reg = app.add_subcommand("regularity", "E_tau machinery and regularity verifiers");
  reg->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> reg_verbs = {
      {"etau", "least relation tau^p(m) = sum r_i tau^i(m)"},
      {"element", "is m an x_n-regular element for f"},
      {"reglink", "least s with f^s m an x_n-regular element"},
      {"kernel-relation", "x_n-homogeneity of a relation among kernel elements"},
      {"e0-cover", "R m inside E_0 + d_n(M) up to the truncation"}};
  for (const auto& [name, help] : reg_verbs) common(reg->add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  fpsd_request* r = fpsd_request_new(sub->get_name().c_str());
  int st = FPSD_OK;
  try {
    if (sub == reg) st = fpsd_request_set(r, "subcommand", reg->get_subcommands().front()->get_name().c_str());
    if (!st) st = fpsd_request_set(r, "vars", std::to_string(flags.vars).c_str());
    if (!st) st = set(r, "trunc", flags.trunc);
    if (!st) st = set(r, "pole-bound", flags.pole_bound);
    if (!st) st = set(r, "zeta-bound", flags.zeta_bound);
    if (!st) st = set(r, "pmax", flags.pmax);
    if (!st) st = set(r, "smax", flags.smax);
    if (!st) st = set(r, "steps", flags.steps);
    if (!st) st = set(r, "schedule", flags.schedule);
    if (!st) st = set(r, "module", flags.module);
    if (!st) st = set(r, "f", flags.f);
    if (!st && flags.elements.size() == 1) st = fpsd_request_set(r, "element", resolve(flags.elements[0]).c_str());
    for (const auto& e : flags.elements)
      if (!st) st = fpsd_request_add(r, "element", resolve(e).c_str());
    for (const auto& c : flags.coeffs)
      if (!st) st = fpsd_request_add(r, "coeff", resolve(c).c_str());
    for (const auto& a : flags.args)
      if (!st) st = fpsd_request_add(r, "arg", resolve(a).c_str());
    if (!st && flags.oracle) st = fpsd_request_set(r, "oracle", "1");
    if (!st && flags.machine) st = fpsd_request_set(r, "machine", "1");
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    fpsd_request_free(r);
    return 1;
  }
  if (st) {
    std::cerr << "error: " << fpsd_status_name(st) << ": " << fpsd_last_error() << "\n";
    fpsd_request_free(r);
    return 1;
  }
  fpsd_result* res = nullptr;
  st = fpsd_run(r, &res);
  fpsd_request_free(r);
  if (st) {
    std::cerr << "error: " << fpsd_last_error() << "\n";
    return 1;
  }
  std::cout << fpsd_result_output(res);
  const int code = fpsd_result_exit_code(res);
  fpsd_result_free(res);
  return code;
}
