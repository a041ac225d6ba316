#include "fpsd/commands.hpp"

#include <json.hpp>

#include "fpsd/derham.hpp"
#include "fpsd/errors.hpp"
#include "fpsd/malgrange.hpp"
#include "fpsd/parse.hpp"
#include "fpsd/regularity.hpp"
#include "fpsd/weierstrass.hpp"

namespace fpsd {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kDefaultTrunc = 10;
constexpr int kDefaultPoleBound = 8;
constexpr int kDefaultPmax = 8;
constexpr int kDefaultZetaBound = 4;
constexpr int kDefaultSmax = 3;
constexpr int kDefaultSteps = 8;

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }
bool inline_scalar(const Json& j) { return scalar(j) && !j.is_string(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void render(const Json& j, int indent, std::string& out);

void render_item(const Json& v, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (scalar(v)) {
    out += pad + "- " + scalar_text(v) + "\n";
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), inline_scalar)) {
    std::string line = "[";
    for (std::size_t k = 0; k < v.size(); ++k) line += (k ? ", " : "") + scalar_text(v[k]);
    out += pad + "- " + line + "]\n";
  } else {
    std::string inner;
    render(v, indent + 2, inner);
    if (v.is_object() && !v.empty()) inner.replace(indent, 2, "- ");
    else inner = pad + "-\n" + inner;
    out += inner;
  }
}

void render(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (j.is_array()) {
    for (const auto& v : j) render_item(v, indent, out);
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (scalar(v)) {
      out += pad + k + ": " + scalar_text(v) + "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), inline_scalar)) {
      std::string line;
      for (std::size_t i = 0; i < v.size(); ++i) line += (i ? ", " : "") + scalar_text(v[i]);
      out += pad + k + ": [" + line + "]\n";
    } else if (v.empty()) {
      out += pad + k + ": " + (v.is_array() ? "[]" : "{}") + "\n";
    } else {
      out += pad + k + ":\n";
      render(v, indent + 2, out);
    }
  }
}

std::string dims_text(const std::vector<int>& d) {
  std::string out = "(";
  for (std::size_t k = 0; k < d.size(); ++k) out += (k ? "," : "") + std::to_string(d[k]);
  return out + ")";
}

std::string schedule_text(const std::vector<std::pair<int, int>>& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? ";" : "") + std::to_string(s[k].first) + "," + std::to_string(s[k].second);
  return out;
}

const std::string& need_arg(const CommandRequest& req, std::size_t k, const char* what) {
  if (req.args.size() <= k) fail(ErrorCode::InvalidArgument, std::string("missing argument: ") + what);
  return req.args[k];
}

const std::string& need(const std::optional<std::string>& v, const char* flag) {
  if (!v) fail(ErrorCode::InvalidArgument, std::string("missing option ") + flag);
  return *v;
}

// Inputs are cut at the truncation N so that every report works at a stated precision.
Series input_series(const std::string& text, const CommandRequest& req, int n_trunc) {
  const Series s = parse_series(text, req.vars, n_trunc);
  return s.truncated(std::min(s.precision(), n_trunc));
}

struct Context {
  const CommandRequest& req;
  Json params = Json::object();
  Json result = Json::object();
  int exit_code = 0;

  int trunc() {
    const int v = req.trunc.value_or(kDefaultTrunc);
    params["trunc"] = v;
    return v;
  }
  int pole_bound() {
    const int v = req.pole_bound.value_or(kDefaultPoleBound);
    params["pole_bound"] = v;
    return v;
  }
  int pmax() {
    const int v = req.pmax.value_or(kDefaultPmax);
    params["pmax"] = v;
    return v;
  }
};

void cmd_prep(Context& c) {
  const int n_trunc = c.trunc();
  const Series f = input_series(need_arg(c.req, 0, "series"), c.req, n_trunc);
  c.params["input"] = to_string(f);
  const WeierstrassForm w = weierstrass_prepare(f);
  c.result["unit"] = to_string(w.unit);
  c.result["degree"] = w.degree;
  Json tail = Json::object();
  for (std::size_t i = 0; i < w.tail.size(); ++i) tail["b" + std::to_string(i)] = to_string(w.tail[i]);
  c.result["tail"] = tail;
  c.result["polynomial"] = to_string(w.polynomial());
  c.result["precision"] = precision::to_string(w.precision);
  c.result["reconstruction_zero"] = (w.reconstruct() - f).truncated(w.precision).is_zero();
}

void cmd_divide(Context& c) {
  const int n_trunc = c.trunc();
  const Series g = input_series(need_arg(c.req, 0, "dividend"), c.req, n_trunc);
  const Series f = input_series(need_arg(c.req, 1, "divisor"), c.req, n_trunc);
  c.params["dividend"] = to_string(g);
  c.params["divisor"] = to_string(f);
  const DivisionResult d = weierstrass_divide(g, f);
  c.result["order"] = d.order;
  c.result["quotient"] = to_string(d.quotient);
  Json rem = Json::object();
  for (std::size_t i = 0; i < d.remainder.size(); ++i) rem["r" + std::to_string(i)] = to_string(d.remainder[i]);
  c.result["remainder"] = rem;
}

void cmd_regularize(Context& c) {
  const int n_trunc = c.trunc();
  const Series f = input_series(need_arg(c.req, 0, "series"), c.req, n_trunc);
  c.params["input"] = to_string(f);
  const RegularizingResult r = find_regularizing_substitution(f);
  c.result["strategy"] = r.strategy;
  c.result["substitution"] = to_string(r.substitution);
  c.result["order"] = r.order;
  c.result["transformed"] = to_string(apply_linear_substitution(f, r.substitution));
}

void cmd_poisson(Context& c) {
  const int n_trunc = c.trunc();
  const Symbol a = parse_symbol(need_arg(c.req, 0, "first symbol"), c.req.vars, n_trunc);
  const Symbol b = parse_symbol(need_arg(c.req, 1, "second symbol"), c.req.vars, n_trunc);
  c.params["a"] = to_string(a);
  c.params["b"] = to_string(b);
  c.result["bracket"] = to_string(poisson_bracket(a, b));
}

void cmd_bracket_probe(Context& c) {
  const int n_trunc = c.trunc();
  const int steps = c.req.steps.value_or(kDefaultSteps);
  c.params["steps"] = steps;
  const Series f = input_series(need_arg(c.req, 0, "series"), c.req, n_trunc);
  c.params["input"] = to_string(f);
  const RegularityOrder reg = is_xn_regular(f);
  c.result["xn_regular_order"] = reg.order ? Json(*reg.order) : Json(nullptr);
  c.result["regularity_certified_to"] = precision::to_string(reg.certified_to_precision);
  const ChainReport r = bracket_chain_probe(f, steps);
  c.result["outcome"] = to_string(r.outcome);
  c.result["step"] = r.step;
  Json chain = Json::array();
  for (const auto& g : r.chain) chain.push_back(to_string(g));
  c.result["chain"] = chain;
}

void cmd_involutive(Context& c) {
  const int n_trunc = c.trunc();
  const int b = c.req.zeta_bound.value_or(kDefaultZetaBound);
  c.params["zeta_bound"] = b;
  if (c.req.args.empty()) fail(ErrorCode::InvalidArgument, "missing generators");
  std::vector<Symbol> gens;
  Json in = Json::array();
  for (const auto& a : c.req.args) {
    gens.push_back(parse_symbol(a, c.req.vars, n_trunc));
    in.push_back(to_string(gens.back()));
  }
  c.params["generators"] = in;
  const InvolutivityReport r = involutivity_check(gens, n_trunc, b);
  c.result["status"] = to_string(r.status);
  c.result["pairs_checked"] = r.pairs_checked;
  if (r.witness_pair) {
    c.result["witness_pair"] = Json::array({r.witness_pair->first + 1, r.witness_pair->second + 1});
    c.result["witness"] = to_string(r.witness);
  }
  if (r.status == Involutivity::Fail) c.exit_code = 2;
}

void cmd_malgrange(Context& c) {
  const int n_trunc = c.trunc();
  const DiffOp op = parse_operator(need_arg(c.req, 0, "operator"), c.req.vars, n_trunc);
  c.params["operator"] = to_string(op);
  c.params["oracle"] = c.req.oracle;
  if (c.req.vars > 1) {
    const WeiergenReport w = weiergen_generators(op, n_trunc);
    Json gens = Json::array();
    for (const auto& g : w.generators) gens.push_back(to_string(g));
    c.result["generators"] = gens;
    c.result["verified"] = w.verified ? "verified to degree " + std::to_string(w.verified_degree) : "not verified";
    return;
  }
  const OneVarOp o = one_var_op(op);
  const CokernelDims cd = cokernel_dim(o);
  c.result["s"] = cd.data.s;
  c.result["I"] = cd.data.index_set;
  c.result["P"] = poly_to_string(cd.data.poly);
  c.result["integer_roots"] = cd.data.integer_roots;
  c.result["t0"] = cd.data.t0;
  c.result["coker_dim"] = cd.cokernel;
  c.result["ker_dim"] = cd.kernel;
  Json basis = Json::array();
  for (int e : cd.cokernel_monomials) basis.push_back(to_string(Series::monomial(1, Exponent{e}, 1)));
  c.result["coker_basis"] = basis;
  if (c.req.oracle) {
    const int a = truncated_cokernel(o, 20), b = truncated_cokernel(o, 30);
    c.result["oracle"] = Json::object({{"size_20", a}, {"size_30", b}, {"agrees", a == b && b == cd.cokernel}});
  }
}

ModulePresentation module_of(Context& c, int n_trunc, int k) {
  const std::string& text = need(c.req.module, "--module");
  const ModulePresentation m = parse_module(text, c.req.vars, n_trunc, k);
  c.params["module"] = to_string(m);
  return m;
}

void cmd_derham(Context& c) {
  std::vector<std::pair<int, int>> schedule;
  if (c.req.schedule) {
    schedule = parse_schedule(*c.req.schedule);
  } else {
    schedule.emplace_back(c.req.trunc.value_or(kDefaultTrunc), c.req.pole_bound.value_or(kDefaultPoleBound));
  }
  int top_k = 0;
  for (const auto& [n, k] : schedule) top_k = std::max(top_k, k);
  const ModulePresentation m = module_of(c, schedule.back().first, top_k);
  for (auto& [n, k] : schedule) {
    if (m.kind() != ModuleKind::Localization) k = 0;
  }
  c.params["schedule"] = schedule_text(schedule);
  const CohomologyReport r = schedule.size() > 1 ? stabilized_dims(m, schedule)
                                                 : cohomology_dims(build_complex(m, schedule[0].first, schedule[0].second));
  c.result["dims"] = dims_text(r.dims);
  Json degrees = Json::array();
  for (std::size_t i = 0; i < r.dims.size(); ++i) {
    Json d = Json::object({{"degree", i}, {"dim", r.dims[i]}});
    d["stabilized"] = r.stabilized.empty() ? Json("single run") : Json(r.stabilized[i] ? "yes" : "no");
    degrees.push_back(d);
  }
  c.result["degrees"] = degrees;
  Json hist = Json::array();
  for (std::size_t k = 0; k < r.history.size(); ++k) {
    hist.push_back(Json::object({{"trunc", r.schedule[k].first}, {"pole_bound", r.schedule[k].second}, {"dims", dims_text(r.history[k])}}));
  }
  c.result["runs"] = hist;
  c.result["d_squared_zero"] = r.d_squared_zero;
}

void cmd_kernel(Context& c, bool kernel) {
  const int n_trunc = c.trunc();
  const int k = c.pole_bound();
  const ModulePresentation m = module_of(c, n_trunc, k);
  Json basis = Json::array();
  std::vector<int> coh;
  if (kernel) {
    const KernelReport r = kernel_of_dn(m, n_trunc, k);
    for (const auto& e : r.basis) basis.push_back(to_string(m, e));
    coh = r.cohomology;
  } else {
    const CokernelReport r = cokernel_of_dn(m, n_trunc, k);
    for (const auto& e : r.basis) basis.push_back(to_string(m, e));
    coh = r.cohomology;
  }
  c.result["dim"] = basis.size();
  c.result["basis"] = basis;
  c.result["cohomology"] = dims_text(coh);
}

void cmd_regularity(Context& c) {
  const std::string& sub = c.req.subcommand;
  c.params["subcommand"] = sub;
  const int n_trunc = c.trunc();
  const int k = c.pole_bound();
  const ModulePresentation m = module_of(c, n_trunc, k);
  if (sub == "kernel-relation") {
    std::vector<ModuleElement> es;
    std::vector<Series> fs;
    Json ein = Json::array(), fin = Json::array();
    for (const auto& t : c.req.elements) {
      es.push_back(parse_element(t, m, n_trunc));
      ein.push_back(to_string(m, es.back()));
    }
    for (const auto& t : c.req.coeffs) {
      fs.push_back(parse_series(t, c.req.vars, n_trunc));
      fin.push_back(to_string(fs.back()));
    }
    c.params["elements"] = ein;
    c.params["coefficients"] = fin;
    const KernelRelationReport r = kernel_relation_homogeneity(m, es, fs, n_trunc, k);
    c.result["holds"] = r.holds;
    c.result["checked_to"] = r.checked_to;
    c.result["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
    if (!r.holds) c.exit_code = 2;
    return;
  }
  const ModuleElement e = parse_element(need(c.req.element, "--element"), m, n_trunc);
  const Series f = parse_series(need(c.req.f, "--f"), c.req.vars, n_trunc);
  c.params["element"] = to_string(m, e);
  c.params["f"] = to_string(f);
  if (sub == "etau") {
    const ETauReport r = e_tau_relation(m, e, f, c.pmax(), n_trunc, k);
    c.result["p"] = r.p ? Json(*r.p) : Json(nullptr);
    Json rel = Json::array();
    for (const auto& s : r.relation) rel.push_back(to_string(s));
    c.result["relation"] = rel;
    Json pw = Json::array();
    for (const auto& x : r.powers) pw.push_back(to_string(m, x));
    c.result["powers"] = pw;
  } else if (sub == "element") {
    const RegularElementReport r = xn_regular_element_check(m, e, f, c.pmax(), n_trunc, k);
    c.result["verdict"] = to_string(r.verdict);
    c.result["f_regularity_order"] = r.regularity_order ? Json(*r.regularity_order) : Json(nullptr);
    c.result["p"] = r.relation && r.relation->p ? Json(*r.relation->p) : Json(nullptr);
    c.result["reason"] = r.reason.empty() ? Json(nullptr) : Json(r.reason);
  } else if (sub == "reglink") {
    const int smax = c.req.smax.value_or(kDefaultSmax);
    c.params["smax"] = smax;
    const ReglinkReport r = reglink_power_search(m, e, f, smax, c.pmax(), n_trunc, k);
    c.result["s"] = r.s ? Json(*r.s) : Json(nullptr);
    c.result["attempts"] = r.attempts;
  } else if (sub == "e0-cover") {
    const E0CoverReport r = e0_cover_check(m, e, f, n_trunc, k);
    c.result["verdict"] = to_string(r.verdict);
    Json gens = Json::array();
    for (const auto& g : r.generators) gens.push_back(to_string(m, g));
    c.result["generators"] = gens;
    c.result["verified_degree"] = r.verified_degree;
    c.result["first_uncovered"] = r.first_uncovered ? Json(monomial_to_string(*r.first_uncovered)) : Json(nullptr);
    c.result["reason"] = r.reason.empty() ? Json(nullptr) : Json(r.reason);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown regularity subcommand '" + sub + "'");
  }
}

}  // namespace

std::vector<std::string> command_verbs() {
  return {"prep", "divide", "regularize", "poisson", "bracket-probe", "involutive",
          "malgrange", "derham", "kernel", "cokernel", "regularity"};
}

CommandResult run_command(const CommandRequest& req) {
  Context c{req};
  Json doc = Json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = req.subcommand.empty() ? req.verb : req.verb + " " + req.subcommand;
  c.params["vars"] = req.vars;
  CommandResult out;
  try {
    if (req.vars < 1) fail(ErrorCode::InvalidArgument, "--vars must be positive");
    const std::string& v = req.verb;
    if (v == "prep") cmd_prep(c);
    else if (v == "divide") cmd_divide(c);
    else if (v == "regularize") cmd_regularize(c);
    else if (v == "poisson") cmd_poisson(c);
    else if (v == "bracket-probe") cmd_bracket_probe(c);
    else if (v == "involutive") cmd_involutive(c);
    else if (v == "malgrange") cmd_malgrange(c);
    else if (v == "derham") cmd_derham(c);
    else if (v == "kernel") cmd_kernel(c, true);
    else if (v == "cokernel") cmd_kernel(c, false);
    else if (v == "regularity") cmd_regularity(c);
    else fail(ErrorCode::InvalidArgument, "unknown command '" + v + "'");
    doc["status"] = c.exit_code == 2 ? "negative" : "ok";
    doc["parameters"] = c.params;
    doc["result"] = c.result;
    out.exit_code = c.exit_code;
  } catch (const Error& e) {
    doc["status"] = "error";
    doc["parameters"] = c.params;
    doc["error"] = Json::object({{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}});
    out.exit_code = 1;
    out.error_code = std::string(error_code_name(e.code()));
  } catch (const std::exception& e) {
    doc["status"] = "error";
    doc["parameters"] = c.params;
    doc["error"] = Json::object({{"code", "Internal"}, {"message", e.what()}});
    out.exit_code = 1;
    out.error_code = "Internal";
  }
  if (req.machine) {
    out.output = doc.dump(2) + "\n";
  } else {
    render(doc, 0, out.output);
  }
  return out;
}

}  // namespace fpsd
