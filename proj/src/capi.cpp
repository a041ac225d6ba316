#include "fpsd/fpsd.h"

#include <cstring>
#include <string>

#include "fpsd/commands.hpp"
#include "fpsd/errors.hpp"
#include "fpsd/parse.hpp"

struct fpsd_request {
  fpsd::CommandRequest req;
};

struct fpsd_result {
  fpsd::CommandResult res;
};

struct fpsd_series {
  fpsd::Series s;
};

namespace {

thread_local std::string last_error;

int status_of(const fpsd::Error& e) {
  last_error = e.what();
  return static_cast<int>(e.code());
}

int parse_int(const char* v, int& out) {
  try {
    std::size_t used = 0;
    out = std::stoi(v, &used);
    if (used != std::strlen(v)) throw std::invalid_argument("trailing");
    return FPSD_OK;
  } catch (const std::exception&) {
    last_error = std::string("not an integer: ") + v;
    return FPSD_E_INVALID_ARGUMENT;
  }
}

bool truthy(const char* v) { return std::strcmp(v, "1") == 0 || std::strcmp(v, "true") == 0; }

}  // namespace

extern "C" {

const char* fpsd_version(void) { return "0.1.0"; }

const char* fpsd_status_name(int status) {
  static thread_local std::string name;
  if (status == FPSD_OK) return "Ok";
  if (status == FPSD_E_INTERNAL) return "Internal";
  if (status < 1 || status > FPSD_E_INVALID_ARGUMENT) return "Unknown";
  name = std::string(fpsd::error_code_name(static_cast<fpsd::ErrorCode>(status)));
  return name.c_str();
}

const char* fpsd_last_error(void) { return last_error.c_str(); }

fpsd_request* fpsd_request_new(const char* verb) {
  if (!verb) return nullptr;
  auto* r = new fpsd_request;
  r->req.verb = verb;
  return r;
}

int fpsd_request_set(fpsd_request* r, const char* key, const char* value) {
  if (!r || !key || !value) return FPSD_E_INVALID_ARGUMENT;
  auto& q = r->req;
  const std::string k = key;
  int v = 0;
  auto set_int = [&](std::optional<int>& slot) {
    const int st = parse_int(value, v);
    if (st == FPSD_OK) slot = v;
    return st;
  };
  if (k == "subcommand") q.subcommand = value;
  else if (k == "vars") {
    const int st = parse_int(value, v);
    if (st != FPSD_OK) return st;
    q.vars = v;
  } else if (k == "trunc") return set_int(q.trunc);
  else if (k == "pole-bound") return set_int(q.pole_bound);
  else if (k == "zeta-bound") return set_int(q.zeta_bound);
  else if (k == "pmax") return set_int(q.pmax);
  else if (k == "smax") return set_int(q.smax);
  else if (k == "steps") return set_int(q.steps);
  else if (k == "schedule") q.schedule = value;
  else if (k == "module") q.module = value;
  else if (k == "element") q.element = value;
  else if (k == "f") q.f = value;
  else if (k == "oracle") q.oracle = truthy(value);
  else if (k == "machine") q.machine = truthy(value);
  else {
    last_error = "unknown key " + k;
    return FPSD_E_INVALID_ARGUMENT;
  }
  return FPSD_OK;
}

int fpsd_request_add(fpsd_request* r, const char* key, const char* value) {
  if (!r || !key || !value) return FPSD_E_INVALID_ARGUMENT;
  const std::string k = key;
  if (k == "arg") r->req.args.emplace_back(value);
  else if (k == "element") r->req.elements.emplace_back(value);
  else if (k == "coeff") r->req.coeffs.emplace_back(value);
  else {
    last_error = "unknown list key " + k;
    return FPSD_E_INVALID_ARGUMENT;
  }
  return FPSD_OK;
}

void fpsd_request_free(fpsd_request* r) { delete r; }

int fpsd_run(const fpsd_request* r, fpsd_result** out) {
  if (!r || !out) return FPSD_E_INVALID_ARGUMENT;
  try {
    *out = new fpsd_result{fpsd::run_command(r->req)};
    return FPSD_OK;
  } catch (const std::exception& e) {
    last_error = e.what();
    *out = nullptr;
    return FPSD_E_INTERNAL;
  }
}

int fpsd_result_exit_code(const fpsd_result* r) { return r ? r->res.exit_code : 1; }
const char* fpsd_result_output(const fpsd_result* r) { return r ? r->res.output.c_str() : ""; }
const char* fpsd_result_error(const fpsd_result* r) { return r ? r->res.error_code.c_str() : ""; }
void fpsd_result_free(fpsd_result* r) { delete r; }

int fpsd_series_parse(const char* text, int num_vars, int trunc, fpsd_series** out) {
  if (!text || !out) return FPSD_E_INVALID_ARGUMENT;
  try {
    const int n_trunc = trunc < 0 ? fpsd::precision::kExact : trunc;
    fpsd::Series s = fpsd::parse_series(text, num_vars, n_trunc);
    if (trunc >= 0) s = s.truncated(std::min(s.precision(), trunc));
    *out = new fpsd_series{std::move(s)};
    return FPSD_OK;
  } catch (const fpsd::Error& e) {
    *out = nullptr;
    return status_of(e);
  }
}

int fpsd_series_multiply(const fpsd_series* a, const fpsd_series* b, fpsd_series** out) {
  if (!a || !b || !out) return FPSD_E_INVALID_ARGUMENT;
  try {
    *out = new fpsd_series{a->s * b->s};
    return FPSD_OK;
  } catch (const fpsd::Error& e) {
    *out = nullptr;
    return status_of(e);
  }
}

int fpsd_series_precision(const fpsd_series* s) {
  if (!s) return -1;
  return s->s.precision() == fpsd::precision::kExact ? -2 : s->s.precision();
}

char* fpsd_series_to_string(const fpsd_series* s) {
  if (!s) return nullptr;
  const std::string t = fpsd::to_string(s->s);
  char* out = static_cast<char*>(std::malloc(t.size() + 1));
  std::memcpy(out, t.c_str(), t.size() + 1);
  return out;
}

void fpsd_series_free(fpsd_series* s) { delete s; }
void fpsd_string_free(char* s) { std::free(s); }

}  // extern "C"
