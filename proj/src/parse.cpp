#include "fpsd/parse.hpp"

#include <cctype>

namespace fpsd {

namespace {

[[noreturn]] void syntax(std::size_t pos, const std::string& msg) {
  fail(ErrorCode::Syntax, "position " + std::to_string(pos + 1) + ": " + msg);
}

bool exact_constant(const Series& s) {
  if (!s.is_exact()) return false;
  for (const auto& [e, c] : s.terms()) {
    if (total_degree(e) != 0) return false;
  }
  return true;
}

Rational constant_value(const Series& s) { return s.coefficient(Exponent(s.num_vars(), 0)); }

class Parser {
 public:
  Parser(const std::string& text, int n, int n_trunc) : s_(text), n_(n), trunc_(n_trunc) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "number of variables must be positive");
  }

  ParsedValue parse_all() {
    ParsedValue v = expr();
    skip();
    if (i_ != s_.size()) syntax(i_, "unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

  // Pieces used by the module grammar.
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) syntax(i_, std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string& w) {
    skip();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    const std::size_t end = i_ + w.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    i_ = end;
    return true;
  }
  bool at_end() {
    skip();
    return i_ == s_.size();
  }
  std::size_t pos() const { return i_; }
  long integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) syntax(i_, "expected an integer");
    if (i_ - start > 9) syntax(start, "integer too large");
    return std::stol(s_.substr(start, i_ - start));
  }

  Series series_expr() {
    const std::size_t start = (skip(), i_);
    ParsedValue v = expr();
    if (auto* s = std::get_if<Series>(&v)) return *s;
    syntax(start, "expected a series");
  }

  ParsedValue expr() {
    ParsedValue v = term();
    for (;;) {
      skip();
      if (i_ >= s_.size()) return v;
      const char c = s_[i_];
      if (c != '+' && c != '-') return v;
      const std::size_t at = i_++;
      ParsedValue w = term();
      v = add(std::move(v), std::move(w), c == '-', at);
    }
  }

 private:
  ParsedValue term() {
    ParsedValue v = unary();
    for (;;) {
      skip();
      if (i_ >= s_.size()) return v;
      const char c = s_[i_];
      if (c != '*' && c != '/') return v;
      const std::size_t at = i_++;
      ParsedValue w = unary();
      v = c == '*' ? mul(std::move(v), std::move(w), at) : div(std::move(v), std::move(w), at);
    }
  }

  ParsedValue unary() {
    skip();
    if (accept('-')) return neg(unary());
    if (accept('+')) return unary();
    return pow();
  }

  ParsedValue pow() {
    ParsedValue base = atom();
    skip();
    if (!accept('^')) return base;
    const std::size_t at = i_;
    const long k = integer();
    ParsedValue out = one();
    for (long j = 0; j < k; ++j) out = mul(std::move(out), base, at);
    return out;
  }

  ParsedValue one() const { return Series::constant(n_, 1); }

  ParsedValue atom() {
    skip();
    if (i_ >= s_.size()) syntax(i_, "unexpected end of input");
    const std::size_t start = i_;
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Series::constant(n_, Rational(Integer(s_.substr(start, i_ - start))));
    }
    if (c == '(') {
      ++i_;
      ParsedValue v = expr();
      expect(')');
      return v;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) syntax(i_, "unexpected '" + std::string(1, c) + "'");
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    const std::string word = s_.substr(start, i_ - start);
    if (word == "exp") {
      expect('(');
      const std::size_t arg_at = (skip(), i_);
      ParsedValue v = expr();
      expect(')');
      const auto* a = std::get_if<Series>(&v);
      if (!a) syntax(arg_at, "exp needs a series argument");
      if (a->coefficient(Exponent(n_, 0)) != 0) {
        fail(ErrorCode::UnsupportedExponent, "position " + std::to_string(arg_at + 1) + ": exp of a series with nonzero constant term");
      }
      if (a->precision() == precision::kExact && trunc_ == precision::kExact) {
        syntax(start, "exp of an exact series needs a truncation");
      }
      return exp_series(a->truncated(std::min(a->precision(), trunc_)));
    }
    if (word == "O") {
      expect('(');
      const long k = integer();
      expect(')');
      return Series::zero(n_, static_cast<int>(k) - 1);
    }
    const char kind = word[0];
    if (kind != 'x' && kind != 'd' && kind != 'z') syntax(start, "unknown name '" + word + "'");
    int axis = 0;
    if (word.size() == 1) {
      if (n_ != 1) syntax(start, "bare '" + word + "' needs exactly one variable");
      axis = 0;
    } else {
      for (std::size_t k = 1; k < word.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(word[k]))) syntax(start, "unknown name '" + word + "'");
      }
      if (word.size() > 4) syntax(start, "variable index too large");
      axis = std::stoi(word.substr(1)) - 1;
      if (axis < 0 || axis >= n_) {
        fail(ErrorCode::VariableMismatch, "position " + std::to_string(start + 1) + ": '" + word + "' outside 1.." + std::to_string(n_));
      }
    }
    if (kind == 'x') return Series::variable(n_, axis);
    if (kind == 'd') return DiffOp::partial(n_, axis);
    return Symbol::zeta(n_, axis);
  }

  static ParsedValue neg(ParsedValue v) {
    return std::visit(
        [](auto&& x) -> ParsedValue {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Fraction>) return Fraction{-x.num, x.den};
          else return -x;
        },
        std::move(v));
  }

  DiffOp as_op(const ParsedValue& v, std::size_t at) const {
    if (const auto* s = std::get_if<Series>(&v)) return DiffOp::multiplication(*s);
    if (const auto* d = std::get_if<DiffOp>(&v)) return *d;
    syntax(at, "cannot combine operators with symbols or fractions");
  }
  Symbol as_symbol(const ParsedValue& v, std::size_t at) const {
    if (const auto* s = std::get_if<Series>(&v)) return Symbol(*s);
    if (const auto* z = std::get_if<Symbol>(&v)) return *z;
    syntax(at, "cannot combine symbols with operators or fractions");
  }
  Fraction as_fraction(const ParsedValue& v, std::size_t at) const {
    if (const auto* s = std::get_if<Series>(&v)) return Fraction{*s, Series::constant(n_, 1)};
    if (const auto* f = std::get_if<Fraction>(&v)) return *f;
    syntax(at, "cannot combine fractions with operators or symbols");
  }

  ParsedValue add(ParsedValue a, ParsedValue b, bool minus, std::size_t at) const {
    if (minus) b = neg(std::move(b));
    if (std::holds_alternative<Series>(a) && std::holds_alternative<Series>(b)) return std::get<Series>(a) + std::get<Series>(b);
    if (std::holds_alternative<DiffOp>(a) || std::holds_alternative<DiffOp>(b)) return as_op(a, at) + as_op(b, at);
    if (std::holds_alternative<Symbol>(a) || std::holds_alternative<Symbol>(b)) return as_symbol(a, at) + as_symbol(b, at);
    const Fraction x = as_fraction(a, at), y = as_fraction(b, at);
    if (x.den == y.den) return Fraction{x.num + y.num, x.den};
    return Fraction{x.num * y.den + y.num * x.den, x.den * y.den};
  }

  ParsedValue mul(ParsedValue a, ParsedValue b, std::size_t at) const {
    if (std::holds_alternative<Series>(a) && std::holds_alternative<Series>(b)) return std::get<Series>(a) * std::get<Series>(b);
    if (std::holds_alternative<DiffOp>(a) || std::holds_alternative<DiffOp>(b)) return as_op(a, at) * as_op(b, at);
    if (std::holds_alternative<Symbol>(a) || std::holds_alternative<Symbol>(b)) return as_symbol(a, at) * as_symbol(b, at);
    const Fraction x = as_fraction(a, at), y = as_fraction(b, at);
    return Fraction{x.num * y.num, x.den * y.den};
  }

  ParsedValue div(ParsedValue a, ParsedValue b, std::size_t at) const {
    const auto* s = std::get_if<Series>(&b);
    if (!s) syntax(at, "can only divide by a series");
    if (exact_constant(*s)) {
      const Rational c = constant_value(*s);
      if (c == 0) syntax(at, "division by zero");
      const Rational inv = 1 / c;
      return std::visit(
          [&](auto&& x) -> ParsedValue {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Series>) return x * inv;
            else if constexpr (std::is_same_v<T, Fraction>) return Fraction{x.num * inv, x.den};
            else if constexpr (std::is_same_v<T, DiffOp>) return DiffOp::multiplication(Series::constant(n_, inv)) * x;
            else return Series::constant(n_, inv) * x;
          },
          std::move(a));
    }
    if (s->is_zero()) syntax(at, "division by zero");
    const Fraction x = as_fraction(a, at);
    return Fraction{x.num, x.den * *s};
  }

  std::string s_;
  std::size_t i_ = 0;
  int n_;
  int trunc_;
};

template <typename T>
T parse_as(const std::string& text, int n, int n_trunc, const char* what) {
  ParsedValue v = Parser(text, n, n_trunc).parse_all();
  if (auto* t = std::get_if<T>(&v)) return *t;
  if constexpr (!std::is_same_v<T, Series>) {
    if (auto* s = std::get_if<Series>(&v)) {
      if constexpr (std::is_same_v<T, DiffOp>) return DiffOp::multiplication(*s);
      else return Symbol(*s);
    }
  }
  fail(ErrorCode::Syntax, std::string("expected ") + what);
}

}  // namespace

ParsedValue parse_expression(const std::string& text, int num_vars, int n_trunc) {
  return Parser(text, num_vars, n_trunc).parse_all();
}

Series parse_series(const std::string& text, int num_vars, int n_trunc) {
  return parse_as<Series>(text, num_vars, n_trunc, "a series");
}

DiffOp parse_operator(const std::string& text, int num_vars, int n_trunc) {
  return parse_as<DiffOp>(text, num_vars, n_trunc, "an operator");
}

Symbol parse_symbol(const std::string& text, int num_vars, int n_trunc) {
  return parse_as<Symbol>(text, num_vars, n_trunc, "a symbol");
}

namespace {

// [[a, b], [c, d]]
SeriesMatrix parse_matrix(Parser& p) {
  SeriesMatrix out;
  p.expect('[');
  do {
    std::vector<Series> row;
    p.expect('[');
    do row.push_back(p.series_expr());
    while (p.accept(','));
    p.expect(']');
    out.push_back(std::move(row));
  } while (p.accept(','));
  p.expect(']');
  return out;
}

}  // namespace

ModulePresentation parse_module(const std::string& text, int num_vars, int n_trunc, int pole_bound) {
  Parser p(text, num_vars, n_trunc);
  ModulePresentation out = ModulePresentation::structure_sheaf(num_vars);
  if (p.accept_word("R_loc")) {
    p.expect('(');
    const Series f = p.series_expr();
    p.expect(')');
    out = ModulePresentation::localization(f, pole_bound);
  } else if (p.accept_word("conn")) {
    p.expect('(');
    const std::size_t at = p.pos();
    const long r = p.integer();
    std::vector<SeriesMatrix> mats;
    while (p.accept(';')) mats.push_back(parse_matrix(p));
    p.expect(')');
    for (const auto& m : mats) {
      if (static_cast<long>(m.size()) != r) syntax(at, "matrix size differs from the rank");
    }
    if (mats.empty()) syntax(at, "connection needs matrices");
    out = ModulePresentation::connection(num_vars, std::move(mats));
  } else if (!p.accept_word("R")) {
    syntax(p.pos(), "expected R, R_loc(...) or conn(...)");
  }
  if (!p.at_end()) syntax(p.pos(), "trailing input after module");
  return out;
}

ModuleElement parse_element(const std::string& text, const ModulePresentation& m, int n_trunc) {
  const int n = m.num_vars();
  if (m.kind() == ModuleKind::Connection) {
    Parser p(text, n, n_trunc);
    ModuleElement e;
    p.expect('[');
    do e.components.push_back(p.series_expr());
    while (p.accept(','));
    p.expect(']');
    if (!p.at_end()) syntax(p.pos(), "trailing input after element");
    if (static_cast<int>(e.components.size()) != m.rank()) fail(ErrorCode::WrongVariant, "element has the wrong number of components");
    return e;
  }
  const ParsedValue v = parse_expression(text, n, n_trunc);
  if (const auto* s = std::get_if<Series>(&v)) return scalar_element(*s);
  const auto* f = std::get_if<Fraction>(&v);
  if (!f) fail(ErrorCode::WrongVariant, "expected a module element");
  if (m.kind() != ModuleKind::Localization) fail(ErrorCode::WrongVariant, "only localizations have denominators");
  Series pw = Series::constant(n, 1);
  for (int k = 1; k <= std::max(m.pole_bound(), 1) + 64; ++k) {
    pw = pw * m.f();
    if (pw == f->den) {
      if (k > m.pole_bound()) fail(ErrorCode::PoleBudgetExceeded, "element pole above the bound");
      return scalar_element(f->num, k);
    }
    if (pw.order() > f->den.order()) break;
  }
  fail(ErrorCode::WrongVariant, "denominator is not a power of the localizing series");
}

std::vector<std::pair<int, int>> parse_schedule(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  Parser p(text, 1, precision::kExact);
  do {
    const int n_trunc = static_cast<int>(p.integer());
    int k = 0;
    if (p.accept(',')) {
      if (!p.accept('-')) k = static_cast<int>(p.integer());
    }
    out.emplace_back(n_trunc, k);
  } while (p.accept(';'));
  if (!p.at_end()) syntax(p.pos(), "bad schedule");
  return out;
}

}  // namespace fpsd
