#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpsd {

enum class ErrorCode {
  VariableMismatch = 1,
  NotAUnit,
  UnsupportedExponent,
  AxisOutOfRange,
  NotRegular,
  InsufficientPrecision,
  SingularMatrix,
  NotFoundWithinBudget,
  ZeroOperator,
  PoleBudgetExceeded,
  NonIntegrable,
  WrongVariant,
  PreconditionViolated,
  NotRegularLeadingCoefficient,
  BoundOverflow,
  Syntax,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fpsd
