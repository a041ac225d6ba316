#include "fpsd/errors.hpp"

namespace fpsd {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorCode::AxisOutOfRange: return "AxisOutOfRange";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotFoundWithinBudget: return "NotFoundWithinBudget";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::PoleBudgetExceeded: return "PoleBudgetExceeded";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::WrongVariant: return "WrongVariant";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotRegularLeadingCoefficient: return "NotRegularLeadingCoefficient";
    case ErrorCode::BoundOverflow: return "BoundOverflow";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fpsd
