#include "quiverbelt/errors.hpp"

namespace qb {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::InvalidMultiplier: return "InvalidMultiplier";
        case ErrorCode::NotCosineForm: return "NotCosineForm";
        case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorCode::DegenerateReference: return "DegenerateReference";
        case ErrorCode::DegeneratePositivity: return "DegeneratePositivity";
        case ErrorCode::UnsupportedClass: return "UnsupportedClass";
        case ErrorCode::NotAcyclic: return "NotAcyclic";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IOFailure: return "IOFailure";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace qb
