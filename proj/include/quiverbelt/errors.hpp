#pragma once

#include <stdexcept>
#include <string>

namespace qb {

enum class ErrorCode {
    DivisionByZero = 1,
    InvalidMultiplier,
    NotCosineForm,
    SearchBudgetExceeded,
    DegenerateReference,
    DegeneratePositivity,
    UnsupportedClass,
    NotAcyclic,
    BudgetExceeded,
    ParseError,
    IOFailure,
    InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qb
