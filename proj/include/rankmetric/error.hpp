#pragma once

#include <stdexcept>
#include <string>

namespace rankmetric {

enum class Errc {
    NonPrime,
    TableCapExceeded,
    DivisionByZero,
    ContextMismatch,
    NotInvertible,
    ScalarModeMismatch,
    BudgetExceeded,
    BadParams,
    NormConditionViolated,
    CongruenceViolated,
    DeltaConstraintViolated,
    NotFound,
    PreconditionViolated,
    NotFqnLinear,
    NotMrd,
    KTooSmall,
    ParseError,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace rankmetric
