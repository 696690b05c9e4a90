#include "rankmetric/error.hpp"

namespace rankmetric {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::NonPrime: return "NonPrime";
        case Errc::TableCapExceeded: return "TableCapExceeded";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::ContextMismatch: return "ContextMismatch";
        case Errc::NotInvertible: return "NotInvertible";
        case Errc::ScalarModeMismatch: return "ScalarModeMismatch";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::BadParams: return "BadParams";
        case Errc::NormConditionViolated: return "NormConditionViolated";
        case Errc::CongruenceViolated: return "CongruenceViolated";
        case Errc::DeltaConstraintViolated: return "DeltaConstraintViolated";
        case Errc::NotFound: return "NotFound";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::NotFqnLinear: return "NotFqnLinear";
        case Errc::NotMrd: return "NotMrd";
        case Errc::KTooSmall: return "KTooSmall";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace rankmetric
