#pragma once

#include <stdexcept>
#include <string>

namespace biprox {

// Exit-code category carried by every library error.
enum class ErrorKind { parse = 1, cap = 2, numeric = 3, logic = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& name, const std::string& what)
        : std::runtime_error(name + ": " + what), kind_(kind), name_(name) {}
    ErrorKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

#define BIPROX_ERROR(Name, Kind)                                         \
    struct Name : Error {                                                \
        explicit Name(const std::string& w) : Error(Kind, #Name, w) {}   \
    };

BIPROX_ERROR(ParseError, ErrorKind::parse)
BIPROX_ERROR(DegreeMismatch, ErrorKind::parse)
BIPROX_ERROR(OrderCapExceeded, ErrorKind::cap)
BIPROX_ERROR(SubgroupCapExceeded, ErrorKind::cap)
BIPROX_ERROR(QuotientOrderCapExceeded, ErrorKind::cap)
BIPROX_ERROR(NumericRankAmbiguous, ErrorKind::numeric)
BIPROX_ERROR(BiprojectionCheckFailed, ErrorKind::numeric)
BIPROX_ERROR(NotNested, ErrorKind::logic)
BIPROX_ERROR(NotTrivialH, ErrorKind::logic)
BIPROX_ERROR(NotBoolean, ErrorKind::logic)
BIPROX_ERROR(ContextMismatch, ErrorKind::logic)
BIPROX_ERROR(NotPositive, ErrorKind::logic)
BIPROX_ERROR(NotABiprojection, ErrorKind::logic)
BIPROX_ERROR(BasisNotSpanning, ErrorKind::logic)
BIPROX_ERROR(AxiomViolation, ErrorKind::logic)
BIPROX_ERROR(TheoremViolation, ErrorKind::logic)

#undef BIPROX_ERROR

}  // namespace biprox
