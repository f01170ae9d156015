#pragma once

#include <stdexcept>
#include <string>

namespace ifslab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parse failure; position is a 0-based byte offset into the source text
struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

// evaluation left the domain of an operation (division by an interval
// containing zero, log of a nonpositive quantity, ...)
struct DomainError : Error {
    using Error::Error;
};

struct SizeLimit : Error {
    using Error::Error;
};

struct LetterOutOfRange : Error {
    using Error::Error;
};

struct OrderTooHigh : Error {
    using Error::Error;
};

struct ArityMismatch : Error {
    using Error::Error;
};

struct EtaTooLarge : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NotMonotone : Error {
    using Error::Error;
};

struct SingletonAttractor : Error {
    using Error::Error;
};

struct EnvelopeNotFound : Error {
    using Error::Error;
};

struct SelectionExhausted : Error {
    using Error::Error;
};

struct ConstraintInfeasible : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

}  // namespace ifslab
