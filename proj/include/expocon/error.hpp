#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expocon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(const std::string& name)
        : Error("unbound variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class NotRationalError : public Error {
public:
    using Error::Error;
};

class InvalidWordError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownIdentifierError : public ParseError {
public:
    UnknownIdentifierError(const std::string& name, std::size_t position)
        : ParseError("unknown identifier '" + name + "'", position), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// exp(Y) with coeff(Id, Y) != 0.
class NonzeroConstantTermError : public Error {
public:
    NonzeroConstantTermError()
        : Error("exponential of an expression with nonzero identity coefficient") {}
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class OutOfTruncationError : public Error {
public:
    using Error::Error;
};

class SymmetryViolationError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace expocon
