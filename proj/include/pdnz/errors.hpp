#pragma once

#include <stdexcept>
#include <string>

namespace pdnz {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failures: singular evaluations, degenerate systems, non-finite results.
/// The CLI maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class IdenticallyZeroDenominator : public NumericalError {
public:
    IdenticallyZeroDenominator() : NumericalError("denominator is identically zero") {}
};

class EvaluationSingular : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Bad input values or structure (reported as usage errors by the CLI).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class Disconnected : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class BadRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class TooFewPoints : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class TooManyBranches : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class UnknownParam : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class ParseError : public InvalidArgument {
public:
    ParseError(int line, const std::string& reason)
        : InvalidArgument("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

    int line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    int line_;
    std::string reason_;
};

}  // namespace pdnz
