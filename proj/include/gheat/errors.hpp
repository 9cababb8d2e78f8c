#pragma once

#include <stdexcept>
#include <string>

namespace gheat {

/// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument inside the domain but outside the range the implementation supports.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Base for failures of an iterative numerical procedure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An exact identity that must hold by construction did not.
class IdentityViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace gheat
