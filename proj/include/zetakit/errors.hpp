#pragma once

#include <stdexcept>
#include <string>

namespace zetakit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input (bad descriptor, non-fundamental d, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Truncation bound cannot reach the requested accuracy.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Division by a value indistinguishable from zero (L'/L at a zero).
class NearZeroError : public Error {
public:
    using Error::Error;
};

/// Work above the configured desk-scale limits.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A zero list is missing its verification stamp.
class IncompleteZerosError : public Error {
public:
    using Error::Error;
};

/// Zero isolation did not converge; the window is reported, never dropped.
class UnresolvedError : public Error {
public:
    using Error::Error;
};

}  // namespace zetakit
