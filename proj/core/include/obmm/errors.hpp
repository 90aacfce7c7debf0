#pragma once

#include <stdexcept>
#include <string>

namespace obmm {

/// Argument outside an operation's domain: bad dimension, grade, id or shape.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A structure failed an internal consistency check (e.g. BTR id/path mismatch).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured memory budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix is singular within the pivot tolerance.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace obmm
