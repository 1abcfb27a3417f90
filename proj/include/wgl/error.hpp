#pragma once

#include <stdexcept>
#include <string>

namespace wgl {

// Precondition violations on mathematical inputs (composite where a prime
// is required, gcd != 1, empty ranges, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A ranged quantity has no integer points to work with.
class RangeTooSmallError : public DomainError {
public:
    using DomainError::DomainError;
};

// An upstream stage needed by a composite computation is missing or failed.
class DependencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wgl
