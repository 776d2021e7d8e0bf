#pragma once

#include <stdexcept>
#include <string>

namespace pslab {

/// Invalid domain input: malformed instances, dimension mismatches, bad flags.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive search would exceed the configured enumeration budget.
class BoundExceeded : public DomainError {
public:
    explicit BoundExceeded(const std::string& what) : DomainError(what) {}
};

/// Malformed preference-data input.
class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& what) : DomainError(what) {}
};

}  // namespace pslab
