#pragma once

#include <stdexcept>
#include <string>

namespace fadinglab {

// Invalid parameter or argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A series or iteration exhausted its term budget before reaching the
// requested tolerance. Callers may widen the budget or reject the point.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive integration could not reach the requested error bound.
class QuadratureFailure : public std::runtime_error {
public:
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fadinglab
