#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdunkl {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable as a finite double.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// A test function produced a non-finite value at an operator node.
class FunctionDomainError : public std::runtime_error {
public:
    FunctionDomainError(const std::string& what, double node)
        : std::runtime_error(what), node_(node) {}

    double node() const noexcept { return node_; }

private:
    double node_;
};

/// A series hit max_terms before its tail certificate was met.
/// Carries the partial sum so callers can still inspect it.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double partial, std::size_t terms)
        : std::runtime_error(what), partial_(partial), terms_(terms) {}

    double partial_sum() const noexcept { return partial_; }
    std::size_t terms_used() const noexcept { return terms_; }

private:
    double partial_;
    std::size_t terms_;
};

}  // namespace qdunkl
