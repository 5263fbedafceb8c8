#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

class NonUnitLeadingCoefficient : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class EmptyPrecision : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A coefficient outside the asserted window was requested, or a pipeline
/// needs more input precision than it was given.
class PrecisionExceeded : public std::out_of_range {
public:
    PrecisionExceeded(const std::string& what, long required = -1)
        : std::out_of_range(what), required_(required) {}

    /// Precision (or series length) that would satisfy the request, -1 if unknown.
    long required() const noexcept { return required_; }

private:
    long required_;
};

class SupportExceeded : public std::runtime_error {
public:
    SupportExceeded(long max_deg, long index, const std::string& value)
        : std::runtime_error("nonzero xi-coefficient at degree " + std::to_string(index) +
                             " (value " + value + ") beyond claimed degree " +
                             std::to_string(max_deg)),
          max_deg_(max_deg),
          index_(index),
          value_(value) {}

    long max_deg() const noexcept { return max_deg_; }
    long index() const noexcept { return index_; }
    const std::string& value() const noexcept { return value_; }

private:
    long max_deg_;
    long index_;
    std::string value_;
};

class UnknownCheck : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qlab
