#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pseudoherm {

/// Operand shapes do not fit the operation (non-square, mismatched sizes).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters fall outside the mathematical domain of an operation, e.g. the
/// broken (complex-eigenvalue) regime of a block.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what, std::optional<double> discriminant = std::nullopt)
        : std::domain_error(what), discriminant_(discriminant) {}

    /// Value of the offending discriminant, when the error came from one.
    std::optional<double> discriminant() const noexcept { return discriminant_; }

private:
    std::optional<double> discriminant_;
};

/// A vector has zero or negative length under the metric. Happens on the
/// null direction of the singular metric at the exceptional point.
class DegenerateNormError : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularOperatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pseudoherm
