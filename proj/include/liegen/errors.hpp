#pragma once

#include <stdexcept>
#include <string>

namespace liegen {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands live in different ambient variable counts.
class dimension_error : public error {
public:
    using error::error;
};

/// A degree beyond the stored truncation was requested or produced;
/// the data there is unknown, not zero.
class truncation_error : public error {
public:
    using error::error;
};

/// Substitution target has a constant term, so truncated composition
/// is not well defined.
class substitution_error : public error {
public:
    using error::error;
};

/// Input violates a mathematical domain constraint (order too low,
/// scaling by zero, parameter out of range, ...).
class domain_error : public error {
public:
    using error::error;
};

/// Regression-style operations got too few usable data points.
class insufficient_data_error : public error {
public:
    using error::error;
};

/// An adaptive scan hit its hard cap before its stopping rule fired.
class inconclusive_error : public error {
public:
    using error::error;
};

/// Document parsing or validation failure (message names the constraint).
class document_error : public error {
public:
    using error::error;
};

} // namespace liegen
