#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace graph_sections {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes, so new error kinds should derive from one of the groups below.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hypothesis or input contract violated (graph/operator preconditions).
class ContractError : public Error {
public:
    using Error::Error;
};

class InvalidKey : public ContractError {
public:
    using ContractError::ContractError;
};

class DirectedGraph : public ContractError {
public:
    using ContractError::ContractError;
};

class ZeroDegree : public ContractError {
public:
    using ContractError::ContractError;
};

class NegativeLambda : public ContractError {
public:
    using ContractError::ContractError;
};

class SupportOutsideBall : public ContractError {
public:
    using ContractError::ContractError;
};

class NoOffDiagonal : public ContractError {
public:
    using ContractError::ContractError;
};

class EnumerationTooShort : public ContractError {
public:
    using ContractError::ContractError;
};

/// Requested an exact-only computation on floating-point scalars.
class FloatModeUnsupported : public Error {
public:
    using Error::Error;
};

/// A certificate could not be issued (a premise failed or a section is singular).
class CertificateFailure : public Error {
public:
    using Error::Error;
};

class PremiseFailed : public CertificateFailure {
public:
    using CertificateFailure::CertificateFailure;
};

/// Config or data file rejected; carries the offending line (1-based, 0 if
/// unknown) and field name.
class ConfigError : public Error {
public:
    ConfigError(std::string message, std::size_t line, std::string field)
        : Error(format(message, line, field)), message_(std::move(message)), line_(line), field_(std::move(field))
    {
    }

    /// The message without the location prefix.
    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& message, std::size_t line, const std::string& field)
    {
        std::string out = "config error";
        if (line != 0)
            out += " at line " + std::to_string(line);
        if (!field.empty())
            out += " in field `" + field + "`";
        return out + ": " + message;
    }

    std::string message_;
    std::size_t line_;
    std::string field_;
};

} // namespace graph_sections
