#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace obscbf {

/// Raised when a configuration value makes an operation undefined (e.g. epsilon = 0).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised in strict mode when the epsilon feasibility check fails.
class FeasibilityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// A config document value failed validation; `key()` names the offending field.
class ValidationError : public ConfigError {
public:
    ValidationError(std::string key, const std::string& what)
        : ConfigError("invalid value for \"" + key + "\": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Malformed config document. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The ODE right-hand side produced a non-finite value.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(double t, Eigen::VectorXd state, const std::string& what)
        : std::runtime_error(what), t_(t), state_(std::move(state)) {}

    double t() const noexcept { return t_; }
    const Eigen::VectorXd& state() const noexcept { return state_; }

private:
    double t_;
    Eigen::VectorXd state_;
};

}  // namespace obscbf
