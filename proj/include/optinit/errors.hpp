#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace optinit {

// Bad tensor shape: zero dimension, operand mismatch, etc.
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Invalid configuration: bad hyperparameter, unknown JSON field, missing
// data source, degenerate analysis ratios. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Analysis operation evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// NaN in an incoming gradient.
class GradientError : public std::runtime_error {
public:
    explicit GradientError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite value detected while running an experiment. Carries the step
// index at which the run was aborted. CLI maps this to exit code 1.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& msg, std::uint64_t step)
        : std::runtime_error(msg + " (step " + std::to_string(step) + ")"), step_(step) {}
    std::uint64_t step() const { return step_; }

private:
    std::uint64_t step_;
};

}  // namespace optinit
