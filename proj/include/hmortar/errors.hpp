#pragma once

#include <stdexcept>
#include <string>

namespace hmortar {

/// Invalid or inconsistent machine configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Query outside the meshed rotor/stator annuli.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Degenerate element or structurally broken mesh.
class AssemblyError : public std::runtime_error {
public:
    explicit AssemblyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Interface system too ill-conditioned to solve; carries the condition
/// estimate that triggered the failure.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& msg, double condition_estimate)
        : std::runtime_error(msg), condition_estimate_(condition_estimate) {}

    double condition_estimate() const { return condition_estimate_; }

private:
    double condition_estimate_;
};

} // namespace hmortar
