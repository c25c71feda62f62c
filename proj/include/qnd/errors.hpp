#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qnd {

/// Probability mass left outside a truncated Fock window exceeded the
/// configured tolerance.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration. Carries every violated invariant, not just the
/// first one encountered.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::string summary, std::vector<std::string> violations = {})
        : std::runtime_error(std::move(summary)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

} // namespace qnd
