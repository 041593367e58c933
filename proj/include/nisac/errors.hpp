#pragma once

#include <stdexcept>
#include <string>

namespace nisac {

// Invalid scenario or configuration values (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fisher matrix too ill-conditioned to invert (CLI exit code 3).
class SingularFimError : public std::runtime_error {
public:
    SingularFimError(const std::string& block, double condition)
        : std::runtime_error("singular Fisher information matrix (" + block +
                             ", condition estimate " + std::to_string(condition) + ")"),
          block_(block),
          condition_(condition) {}

    const std::string& block() const noexcept { return block_; }
    double condition() const noexcept { return condition_; }

private:
    std::string block_;
    double condition_;
};

}  // namespace nisac
