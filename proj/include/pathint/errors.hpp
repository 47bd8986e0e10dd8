#pragma once

#include <stdexcept>
#include <string>

namespace pathint {

/// Input lies outside an operation's domain: malformed grids, mismatched
/// grids, evaluation at a singular point, zero time step.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configuration, schedule or method selection is unusable as given.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical guard refused to run (kernel phase resolution, boundary mass).
class GuardError : public std::runtime_error {
public:
    GuardError(std::string guard, double measured, double threshold, const std::string& what)
        : std::runtime_error(what), guard_(std::move(guard)), measured_(measured),
          threshold_(threshold) {}

    const std::string& guard() const noexcept { return guard_; }
    double measured() const noexcept { return measured_; }
    double threshold() const noexcept { return threshold_; }

private:
    std::string guard_;
    double measured_;
    double threshold_;
};

}  // namespace pathint
