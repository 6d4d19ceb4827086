#pragma once

#include <stdexcept>
#include <string>

namespace raimsim {

// Invalid input, missing files, inconsistent configuration. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accuracy or convergence failure inside a numerical kernel. CLI exit code 1.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (r <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Emits a warning on stderr unless warnings are silenced.
void warn(const std::string& msg);
void set_warnings_enabled(bool on);

} // namespace raimsim
