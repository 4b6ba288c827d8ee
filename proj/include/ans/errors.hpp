#pragma once

#include <stdexcept>
#include <string>

namespace ans {

/// Bad or out-of-range configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// NaN/Inf detected while integrating (CLI exit code 2).
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, double t) : std::runtime_error(msg), time(t) {}
    double time;
};

/// Noise-intensity admissibility gate refused the run (CLI exit code 3).
class AssumptionError : public std::runtime_error {
public:
    AssumptionError(const std::string& msg, double r) : std::runtime_error(msg), ratio(r) {}
    double ratio;
};

/// Request exceeds a hard resource cap (path too long, file truncated, ...).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Snapshot or series data violates a structural invariant.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ans
