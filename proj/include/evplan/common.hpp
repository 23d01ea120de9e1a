#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evplan {

/// Deployment costs and budgets are integer amounts in minor currency units.
using Money = std::int64_t;

/// Input data violates a schema or an invariant (CLI exit code 1).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A feasible solution does not exist or a search cap was exceeded (CLI exit code 2).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numeric computation produced non-finite values (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace evplan
