#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cranidnc {

/// A precondition of an operation was not met by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An input map does not cover every index the network dimensions require.
class MissingData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The exhaustive oracle was asked to solve an instance larger than its budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A schedule extracted from a clique failed validation.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_index(std::size_t value, std::size_t bound, const char* what)
{
    if (value >= bound) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(value) +
                                " out of range [0, " + std::to_string(bound) + ")");
    }
}

} // namespace detail
} // namespace cranidnc
