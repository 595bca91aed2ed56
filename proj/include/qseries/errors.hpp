#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

// Raised whenever a coefficient beyond the tracked truncation order is requested.
class InsufficientPrecision : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Division by a series whose leading coefficient is not a unit (or which is zero).
class NotInvertible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidOrder : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace qseries
