#pragma once

#include <stdexcept>
#include <string>

namespace skipdft {

/// Raised when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a ratio statistic has a (numerically) vanishing denominator.
class DegenerateStatistic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fewer than two skip-samples: no dispersion can be formed.
class InsufficientSubsamples : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Autoregressive parameter outside the stationary region.
class NonstationaryProcess : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature failed to reach the requested tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace skipdft
