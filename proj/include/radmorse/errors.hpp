#pragma once

#include <stdexcept>
#include <string>

namespace radmorse {

/// Argument outside the mathematical domain of an operation (N < 3, t > 1, p < 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach the requested tolerance within its depth budget.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Assembly or factorization failure in the spectral layer.
class SpectralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace radmorse
