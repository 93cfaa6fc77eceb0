#pragma once

#include <stdexcept>
#include <string>

namespace polysieve {

// Root of every error the library throws. Callers that only care about
// "the computation was rejected" catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad modulus, empty range, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Operation is undefined for the given input (non-invertible residue,
// even modulus for an odd-only routine, imprimitive character, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Exact integer arithmetic would leave the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Inconsistent congruence system.
class NoSolution : public Error {
public:
    using Error::Error;
};

// Iterative numerics failed to certify a result.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// A requested object exceeds a configured size cap.
class TooLarge : public Error {
public:
    using Error::Error;
};

// A search for an auxiliary object (prime, parameter) ran past its cap.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

} // namespace polysieve
