#pragma once

#include <stdexcept>
#include <string>

namespace fracschrod {

// Anything that signals "the numerics could not deliver" maps to CLI exit 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DenominatorSingularity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularTime : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ContourClash : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidOrder : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fracschrod
