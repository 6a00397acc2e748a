#pragma once

#include <stdexcept>
#include <string>

namespace nonrecip {

// Numerical failures map to CLI exit code 2, InvalidInput to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class NonConvergence : public NumericalError {
public:
    NonConvergence(const std::string& what, double best_residual)
        : NumericalError(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

class SingularJacobian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularDeterminant : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroAmplitude : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivisionByZero : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateQuadratic : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroJ3 : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ResonanceMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class InvalidParameterPath : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class UnknownFigure : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

}  // namespace nonrecip
