#pragma once

#include <stdexcept>
#include <string>

namespace amfsi {

// Bad input or a precondition the caller can fix. CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The computation itself broke down. CLI exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CflViolation : public ValidationError {
public:
    CflViolation(double lambda)
        : ValidationError("CFL number " + std::to_string(lambda) + " exceeds 1"), lambda(lambda) {}
    double lambda;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DegenerateGeometry : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnsupportedShape : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SingularBodyUpdate : public NumericalFailure {
public:
    SingularBodyUpdate()
        : NumericalFailure("body update is singular: zero mass with zero coupling weights") {}
};

class SingularStage : public NumericalFailure {
public:
    SingularStage(double condition)
        : NumericalFailure("DIRK stage matrix is singular (condition number " +
                           std::to_string(condition) + ")"),
          condition(condition) {}
    double condition;
};

class NewtonDivergence : public NumericalFailure {
public:
    NewtonDivergence(int iterations, double residual)
        : NumericalFailure("Newton iteration failed after " + std::to_string(iterations) +
                           " iterations, residual " + std::to_string(residual)),
          iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

class NonphysicalPressure : public NumericalFailure {
public:
    NonphysicalPressure(double p)
        : NumericalFailure("projected pressure is not positive: " + std::to_string(p)), pressure(p) {}
    double pressure;
};

} // namespace amfsi
