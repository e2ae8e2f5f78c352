#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tstab {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a named invariant (shapes, signs, membership).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Scenario file could not be parsed; `where` names the offending field.
class ParseError : public Error {
public:
    ParseError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), where_(where) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Newton iteration failed to reach the residual tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// Integration produced a non-finite state.
class SimulationError : public Error {
public:
    SimulationError(const std::string& what, Index step)
        : Error(what), step_(step) {}
    Index step() const noexcept { return step_; }

private:
    Index step_;
};

}  // namespace tstab
