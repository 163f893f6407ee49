// Shared scalar/matrix aliases, the numeric tolerance policy and the
// exception hierarchy used across the library.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace symtomo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Central tolerance record. Callers may override individual fields; the
// defaults are used everywhere unless stated otherwise.
struct NumericPolicy {
    double rank_tol = 1e-10;  // relative residual below which a vector is dependent
    double psd_tol = 1e-9;    // how negative an eigenvalue may be and still count as PSD
    double herm_tol = 1e-12;  // max-norm deviation from A = A^dagger
};

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape/size violations: mismatched dims, qubit count out of range.
class DimensionError : public Error {
  public:
    using Error::Error;
};

// Inputs outside their contract: non-Hermitian where Hermitian is required,
// non-unitary finite generators, probabilities outside [0,1], bad enums.
class ValidationError : public Error {
  public:
    using Error::Error;
};

// Numerical breakdown: eigensolver non-convergence, inconsistent ranks.
class NumericalError : public Error {
  public:
    using Error::Error;
};

// Estimation-level failures: under-determined systems, insufficient quorums,
// infeasible programs.
class EstimationError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// Bad run configuration (CLI layer).
class ConfigError : public Error {
  public:
    using Error::Error;
};

inline Index dim_for_qubits(int n_qubits) { return Index{1} << n_qubits; }

}  // namespace symtomo
