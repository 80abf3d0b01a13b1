#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace markdyn {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Absolute tolerance for structural invariants (self-adjointness,
/// idempotence, unitarity, trace normalization) of validated types.
inline constexpr double kTolStruct = 1e-9;

/// Default detectability threshold for mark manifestation.
inline constexpr double kDefaultDetectDelta = 1e-6;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two operands with incompatible dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A structural invariant of a validated type does not hold; the message
/// names the invariant and the size of the violation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A scenario configuration is malformed; the message carries the field path.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written; the message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) + ")");
    }
}

} // namespace markdyn
