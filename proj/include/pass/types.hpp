// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pass {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kJ{0.0, 1.0};

// Error hierarchy. Plain argument validation throws std::invalid_argument.

/// A power ladder whose coupling ratios cannot be realised (some delta_m > 1).
class InfeasibleLadder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A user coincides with an antenna (distance below 1e-6 m).
class DegenerateGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The SINR targets cannot be met on the given channel.
class InfeasibleInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Psi^H Psi is numerically singular (condition number above 1e12).
class SingularChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The linearised SINR constraint admits no point for any transmit power.
class ScaStall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pass
