#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace projlat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// One tolerance policy governs every numeric decision in the toolkit.
// eig_cluster  - clustering radius for eigenvalues and spectral-family cutoffs
// rank_tol     - singular-value threshold for rank / null-space decisions
// psd_tol      - allowed negative-eigenvalue slack in positivity checks
// order_tol    - threshold for ||Q^perp P|| in order comparisons
struct ToleranceConfig {
  double eig_cluster = 1e-9;
  double rank_tol = 1e-10;
  double psd_tol = 1e-10;
  double order_tol = 1e-8;

  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or structurally invalid numeric input.
class NumericInputError : public Error {
 public:
  using Error::Error;
};

// Mismatched dimensions, empty collections, bad parameters.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A required order relation between projections does not hold.
class OrderError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A constructive procedure has no valid output for the given input.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency assertion failed at the configured tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

inline double frobenius(const Matrix& m) { return m.norm(); }

}  // namespace projlat
