#pragma once

#include <stdexcept>
#include <string>

namespace abconvex {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN/Inf samples, bad grid sizes, empty bodies.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A band (alpha, beta, L) or a function argument outside its admissible domain.
// The message names the violated inequality.
class BandViolation : public Error {
 public:
  using Error::Error;
};

// The curvature control does not close into a curve: its first Fourier
// harmonics exceed the closure tolerance.
class ClosureViolation : public Error {
 public:
  ClosureViolation(double residual, double tolerance)
      : Error("closure violation: first-harmonic residual " + std::to_string(residual) +
              " exceeds tolerance " + std::to_string(tolerance)),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Consecutive arcs of an ArcBody do not meet (G1 continuity broken).
class JunctionMismatch : public Error {
 public:
  using Error::Error;
};

// Alternating projections did not reach the feasible set.
class ProjectionFailed : public Error {
 public:
  ProjectionFailed(double residual, int sweeps)
      : Error("projection failed: residual " + std::to_string(residual) + " after " +
              std::to_string(sweeps) + " sweeps"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Malformed body JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace abconvex
