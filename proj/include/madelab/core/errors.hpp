#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace madelab {

using Point = std::array<double, 2>;

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or violated precondition (wrong grid, bad dt, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A field sample is NaN/inf, or a field does not match its grid.
class InvalidField : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Characteristic crossing in a Hamilton-Jacobi field solve.
class CausticError : public Error {
 public:
  CausticError(double time, std::string reason)
      : Error("caustic detected at t=" + std::to_string(time) + ": " + reason),
        time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// The wave-function phase is undefined at the listed node coordinates.
class NodeError : public Error {
 public:
  NodeError(std::string what, std::vector<Point> nodes)
      : Error(std::move(what)), nodes_(std::move(nodes)) {}
  const std::vector<Point>& nodes() const { return nodes_; }

 private:
  std::vector<Point> nodes_;
};

/// Nonzero phase winding around a plaquette; S_m would be multivalued.
class VortexError : public NodeError {
 public:
  using NodeError::NodeError;
};

class UnsupportedPotential : public Error {
 public:
  using Error::Error;
};

/// Observable cannot be evaluated in the requested representation.
class UnsupportedObservable : public Error {
 public:
  using Error::Error;
};

/// A vector potential that is not a pure periodic gradient.
class UngaugeablePotential : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string what, double residual)
      : Error(std::move(what)), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class ZeroProbability : public Error {
 public:
  using Error::Error;
};

/// Momentum values fall outside the binning grid.
class MarginalOverflow : public Error {
 public:
  MarginalOverflow(std::string what, double overflow_mass)
      : Error(std::move(what)), overflow_mass_(overflow_mass) {}
  double overflow_mass() const { return overflow_mass_; }

 private:
  double overflow_mass_;
};

}  // namespace madelab
