#ifndef HEATLAB_ERRORS_HPP
#define HEATLAB_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace heatlab
{

// Base of every error thrown by the library. The CLI maps the subclasses
// onto process exit codes.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Invalid input: scenario, grid, trajectory or file contents.
class ConfigError : public Error
{
public:
  using Error::Error;
};

class ZeroAngularVelocity : public ConfigError
{
public:
  ZeroAngularVelocity() : ConfigError("trajectory has zero angular velocity; period undefined") {}
};

class TrajectoryNotClosed : public ConfigError
{
public:
  TrajectoryNotClosed() : ConfigError("trajectory profile requires a closed (CT or ET) trajectory") {}
  explicit TrajectoryNotClosed(std::string const &what) : ConfigError(what) {}
};

class NegativeElapsed : public Error
{
public:
  explicit NegativeElapsed(double delta)
      : Error("kernel evaluated at negative elapsed time " + std::to_string(delta))
  {
  }
};

class QuadratureNotConverged : public Error
{
public:
  QuadratureNotConverged(double estimate, double tolerance)
      : Error("adaptive quadrature did not converge: error estimate " + scientific(estimate) +
              " exceeds tolerance " + scientific(tolerance)),
        estimate_(estimate), tolerance_(tolerance)
  {
  }

  static std::string scientific(double v)
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }

  double estimate() const noexcept { return estimate_; }
  double tolerance() const noexcept { return tolerance_; }

private:
  double estimate_;
  double tolerance_;
};

class PeakOnBoundary : public Error
{
public:
  PeakOnBoundary() : Error("temperature maximum lies on the plate boundary") {}
};

class UnstableConfig : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

} // namespace heatlab

#endif // HEATLAB_ERRORS_HPP
