#pragma once

#include <stdexcept>
#include <string>

namespace algebroid_mech
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied inconsistent arguments (dimensions, empty boxes, unknown ids).
class UsageError : public Error
{
public:
  using Error::Error;
};

/// Argument lies outside the mathematical domain of an operation.
class DomainError : public Error
{
public:
  using Error::Error;
};

/// A builder could not produce a valid structure (projector, metric, adaptedness).
class ConstructionError : public Error
{
public:
  using Error::Error;
};

/// Gram-Schmidt hit a pivot below the degeneracy threshold.
class DegenerateMetricError : public ConstructionError
{
public:
  using ConstructionError::ConstructionError;
};

/// A field evaluation or integration step produced a non-finite value.
class NumericFailure : public Error
{
public:
  NumericFailure(const std::string& what, double lastGoodTime)
    : Error(what), lastGoodTime_(lastGoodTime)
  {
  }

  explicit NumericFailure(const std::string& what) : NumericFailure(what, 0.0) {}

  /// Last time at which the state was finite (0 when not from an integrator).
  double lastGoodTime() const noexcept { return lastGoodTime_; }

private:
  double lastGoodTime_;
};

}  // namespace algebroid_mech
