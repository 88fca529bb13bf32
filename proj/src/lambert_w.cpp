#include "algebroid_mech/lambert_w.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "algebroid_mech/errors.hpp"

namespace algebroid_mech
{

namespace
{

double initialGuess(double z)
{
  constexpr double e = std::numbers::e;
  if (z < -0.25)
  {
    // Series about the branch point z = -1/e.
    const double p = std::sqrt(std::max(0.0, 2.0 * (e * z + 1.0)));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (z < e)
  {
    return std::log1p(z) * (1.0 - std::log1p(std::log1p(z)) / (2.0 + std::log1p(z)));
  }
  const double l1 = std::log(z);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double z)
{
  constexpr double branchPoint = -1.0 / std::numbers::e;
  if (std::isnan(z) || z < branchPoint)
  {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Lambert W argument " << z << " is below -1/e";
    throw DomainError(msg.str());
  }
  if (z == 0.0)
  {
    return 0.0;
  }
  if (std::isinf(z))
  {
    return z;
  }
  if (z - branchPoint < 1e-300)
  {
    return -1.0;
  }

  double w = initialGuess(z);
  for (int it = 0; it < 50; ++it)
  {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0)
    {
      return w;
    }
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-12 * (1.0 + std::abs(w)))
    {
      return w;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "Lambert W did not converge for z = " << z;
  throw NumericFailure(msg.str());
}

}  // namespace algebroid_mech
