#include "algebroid_mech/chart.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "algebroid_mech/errors.hpp"

namespace algebroid_mech
{

Chart::Chart(std::vector<std::string> coordNames, std::vector<bool> periodic)
  : names_(std::move(coordNames)), periodic_(std::move(periodic))
{
  if (names_.empty())
  {
    throw UsageError("chart needs at least one coordinate");
  }
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size())
  {
    throw UsageError("chart coordinate names must be unique");
  }
  if (periodic_.empty())
  {
    periodic_.assign(names_.size(), false);
  }
  if (periodic_.size() != names_.size())
  {
    throw UsageError("periodic flags must match chart dimension");
  }
}

Vec Chart::wrapForDisplay(const Vec& q) const
{
  Vec out = q;
  for (int i = 0; i < dim() && i < q.size(); ++i)
  {
    if (periodic_[static_cast<std::size_t>(i)])
    {
      out[i] = std::remainder(q[i], 2.0 * std::numbers::pi);
    }
  }
  return out;
}

Box Box::cube(int dim, double lo, double hi)
{
  return Box{Vec::Constant(dim, lo), Vec::Constant(dim, hi)};
}

void Box::validate() const
{
  if (lo.size() == 0 || lo.size() != hi.size())
  {
    throw UsageError("sampling box is empty or has mismatched bounds");
  }
  for (int i = 0; i < lo.size(); ++i)
  {
    if (!(hi[i] >= lo[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
    {
      std::ostringstream msg;
      msg << "sampling box axis " << i << " is inverted or non-finite";
      throw UsageError(msg.str());
    }
  }
}

double fdStep(double qi) noexcept
{
  return 1e-6 * std::max(1.0, std::abs(qi));
}

bool allFinite(const Vec& v) noexcept
{
  return v.allFinite();
}

namespace
{

double checkedEval(const std::function<double(const Vec&)>& f, const Vec& q)
{
  const double v = f(q);
  if (!std::isfinite(v))
  {
    throw NumericFailure("non-finite scalar field evaluation");
  }
  return v;
}

}  // namespace

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& q,
                std::optional<double> h)
{
  Vec g(q.size());
  Vec x = q;
  for (int i = 0; i < q.size(); ++i)
  {
    const double step = h ? *h : fdStep(q[i]);
    x[i] = q[i] + step;
    const double fp = checkedEval(f, x);
    x[i] = q[i] - step;
    const double fm = checkedEval(f, x);
    x[i] = q[i];
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

Vec fd_gradient(const ScalarField& f, const Vec& q, std::optional<double> h)
{
  if (f.hasGrad() && !h)
  {
    Vec g = f.grad(q);
    if (!g.allFinite())
    {
      throw NumericFailure("non-finite analytic gradient");
    }
    return g;
  }
  return fd_gradient(f.eval, q, h);
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& q,
                std::optional<double> h)
{
  Vec x = q;
  Mat jac;
  for (int i = 0; i < q.size(); ++i)
  {
    const double step = h ? *h : fdStep(q[i]);
    x[i] = q[i] + step;
    const Vec fp = f(x);
    x[i] = q[i] - step;
    const Vec fm = f(x);
    x[i] = q[i];
    if (i == 0)
    {
      jac.resize(fp.size(), q.size());
    }
    if (!fp.allFinite() || !fm.allFinite())
    {
      throw NumericFailure("non-finite vector field evaluation");
    }
    jac.col(i) = (fp - fm) / (2.0 * step);
  }
  return jac;
}

Mat jacobian(const VectorField& f, const Vec& q)
{
  if (f.hasJacobian())
  {
    return f.jacobian(q);
  }
  return fd_jacobian(f.eval, q);
}

Curve integrate_rk4(const OdeRhs& rhs, const Vec& x0, double t0, double t1, double dt)
{
  if (!(dt > 0.0) || !(t1 > t0))
  {
    throw UsageError("integrate_rk4 requires dt > 0 and t1 > t0");
  }
  if (!x0.allFinite())
  {
    throw NumericFailure("non-finite initial state", t0);
  }

  const double span = t1 - t0;
  const double ratio = span / dt;
  const double nearest = std::round(ratio);
  std::size_t fullSteps = 0;
  bool partial = false;
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
  {
    fullSteps = static_cast<std::size_t>(nearest);
  }
  else
  {
    fullSteps = static_cast<std::size_t>(std::floor(ratio));
    partial = true;
  }
  const std::size_t steps = fullSteps + (partial ? 1 : 0);

  Curve curve;
  curve.times.reserve(steps + 1);
  curve.points.reserve(steps + 1);
  curve.times.push_back(t0);
  curve.points.push_back(x0);

  Vec x = x0;
  double t = t0;
  for (std::size_t k = 1; k <= steps; ++k)
  {
    const double tNext = (k == steps) ? t1 : t0 + static_cast<double>(k) * dt;
    const double h = tNext - t;
    Vec xNext;
    try
    {
      const Vec k1 = rhs(t, x);
      const Vec k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
      const Vec k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
      const Vec k4 = rhs(t + h, x + h * k3);
      xNext = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    catch (const NumericFailure& e)
    {
      std::ostringstream msg;
      msg << e.what() << " during the step from t = " << t;
      throw NumericFailure(msg.str(), t);
    }
    if (!xNext.allFinite())
    {
      std::ostringstream msg;
      msg << "integration produced a non-finite state after t = " << t;
      throw NumericFailure(msg.str(), t);
    }
    x = std::move(xNext);
    t = tNext;
    curve.times.push_back(t);
    curve.points.push_back(x);
  }
  return curve;
}

std::vector<Vec> sample_box(const Box& box, int count, std::uint64_t seed)
{
  box.validate();
  if (count <= 0)
  {
    throw UsageError("sample count must be positive");
  }
  // Explicit affine map of raw 64-bit draws keeps samples identical across standard libraries.
  std::mt19937_64 engine(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s)
  {
    Vec q(box.dim());
    for (int i = 0; i < box.dim(); ++i)
    {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      q[i] = box.lo[i] + u * (box.hi[i] - box.lo[i]);
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Vec> grid_box(const Box& box, const std::vector<int>& perAxis, std::size_t cap)
{
  box.validate();
  if (static_cast<int>(perAxis.size()) != box.dim())
  {
    throw UsageError("grid resolution must list one count per axis");
  }
  std::size_t total = 1;
  for (int n : perAxis)
  {
    if (n < 2)
    {
      throw UsageError("grid resolution must be at least 2 per axis");
    }
    total *= static_cast<std::size_t>(n);
    if (total > cap)
    {
      throw UsageError("grid exceeds the point cap");
    }
  }

  std::vector<Vec> out;
  out.reserve(total);
  std::vector<int> idx(perAxis.size(), 0);
  for (std::size_t k = 0; k < total; ++k)
  {
    Vec q(box.dim());
    for (int i = 0; i < box.dim(); ++i)
    {
      const double frac = static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                          static_cast<double>(perAxis[static_cast<std::size_t>(i)] - 1);
      q[i] = box.lo[i] + frac * (box.hi[i] - box.lo[i]);
    }
    out.push_back(std::move(q));
    for (std::size_t i = 0; i < idx.size(); ++i)
    {
      if (++idx[i] < perAxis[i])
      {
        break;
      }
      idx[i] = 0;
    }
  }
  return out;
}

std::vector<Vec> grid_box(const Box& box, int perAxis, std::size_t cap)
{
  return grid_box(box, std::vector<int>(static_cast<std::size_t>(box.dim()), perAxis), cap);
}

}  // namespace algebroid_mech
