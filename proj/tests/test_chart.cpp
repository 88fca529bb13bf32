#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "algebroid_mech/chart.hpp"
#include "algebroid_mech/errors.hpp"
#include "test_support.hpp"

using namespace algebroid_mech;

namespace
{

Vec v2(double a, double b)
{
  return (Vec(2) << a, b).finished();
}

}  // namespace

TEST(FdGradient, ConstantFieldHasZeroGradient)
{
  const Vec g = fd_gradient([](const Vec&) { return 5.0; }, v2(0.3, -7.0));
  EXPECT_EQ(g.size(), 2);
  EXPECT_EQ(g.cwiseAbs().maxCoeff(), 0.0);
}

TEST(FdGradient, ProductOfCoordinates)
{
  const Vec g = fd_gradient([](const Vec& q) { return q[0] * q[1]; }, v2(2.0, 3.0));
  EXPECT_NEAR(g[0], 3.0, 1e-9);
  EXPECT_NEAR(g[1], 2.0, 1e-9);
}

TEST(FdGradient, SineMatchesCosine)
{
  const Vec q = Vec::Constant(1, 0.7);
  const Vec g = fd_gradient([](const Vec& x) { return std::sin(x[0]); }, q);
  EXPECT_NEAR(g[0], std::cos(0.7), 1e-9);
}

TEST(FdGradient, UsesAnalyticGradientWhenSupplied)
{
  ScalarField f;
  f.eval = [](const Vec& q) { return q[0] * q[0]; };
  f.grad = [](const Vec&) { return Vec::Constant(1, 42.0); };
  EXPECT_EQ(fd_gradient(f, Vec::Constant(1, 1.0))[0], 42.0);
}

TEST(FdGradient, NonFiniteEvaluationIsNumericFailure)
{
  auto f = [](const Vec& q) { return q[0] > 0.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0; };
  EXPECT_THROW(fd_gradient(f, Vec::Constant(1, 0.0)), NumericFailure);
}

TEST(FdGradientProperty, LinearFieldsAreExactToStepRoundoff)
{
  std::mt19937_64 rng(7);
  for (int s = 0; s < test_support::kSamples; ++s)
  {
    const Vec c = test_support::randomVec(3, rng, -5.0, 5.0);
    const Vec q = test_support::randomVec(3, rng, -3.0, 3.0);
    const Vec g = fd_gradient([&c](const Vec& x) { return c.dot(x) + 1.5; }, q, 1e-5);
    EXPECT_LE((g - c).cwiseAbs().maxCoeff(), 1e-9) << "sample " << s;
  }
}

TEST(FdJacobian, MatchesAnalyticJacobian)
{
  auto f = [](const Vec& q) { return v2(q[0] * q[1], std::exp(q[1])); };
  const Mat J = fd_jacobian(f, v2(0.5, -0.25));
  EXPECT_NEAR(J(0, 0), -0.25, 1e-8);
  EXPECT_NEAR(J(0, 1), 0.5, 1e-8);
  EXPECT_NEAR(J(1, 0), 0.0, 1e-8);
  EXPECT_NEAR(J(1, 1), std::exp(-0.25), 1e-8);
}

TEST(Rk4, ZeroFieldGivesConstantCurve)
{
  const Curve c = integrate_rk4([](double, const Vec& x) { return Vec::Zero(x.size()); },
                                v2(1.0, 2.0), 0.0, 1.0, 0.1);
  ASSERT_EQ(c.size(), 11u);
  for (const Vec& p : c.points)
  {
    EXPECT_EQ(p, v2(1.0, 2.0));
  }
}

TEST(Rk4, ExponentialReachesE)
{
  const Curve c =
      integrate_rk4([](double, const Vec& x) { return x; }, Vec::Ones(1), 0.0, 1.0, 1e-3);
  EXPECT_DOUBLE_EQ(c.times.back(), 1.0);
  EXPECT_NEAR(c.back()[0], std::exp(1.0), 1e-10);
}

TEST(Rk4, HarmonicOscillatorEnergyDrift)
{
  const Curve c = integrate_rk4(
      [](double, const Vec& x) { return v2(x[1], -x[0]); }, v2(1.0, 0.0), 0.0, 10.0, 1e-3);
  double drift = 0.0;
  for (const Vec& p : c.points)
  {
    drift = std::max(drift, std::abs(0.5 * p.squaredNorm() - 0.5));
  }
  EXPECT_LT(drift, 1e-9);
  // Compared with the analytic circle at the end point.
  EXPECT_NEAR(c.back()[0], std::cos(10.0), 1e-9);
  EXPECT_NEAR(c.back()[1], -std::sin(10.0), 1e-9);
}

TEST(Rk4, FourthOrderConvergence)
{
  double previous = 0.0;
  for (const double dt : {1e-2, 5e-3, 2.5e-3})
  {
    const Curve c =
        integrate_rk4([](double, const Vec& x) { return x; }, Vec::Ones(1), 0.0, 1.0, dt);
    const double err = std::abs(c.back()[0] - std::exp(1.0));
    if (previous > 0.0)
    {
      EXPECT_GE(previous / err, 12.0) << "dt = " << dt;
    }
    previous = err;
  }
}

TEST(Rk4, PartialLastStepLandsOnEndTime)
{
  const Curve c =
      integrate_rk4([](double, const Vec& x) { return x; }, Vec::Ones(1), 0.0, 1.0, 0.3);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(c.times.back(), 1.0);
  EXPECT_NEAR(c.times[3], 0.9, 1e-15);
  for (std::size_t i = 1; i < c.size(); ++i)
  {
    EXPECT_GT(c.times[i], c.times[i - 1]);
  }
}

TEST(Rk4, RejectsBadTimeArguments)
{
  auto rhs = [](double, const Vec& x) { return x; };
  EXPECT_THROW(integrate_rk4(rhs, Vec::Ones(1), 0.0, 1.0, 0.0), UsageError);
  EXPECT_THROW(integrate_rk4(rhs, Vec::Ones(1), 1.0, 1.0, 0.1), UsageError);
}

TEST(Rk4, BlowUpReportsLastGoodTime)
{
  // xdot = x^2 from x(0) = 1 blows up at t = 1.
  try
  {
    integrate_rk4([](double, const Vec& x) { return Vec(x.cwiseProduct(x)); }, Vec::Ones(1), 0.0,
                  2.0, 1e-2);
    FAIL() << "expected a numeric failure";
  }
  catch (const NumericFailure& e)
  {
    EXPECT_GT(e.lastGoodTime(), 0.9);
    EXPECT_LT(e.lastGoodTime(), 1.1);
  }
}

TEST(Rk4, IdenticalInputsGiveBitIdenticalCurves)
{
  auto rhs = [](double t, const Vec& x) { return v2(std::sin(t) * x[1], -x[0] + 0.1 * x[1]); };
  const Curve a = integrate_rk4(rhs, v2(0.3, -0.2), 0.0, 3.0, 1e-3);
  const Curve b = integrate_rk4(rhs, v2(0.3, -0.2), 0.0, 3.0, 1e-3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    EXPECT_EQ(a.times[i], b.times[i]);
    EXPECT_EQ(a.points[i], b.points[i]);
  }
}

TEST(Sampling, SeededSamplesAreReproducibleAndInside)
{
  const Box box{v2(-1.0, 2.0), v2(1.0, 5.0)};
  const auto a = sample_box(box, 64, 123);
  const auto b = sample_box(box, 64, 123);
  const auto c = sample_box(box, 64, 124);
  ASSERT_EQ(a.size(), 64u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    EXPECT_EQ(a[i], b[i]);
    differs = differs || a[i] != c[i];
    EXPECT_TRUE((a[i].array() >= box.lo.array()).all());
    EXPECT_TRUE((a[i].array() <= box.hi.array()).all());
  }
  EXPECT_TRUE(differs);
}

TEST(Sampling, EmptyOrInvertedBoxIsUsageError)
{
  EXPECT_THROW(sample_box(Box{}, 4, 1), UsageError);
  EXPECT_THROW(sample_box(Box{v2(1.0, 0.0), v2(0.0, 1.0)}, 4, 1), UsageError);
}

TEST(Grid, IncludesEndpointsAndRejectsCoarseAxes)
{
  const Box box{v2(0.0, -1.0), v2(1.0, 1.0)};
  const auto g = grid_box(box, std::vector<int>{3, 2});
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g.front(), v2(0.0, -1.0));
  EXPECT_EQ(g.back(), v2(1.0, 1.0));
  EXPECT_THROW(grid_box(box, std::vector<int>{1, 3}), UsageError);
  EXPECT_THROW(grid_box(box, 1000, 1000), UsageError);
}

TEST(Chart, PeriodicCoordinatesWrapForDisplayOnly)
{
  const Chart chart({"x", "theta"}, {false, true});
  const Vec w = chart.wrapForDisplay(v2(10.0, 7.0));
  EXPECT_EQ(w[0], 10.0);
  EXPECT_NEAR(w[1], 7.0 - 2.0 * M_PI, 1e-15);
  EXPECT_THROW(Chart({"x", "x"}), UsageError);
}
