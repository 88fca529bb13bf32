#include "algebroid_mech/hamilton_jacobi.hpp"

#include <cmath>
#include <sstream>

#include "algebroid_mech/errors.hpp"
#include "algebroid_mech/parallel.hpp"

namespace algebroid_mech
{

namespace
{

Vec vstarValue(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q)
{
  if (alpha.space != DualSpace::VStar)
  {
    throw UsageError("expected a section of V*");
  }
  const Vec a = alpha(q);
  if (a.size() != sys.n() - 1)
  {
    throw UsageError("section of V* has the wrong number of components");
  }
  return a;
}

}  // namespace

Vec zeta_eval(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q)
{
  const Vec a = vstarValue(sys, alpha, q);
  const auto grads = sys.gradients(q, a);
  Vec z(sys.n());
  z[0] = 1.0;
  z.tail(sys.n() - 1) = grads.second;
  return z;
}

Vec hj_residual(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q)
{
  const Vec a = vstarValue(sys, alpha, q);
  const Mat J = jacobian(alpha.field, q);
  const Vec R = projected_field(sys, alpha, q);
  Vec state(sys.stateDim());
  state << q, a;
  const Vec pdot = hamilton_rhs(sys, 0.0, state).tail(sys.n() - 1);
  return J * R - pdot;
}

DualSection lift_to_dual(const HamiltonianSystem& sys, const DualSection& alpha)
{
  if (alpha.space != DualSpace::VStar)
  {
    throw UsageError("lift_to_dual expects a section of V*");
  }
  DualSection beta;
  beta.space = DualSpace::EStar;
  beta.field.eval = [sys, alpha](const Vec& q) -> Vec {
    const Vec a = alpha(q);
    Vec out(a.size() + 1);
    out << -sys.hamiltonian(q, a), a;
    return out;
  };
  if (alpha.field.hasJacobian())
  {
    beta.field.jacobian = [sys, alpha](const Vec& q) -> Mat {
      const Vec a = alpha(q);
      const Mat Ja = alpha.field.jacobian(q);
      const auto [hq, hp] = sys.gradients(q, a);
      Mat out(a.size() + 1, q.size());
      out.row(0) = -(hq + Ja.transpose() * hp).transpose();
      out.bottomRows(a.size()) = Ja;
      return out;
    };
  }
  return beta;
}

Vec hj_residual_dual(const HamiltonianSystem& sys, const DualSection& beta, const Vec& q)
{
  if (beta.space != DualSpace::EStar)
  {
    throw UsageError("hj_residual_dual expects a section of E*");
  }
  const int n = sys.n();
  const Vec b = beta(q);
  if (b.size() != n)
  {
    throw UsageError("section of E* has the wrong number of components");
  }
  const Vec bv = b.tail(n - 1);
  const auto [hq, hp] = sys.gradients(q, bv);
  Vec zeta(n);
  zeta[0] = 1.0;
  zeta.tail(n - 1) = hp;

  const SkewAlgebroid& A = sys.algebroid();
  const Mat D = d_oneform_components(A, beta, q);
  const Mat Jb = jacobian(beta.field, q);
  // Gradient of F_h o beta by the chain rule.
  const Vec gradF = Jb.row(0).transpose() + hq + Jb.bottomRows(n - 1).transpose() * hp;
  const Mat rho = A.anchor(q);

  Vec out(n - 1);
  for (int a = 1; a < n; ++a)
  {
    out[a - 1] = zeta.dot(D.col(a)) + rho.col(a).dot(gradF);
  }
  return out;
}

Vec hj_forced_residual(const HamiltonianSystem& extended, const Homomorphism& F,
                       const DualSection& alpha, const Vec& q)
{
  const int k = extended.n() - 1;
  const Vec a = vstarValue(extended, alpha, q);
  const SkewAlgebroid base = v_subalgebroid(extended.algebroid());
  const DualSection asBase{alpha.field, DualSpace::EStar};
  const Mat D = d_oneform_components(base, asBase, q);
  const auto [hq, hp] = extended.gradients(q, a);
  const Mat Ja = jacobian(alpha.field, q);
  const Vec gradHalpha = hq + Ja.transpose() * hp;
  const Mat rho = base.anchor(q);
  const Mat f = F(q);
  if (f.rows() != k || f.cols() != k)
  {
    throw UsageError("force homomorphism has the wrong size");
  }
  Vec out(k);
  for (int i = 0; i < k; ++i)
  {
    out[i] = hp.dot(D.col(i)) + rho.col(i).dot(gradHalpha) + f.row(i).dot(a);
  }
  return out;
}

HJReport hj_grid_check(const std::function<Vec(const Vec&)>& residual, const Box& box,
                       const std::vector<int>& perAxis, double tol)
{
  const std::vector<Vec> grid = grid_box(box, perAxis);
  std::vector<Vec> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = residual(grid[i]); });

  HJReport report;
  report.tol = tol;
  WitnessCollector worst;
  report.residual_grid.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const double norm = values[i].size() == 0 ? 0.0 : values[i].cwiseAbs().maxCoeff();
    worst.offer(grid[i], norm);
    report.residual_grid.emplace_back(grid[i], values[i]);
  }
  CheckReport summary;
  summary.tol = tol;
  worst.finalize(summary);
  report.max_norm = summary.max_violation;
  report.worst = summary.witnesses;
  report.pass = report.max_norm <= tol;
  return report;
}

HJReport hj_grid_check(const HamiltonianSystem& sys, const DualSection& alpha, const Box& box,
                       const std::vector<int>& perAxis, double tol)
{
  return hj_grid_check([&](const Vec& q) { return hj_residual(sys, alpha, q); }, box, perAxis,
                       tol);
}

LiftReport verify_lift(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q0,
                       double t0, double t1, double dt, double tol)
{
  LiftReport report;
  report.tol = tol;
  const int m = sys.m();
  if (q0.size() != m)
  {
    throw UsageError("initial base point has the wrong dimension");
  }

  std::string failure;
  double lastGood = t0;
  try
  {
    report.base_curve = integrate_rk4(
        [&](double, const Vec& q) { return projected_field(sys, alpha, q); }, q0, t0, t1, dt);
  }
  catch (const NumericFailure& e)
  {
    failure = std::string("base curve: ") + e.what();
    lastGood = e.lastGoodTime();
  }

  const Vec a0 = vstarValue(sys, alpha, q0);
  Vec x0(sys.stateDim());
  x0 << q0, a0;
  if (failure.empty())
  {
    try
    {
      report.hamilton_curve = integrate_hamilton(sys, x0, t0, t1, dt);
    }
    catch (const NumericFailure& e)
    {
      failure = std::string("hamilton flow: ") + e.what();
      lastGood = e.lastGoodTime();
    }
  }

  if (!failure.empty())
  {
    report.pass = false;
    report.failure = failure;
    report.max_deviation = std::numeric_limits<double>::infinity();
    throw LiftFailure(failure, lastGood, report);
  }

  report.lifted_curve.times = report.base_curve.times;
  for (std::size_t i = 0; i < report.base_curve.size(); ++i)
  {
    const Vec& q = report.base_curve.points[i];
    Vec lifted(sys.stateDim());
    lifted << q, vstarValue(sys, alpha, q);
    const double dev = (lifted - report.hamilton_curve.points[i]).cwiseAbs().maxCoeff();
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
    report.lifted_curve.points.push_back(std::move(lifted));
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

std::vector<Mat> christoffel(const MetricField& G, const Vec& q)
{
  const Mat g = G(q);
  const int m = static_cast<int>(g.rows());
  if (g.cols() != m || q.size() != m)
  {
    throw UsageError("metric must be square and match the chart dimension");
  }
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
  {
    throw DomainError("metric is not positive definite at the evaluation point");
  }
  // dG[l](i, j) = d_l G_{ij}
  std::vector<Mat> dG(static_cast<std::size_t>(m));
  Vec x = q;
  for (int l = 0; l < m; ++l)
  {
    const double h = fdStep(q[l]);
    x[l] = q[l] + h;
    const Mat gp = G(x);
    x[l] = q[l] - h;
    const Mat gm = G(x);
    x[l] = q[l];
    dG[static_cast<std::size_t>(l)] = (gp - gm) / (2.0 * h);
  }
  std::vector<Mat> gamma(static_cast<std::size_t>(m), Mat::Zero(m, m));
  for (int i = 0; i < m; ++i)
  {
    for (int j = 0; j < m; ++j)
    {
      Vec lower(m);
      for (int l = 0; l < m; ++l)
      {
        lower[l] = 0.5 * (dG[static_cast<std::size_t>(i)](l, j) +
                          dG[static_cast<std::size_t>(j)](l, i) -
                          dG[static_cast<std::size_t>(l)](i, j));
      }
      const Vec upper = llt.solve(lower);
      for (int k = 0; k < m; ++k)
      {
        gamma[static_cast<std::size_t>(k)](i, j) = upper[k];
      }
    }
  }
  return gamma;
}

Vec autoparallel_residual(const MetricField& G, const VectorField& X, const Vec& q)
{
  const std::vector<Mat> gamma = christoffel(G, q);
  const Vec v = X(q);
  if (v.size() != q.size())
  {
    throw UsageError("vector field has the wrong dimension");
  }
  Vec out = jacobian(X, q) * v;
  for (int k = 0; k < q.size(); ++k)
  {
    out[k] += v.dot(gamma[static_cast<std::size_t>(k)] * v);
  }
  return out;
}

}  // namespace algebroid_mech
