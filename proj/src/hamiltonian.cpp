#include "algebroid_mech/hamiltonian.hpp"

#include <sstream>

#include "algebroid_mech/errors.hpp"

namespace algebroid_mech
{

Vec PhasePoint::state() const
{
  Vec s(q.size() + p.size());
  s << q, p;
  return s;
}

Vec PhasePoint::dualPoint() const
{
  if (!p0)
  {
    throw UsageError("evaluation on E* needs p0");
  }
  Vec x(q.size() + p.size() + 1);
  x << q, *p0, p;
  return x;
}

PhasePoint PhasePoint::fromState(const Vec& state, int m)
{
  PhasePoint x;
  x.q = state.head(m);
  x.p = state.tail(state.size() - m);
  return x;
}

HamiltonianSystem::HamiltonianSystem(std::string name, SkewAlgebroid algebroid, ScalarField H,
                                     std::map<std::string, double> params)
  : name_(std::move(name)), algebroid_(std::move(algebroid)), H_(std::move(H)),
    params_(std::move(params))
{
  if (!algebroid_.adapted())
  {
    throw UsageError("hamiltonian system '" + name_ + "' needs an adapted algebroid");
  }
  if (!H_.eval)
  {
    throw UsageError("hamiltonian system '" + name_ + "' has no Hamiltonian");
  }
}

double HamiltonianSystem::hamiltonian(const Vec& q, const Vec& p) const
{
  Vec x(q.size() + p.size());
  x << q, p;
  return H_(x);
}

std::pair<Vec, Vec> HamiltonianSystem::gradients(const Vec& q, const Vec& p) const
{
  if (q.size() != m() || p.size() != n() - 1)
  {
    std::ostringstream msg;
    msg << "phase point of size (" << q.size() << ", " << p.size() << ") does not match system '"
        << name_ << "' of size (" << m() << ", " << n() - 1 << ")";
    throw UsageError(msg.str());
  }
  Vec x(q.size() + p.size());
  x << q, p;
  const Vec g = fd_gradient(H_, x);
  return {g.head(m()), g.tail(n() - 1)};
}

double poisson_bracket_eval(const SkewAlgebroid& A, const ScalarField& F, const ScalarField& G,
                            const PhasePoint& x)
{
  const int m = A.dim();
  const int n = A.rank();
  const Vec point = x.dualPoint();
  if (x.q.size() != m || x.p.size() != n - 1)
  {
    throw UsageError("phase point does not match the algebroid");
  }
  const Vec dF = fd_gradient(F, point);
  const Vec dG = fd_gradient(G, point);
  const Vec Fq = dF.head(m);
  const Vec Gq = dG.head(m);
  const Vec Fp = dF.tail(n);
  const Vec Gp = dG.tail(n);
  const Vec p = point.tail(n);

  const Mat rho = A.anchor(x.q);
  const StructureTensor C = A.structure(x.q);

  double value = Fq.dot(rho * Gp) - Gq.dot(rho * Fp);
  // For adapted frames C^0 vanishes, so the p0 slot never enters the fiber-fiber part.
  const int firstUpper = A.adapted() ? 1 : 0;
  for (int a = 0; a < n; ++a)
  {
    for (int b = a + 1; b < n; ++b)
    {
      double cp = 0.0;
      for (int c = firstUpper; c < n; ++c)
      {
        cp += C(a, b, c) * p[c];
      }
      value -= cp * (Fp[a] * Gp[b] - Fp[b] * Gp[a]);
    }
  }
  return value;
}

double f_h_eval(const HamiltonianSystem& sys, const PhasePoint& x)
{
  if (!x.p0)
  {
    throw UsageError("F_h needs p0");
  }
  return *x.p0 + sys.hamiltonian(x.q, x.p);
}

ScalarField f_h_field(const HamiltonianSystem& sys)
{
  const int m = sys.m();
  const int k = sys.n() - 1;
  ScalarField F;
  F.eval = [sys, m, k](const Vec& x) {
    return x[m] + sys.hamiltonian(x.head(m), x.tail(k));
  };
  F.grad = [sys, m, k](const Vec& x) -> Vec {
    const auto [hq, hp] = sys.gradients(x.head(m), x.tail(k));
    Vec g(m + k + 1);
    g << hq, 1.0, hp;
    return g;
  };
  return F;
}

namespace
{

struct Rates
{
  Vec qdot;
  Vec pdot;
};

Rates ratesAt(const HamiltonianSystem& sys, const Vec& q, const Vec& p)
{
  const int n = sys.n();
  const auto [hq, hp] = sys.gradients(q, p);
  const Mat rho = sys.algebroid().anchor(q);
  const StructureTensor C = sys.algebroid().structure(q);

  Rates r;
  r.qdot = rho.col(0) + rho.rightCols(n - 1) * hp;
  r.pdot = Vec::Zero(n - 1);
  for (int b = 1; b < n; ++b)
  {
    double acc = -rho.col(b).dot(hq);
    for (int c = 1; c < n; ++c)
    {
      double coeff = C(0, b, c);
      for (int a = 1; a < n; ++a)
      {
        coeff += C(a, b, c) * hp[a - 1];
      }
      acc += coeff * p[c - 1];
    }
    r.pdot[b - 1] = acc;
  }
  return r;
}

}  // namespace

Vec hamilton_rhs(const HamiltonianSystem& sys, double /*t*/, const Vec& state)
{
  if (state.size() != sys.stateDim())
  {
    throw UsageError("state size does not match the hamiltonian system");
  }
  const Rates r = ratesAt(sys, state.head(sys.m()), state.tail(sys.n() - 1));
  Vec out(state.size());
  out << r.qdot, r.pdot;
  return out;
}

PhasePoint hamilton_rhs(const HamiltonianSystem& sys, double t, const PhasePoint& x)
{
  return PhasePoint::fromState(hamilton_rhs(sys, t, x.state()), sys.m());
}

Curve integrate_hamilton(const HamiltonianSystem& sys, const Vec& state0, double t0, double t1,
                         double dt)
{
  if (state0.size() != sys.stateDim())
  {
    throw UsageError("initial state size does not match the hamiltonian system");
  }
  return integrate_rk4([&sys](double t, const Vec& x) { return hamilton_rhs(sys, t, x); }, state0,
                       t0, t1, dt);
}

double dissipation_rate(const HamiltonianSystem& sys, const Vec& state)
{
  const int m = sys.m();
  const int n = sys.n();
  if (state.size() != sys.stateDim())
  {
    throw UsageError("state size does not match the hamiltonian system");
  }
  const Vec q = state.head(m);
  const Vec p = state.tail(n - 1);
  const auto [hq, hp] = sys.gradients(q, p);
  const Mat rho = sys.algebroid().anchor(q);
  const StructureTensor C = sys.algebroid().structure(q);
  double rate = rho.col(0).dot(hq);
  for (int b = 1; b < n; ++b)
  {
    for (int c = 1; c < n; ++c)
    {
      rate += C(0, b, c) * p[c - 1] * hp[b - 1];
    }
  }
  return rate;
}

Vec projected_field(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q)
{
  if (alpha.space != DualSpace::VStar)
  {
    throw UsageError("projected_field expects a section of V*");
  }
  const Vec a = alpha(q);
  if (a.size() != sys.n() - 1)
  {
    throw UsageError("section of V* has the wrong number of components");
  }
  const auto [hq, hp] = sys.gradients(q, a);
  const Mat rho = sys.algebroid().anchor(q);
  return rho.col(0) + rho.rightCols(sys.n() - 1) * hp;
}

}  // namespace algebroid_mech
