#pragma once

// Linear almost-Poisson bracket on E*, hamiltonian sections and the Hamilton equations on V*.

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "algebroid_mech/algebroid.hpp"

namespace algebroid_mech
{

/// Point of V* (q, p_1..p_{n-1}); p0 is set for evaluations on E*.
struct PhasePoint
{
  Vec q;
  Vec p;
  std::optional<double> p0;

  /// Packs (q, p) as the integrator state.
  Vec state() const;
  /// Packs (q, p0, p) as a point of E*. Throws UsageError without p0.
  Vec dualPoint() const;
  static PhasePoint fromState(const Vec& state, int m);
};

/// An adapted algebroid together with the local Hamiltonian H(q, p) of the section h,
/// so that F_h = p0 + H. H is evaluated on the packed vector (q, p).
class HamiltonianSystem
{
public:
  HamiltonianSystem(std::string name, SkewAlgebroid algebroid, ScalarField H,
                    std::map<std::string, double> params = {});

  const std::string& name() const noexcept { return name_; }
  const SkewAlgebroid& algebroid() const noexcept { return algebroid_; }
  const ScalarField& H() const noexcept { return H_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }

  int m() const noexcept { return algebroid_.dim(); }
  int n() const noexcept { return algebroid_.rank(); }
  /// Dimension of V* (m + n - 1).
  int stateDim() const noexcept { return m() + n() - 1; }

  double hamiltonian(const Vec& q, const Vec& p) const;
  /// (dH/dq, dH/dp) at (q, p).
  std::pair<Vec, Vec> gradients(const Vec& q, const Vec& p) const;

private:
  std::string name_;
  SkewAlgebroid algebroid_;
  ScalarField H_;
  std::map<std::string, double> params_;
};

/// Pi_{E*}(dF, dG) at x = (q, p0, p_1..p_{n-1}); F and G act on that packed vector.
double poisson_bracket_eval(const SkewAlgebroid& A, const ScalarField& F, const ScalarField& G,
                            const PhasePoint& x);

/// F_h = p0 + H(q, p). Throws UsageError when p0 is absent.
double f_h_eval(const HamiltonianSystem& sys, const PhasePoint& x);

/// F_h as a function on packed E* points.
ScalarField f_h_field(const HamiltonianSystem& sys);

/// Rates (qdot, pdot) of the Hamilton equations on the packed state (q, p).
Vec hamilton_rhs(const HamiltonianSystem& sys, double t, const Vec& state);
PhasePoint hamilton_rhs(const HamiltonianSystem& sys, double t, const PhasePoint& x);

Curve integrate_hamilton(const HamiltonianSystem& sys, const Vec& state0, double t0, double t1,
                         double dt);

/// {H o mu, F_h} = rho_0^i dH/dq^i + C_{0b}^c p_c dH/dp_b.
double dissipation_rate(const HamiltonianSystem& sys, const Vec& state);

/// (R_h^alpha)^i = rho_0^i + rho_a^i dH/dp_a(q, alpha(q)) for a section alpha of V*.
Vec projected_field(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q);

}  // namespace algebroid_mech
