#pragma once

// Hamilton-Jacobi residuals, the lift theorem check and the auto-parallel residual.

#include <utility>
#include <vector>

#include "algebroid_mech/constructions.hpp"
#include "algebroid_mech/errors.hpp"

namespace algebroid_mech
{

struct HJReport
{
  std::vector<std::pair<Vec, Vec>> residual_grid;
  double max_norm = 0.0;
  double tol = 0.0;
  bool pass = true;
  /// Up to five grid points with the largest residual norm.
  std::vector<Witness> worst;
};

struct LiftReport
{
  Curve base_curve;
  Curve lifted_curve;
  Curve hamilton_curve;
  /// Sup-norm gap between lifted and hamilton states at each time.
  std::vector<double> deviations;
  double max_deviation = 0.0;
  double tol = 0.0;
  bool pass = true;
  /// Set when integration stopped early.
  std::string failure;
};

/// Integration failure during verify_lift; carries the curves up to the last good time.
class LiftFailure : public NumericFailure
{
public:
  LiftFailure(const std::string& what, double lastGoodTime, LiftReport partial)
    : NumericFailure(what, lastGoodTime), partial_(std::move(partial))
  {
  }

  const LiftReport& partial() const noexcept { return partial_; }

private:
  LiftReport partial_;
};

/// zeta = e_0 + dH/dp_a(q, alpha(q)) e_a.
Vec zeta_eval(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q);

/// Transport of alpha along R_h^alpha minus the momentum rates at p = alpha(q).
Vec hj_residual(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q);

/// Component a: d^E beta(zeta, e_a) + rho_a(F_h o beta), zeta built from the V-part of beta.
Vec hj_residual_dual(const HamiltonianSystem& sys, const DualSection& beta, const Vec& q);

/// h o alpha = (-H(q, alpha(q)), alpha(q)) as a section of E*.
DualSection lift_to_dual(const HamiltonianSystem& sys, const DualSection& alpha);

/// Component a: d^Ebar alpha(zeta, e_a) + rho_a(H o alpha) + F_a^b alpha_b on the base of a
/// force extension.
Vec hj_forced_residual(const HamiltonianSystem& extended, const Homomorphism& F,
                       const DualSection& alpha, const Vec& q);

/// Residual sup-norms over a tensor grid; evaluated in parallel, reduced in grid order.
HJReport hj_grid_check(const std::function<Vec(const Vec&)>& residual, const Box& box,
                       const std::vector<int>& perAxis, double tol);
HJReport hj_grid_check(const HamiltonianSystem& sys, const DualSection& alpha, const Box& box,
                       const std::vector<int>& perAxis, double tol);

/// Integrates the base curve of R_h^alpha from q0 and the Hamilton flow from (q0, alpha(q0))
/// on the same grid, and compares (c, alpha o c) with the flow.
LiftReport verify_lift(const HamiltonianSystem& sys, const DualSection& alpha, const Vec& q0,
                       double t0, double t1, double dt, double tol);

/// Christoffel symbols Gamma^k_{ij} of the Levi-Civita connection, entry [k](i, j).
std::vector<Mat> christoffel(const MetricField& G, const Vec& q);

/// X^i d_i X^k + Gamma^k_{ij} X^i X^j. DomainError when G(q) is not positive definite.
Vec autoparallel_residual(const MetricField& G, const VectorField& X, const Vec& q);

}  // namespace algebroid_mech
