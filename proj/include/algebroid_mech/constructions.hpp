#pragma once

// Builders for algebroids with cocycles: force extension, projector restriction and
// affine constraints, plus numerical checks of hamiltonian morphisms.

#include <array>
#include <functional>
#include <vector>

#include "algebroid_mech/hamiltonian.hpp"

namespace algebroid_mech
{

/// Vector bundle endomorphism field; matrix(q)(a, b) = F_a^b, i.e. F(e_a) = F_a^b e_b.
struct Homomorphism
{
  std::function<Mat(const Vec&)> matrix;

  Mat operator()(const Vec& q) const { return matrix(q); }
  static Homomorphism constant(const Mat& value);
  static Homomorphism zero(int rank);
};

/// Symmetric bundle metric G_{ab}(q).
struct MetricField
{
  std::function<Mat(const Vec&)> matrix;

  Mat operator()(const Vec& q) const { return matrix(q); }
  static MetricField constant(const Mat& value);
};

/// Vector bundle morphism between duals: base map and fiber map on packed (q, p0, p) points.
struct MorphismPair
{
  std::function<Vec(const Vec&)> base;
  /// Maps the full covector (p0, p_1, ...) over q to the covector over base(q).
  std::function<Vec(const Vec& q, const Vec& covector)> fiber;

  /// Packed image point (base(q), fiber(q, covector)).
  Vec apply(const Vec& packed, int m) const;
  static MorphismPair identity();
};

/// R x E-bar with [[e_0, e_a]] = -F_a^b e_b, rho(e_0) = 0 and the base bracket otherwise.
SkewAlgebroid force_extension(const SkewAlgebroid& base, const Homomorphism& F);

/// Restriction to D = span(D_basis) with [[s, g]]_D = P([[s, g]]) and rho_D = rho o i_D.
/// P(q, v) returns D-coordinates of an E-vector v. Throws ConstructionError when P o i_D
/// differs from the identity by more than 1e-9 at a validation sample.
SkewAlgebroid projector_restriction(const SkewAlgebroid& E, const std::vector<ESection>& D_basis,
                                    std::function<Vec(const Vec&, const Vec&)> P,
                                    bool adapted = false);

/// Upper-triangular coefficients K with e-bar_j = sum_i basis_i K(i, j) G-orthonormal.
/// Modified Gram-Schmidt with one re-orthogonalization pass.
Mat gram_schmidt_at(const MetricField& G, const std::vector<ESection>& basis, const Vec& q);
Mat gram_schmidt_at(const Mat& G, const Mat& basisColumns);

struct AffineOptions
{
  /// Cache structure functions keyed by q quantized to 1e-9 (safe under parallel sweeps).
  bool memoize = false;
  std::string name = "affine";
  std::map<std::string, double> params;
};

/// Hamiltonian system on U-tilde = span{(1, X0), (0, e-bar_a)} with H = 1/2 sum p_a^2 + V.
/// Throws ConstructionError when P(X0) != 0 and DegenerateMetricError on a degenerate frame.
HamiltonianSystem affine_constraints(const SkewAlgebroid& E, const MetricField& G,
                                     const std::vector<ESection>& U_basis, const ESection& X0,
                                     const ScalarField& V, const AffineOptions& options = {});

/// Almost-Poisson condition on the probe family {base coordinates, fiber coordinates}.
/// `box` samples packed source points (q, p0, p).
CheckReport poisson_morphism_check(const SkewAlgebroid& src, const SkewAlgebroid& dst,
                                   const MorphismPair& map, const Box& box, int samples = 128,
                                   std::uint64_t seed = 42, double tol = 1e-6);

/// Reports for (1) almost-Poisson morphism, (2) Psi(phi) = phi-bar, (3) F_hbar o Psi = F_h.
std::array<CheckReport, 3> morphism_check(const HamiltonianSystem& src,
                                          const HamiltonianSystem& dst, const MorphismPair& map,
                                          const Box& box, int samples = 128,
                                          std::uint64_t seed = 42, double tol = 1e-6);

}  // namespace algebroid_mech
