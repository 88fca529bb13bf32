#pragma once

// Skew-symmetric algebroids in a fixed global frame over one chart.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algebroid_mech/chart.hpp"

namespace algebroid_mech
{

/// Structure functions C_{ab}^c at one point. Only a < b is stored; the
/// antisymmetric half is read back with a sign flip.
class StructureTensor
{
public:
  StructureTensor() = default;
  explicit StructureTensor(int rank);

  int rank() const noexcept { return rank_; }
  double operator()(int a, int b, int c) const;
  /// Sets C_{ab}^c (and thereby C_{ba}^c = -value). Setting a == b is a usage error.
  void set(int a, int b, int c, double value);
  void add(int a, int b, int c, double value);
  /// Largest absolute stored coefficient with upper index c.
  double maxUpper(int c) const;

private:
  std::size_t slot(int a, int b, int c) const;

  int rank_ = 0;
  std::vector<double> data_;
};

using AnchorFn = std::function<Mat(const Vec&)>;
using StructureFn = std::function<StructureTensor(const Vec&)>;

/// Sections of E are vector fields with one component per basis element.
using ESection = VectorField;

enum class DualSpace
{
  EStar,
  VStar
};

/// Section of E* (n components) or of V* (n-1 components, basis e^1..e^{n-1}).
struct DualSection
{
  VectorField field;
  DualSpace space = DualSpace::EStar;

  Vec operator()(const Vec& q) const { return field.eval(q); }
};

struct Witness
{
  Vec q;
  double value = 0.0;
};

/// Outcome of a sampled check. pass <=> max_violation <= tol.
struct CheckReport
{
  std::string name;
  double max_violation = 0.0;
  double tol = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  bool pass = true;
  std::vector<Witness> witnesses;
};

/// Keeps the five largest violations; finalize() sets max_violation and pass.
class WitnessCollector
{
public:
  void offer(const Vec& q, double value);
  void finalize(CheckReport& report) const;

private:
  std::vector<Witness> worst_;
  double max_ = 0.0;
};

/// A skew-symmetric algebroid E -> Q of rank n with a global frame {e_0, ..., e_{n-1}}.
///
/// The anchor returns the m x n matrix whose column a holds rho(e_a). When `adapted`
/// holds, e_0 is dual to the distinguished 1-cocycle and the constructor verifies
/// C_{ab}^0 = 0 on the validation samples (tolerance 1e-9).
class SkewAlgebroid
{
public:
  SkewAlgebroid(std::string name, Chart chart, int rank, AnchorFn anchor, StructureFn structure,
                bool adapted, std::optional<Box> validationBox = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  const Chart& chart() const noexcept { return chart_; }
  int dim() const noexcept { return chart_.dim(); }
  int rank() const noexcept { return rank_; }
  bool adapted() const noexcept { return adapted_; }
  const Box& validationBox() const noexcept { return validationBox_; }

  Mat anchor(const Vec& q) const;
  StructureTensor structure(const Vec& q) const;

  const AnchorFn& anchorFn() const noexcept { return anchor_; }
  const StructureFn& structureFn() const noexcept { return structure_; }

private:
  std::string name_;
  Chart chart_;
  int rank_;
  AnchorFn anchor_;
  StructureFn structure_;
  bool adapted_;
  Box validationBox_;
};

/// Tangent algebroid TQ in the coordinate frame. Adapted iff `firstCoordinateIsCocycle`
/// (the frame vector d/dq^1 is dual to dq^1, which is closed).
SkewAlgebroid tangent_algebroid(const Chart& chart, bool firstCoordinateIsCocycle = false,
                                std::optional<Box> validationBox = std::nullopt);

/// V = ker(phi) as an algebroid of rank n-1 (frame e_1..e_{n-1}). Requires an adapted input.
SkewAlgebroid v_subalgebroid(const SkewAlgebroid& adapted);

/// Constant section e_index.
ESection basis_section(int rank, int index);

/// Constant dual section e^index.
DualSection basis_dual(int rank, int index);

/// rho(sigma(q)).
Vec anchor_apply(const SkewAlgebroid& A, const ESection& sigma, const Vec& q);

/// [[sigma, gamma]]^c = C_{ab}^c sigma^a gamma^b + rho(sigma)(gamma^c) - rho(gamma)(sigma^c).
Vec bracket_at(const SkewAlgebroid& A, const ESection& sigma, const ESection& gamma,
               const Vec& q);

/// Same formula from point values and n x m Jacobians of the two sections.
Vec bracket_from_jets(const Mat& anchor, const StructureTensor& C, const Vec& sigma,
                      const Mat& jacSigma, const Vec& gamma, const Mat& jacGamma);

ESection bracket(const SkewAlgebroid& A, const ESection& sigma, const ESection& gamma);

/// (d^E f)_a = rho_a^i df/dq^i.
DualSection d_function(const SkewAlgebroid& A, const ScalarField& f);

/// d^E alpha(sigma, gamma) = rho(sigma)(alpha(gamma)) - rho(gamma)(alpha(sigma)) - alpha([[sigma,gamma]]).
double d_oneform_eval(const SkewAlgebroid& A, const DualSection& alpha, const ESection& sigma,
                      const ESection& gamma, const Vec& q);

/// Frame components D(a, b) = d^E alpha(e_a, e_b) at q (antisymmetric n x n).
Mat d_oneform_components(const SkewAlgebroid& A, const DualSection& alpha, const Vec& q);

/// Max over samples and frame pairs of |d^E phi(e_a, e_b)|.
CheckReport check_cocycle(const SkewAlgebroid& A, const DualSection& phi, const Box& box,
                          int samples = 128, std::uint64_t seed = 42, double tol = 1e-9);

/// Ranks of D, D^2, ..., D^maxDepth where D is spanned by the given vector fields and
/// D^{r+1} = D^r + [D, D^r]. Singular-value rank with threshold 1e-8 sigma_max.
std::vector<int> flag_rank_of_fields(const std::vector<std::function<Vec(const Vec&)>>& fields,
                                     const Vec& q, int maxDepth);

/// Flag ranks of the distribution spanned by all anchor columns of A.
std::vector<int> flag_rank(const SkewAlgebroid& A, const Vec& q, int maxDepth);

/// Numerical rank with the relative threshold used by flag_rank.
int numeric_rank(const Mat& columns, double relTol = 1e-8);

}  // namespace algebroid_mech
