#pragma once

// Ready-built mechanical systems with their known Hamilton-Jacobi sections and closed forms.

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebroid_mech/hamilton_jacobi.hpp"

namespace algebroid_mech
{

/// Angular velocity of the ball's table: Omega0 or Omega0 * t.
struct OmegaSpec
{
  enum class Kind
  {
    Constant,
    Linear
  };

  Kind kind = Kind::Constant;
  double omega0 = 1.0;

  double value(double t) const;
  double derivative(double t) const;
  /// Integral of Omega over [0, t].
  double integral(double t) const;
  std::string name() const;
  static OmegaSpec parse(const std::string& text, double omega0);
};

/// Closed-form solution evaluated at a real argument inside [lo, hi].
struct ReferenceSolution
{
  std::string argument;  ///< "t", "x" or "theta"
  std::string description;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  /// Reasons the closed form does not apply for the chosen parameters (empty when valid).
  std::string unavailable;
  std::function<Vec(double)> eval;
};

struct GallerySystem
{
  std::string id;
  std::map<std::string, double> params;
  std::optional<OmegaSpec> omega;
  HamiltonianSystem system;

  /// Sections of V* that solve the Hamilton-Jacobi equation on `box`.
  std::map<std::string, DualSection> sections;
  /// Sections of E* used by the dual residual.
  std::map<std::string, DualSection> dualSections;
  std::map<std::string, ReferenceSolution> solutions;

  Box box;
  std::vector<int> grid;
  Vec q0;
  double horizon = 1.0;
  double dt = 1e-3;

  /// Force of a force-extended system (the base is the V-part of `system`).
  std::optional<Homomorphism> force;
  /// Metric and auto-parallel field of the riemannian example.
  std::optional<MetricField> metric;
  std::map<std::string, VectorField> fields;
};

std::vector<std::string> gallery_ids();

/// Default parameters of a gallery id (UsageError for unknown ids).
std::map<std::string, double> default_params(const std::string& id);

/// Builds a gallery system. Unknown ids, unknown parameter names and non-positive
/// physical constants are usage errors. `omega` applies to rolling_ball only.
GallerySystem instantiate(const std::string& id, const std::map<std::string, double>& params = {},
                          std::optional<OmegaSpec> omega = std::nullopt);

/// Evaluates a named closed form; DomainError outside its validity range.
Vec reference_solution(const GallerySystem& gs, const std::string& name, double arg);

const DualSection& gallery_section(const GallerySystem& gs, const std::string& name);

/// The ball's unreduced Hamilton equations on (t, q1, q2, p1, p2, pi1, pi2, pi3).
Vec ball_unreduced_rhs(const GallerySystem& ball, const Vec& state);

/// Constraint functions (psi1, psi2) on the unreduced state.
Vec ball_constraints(const GallerySystem& ball, const Vec& state);

/// Maps a reduced state (t, q1, q2, pbar3, pbar4, pbar5) to the unreduced state.
Vec ball_unreduce(const GallerySystem& ball, const Vec& reduced);

}  // namespace algebroid_mech
