#pragma once

// Coordinate-chart numerics: fields, finite differences, fixed-step RK4.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace algebroid_mech
{

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A single coordinate chart. Periodic coordinates are stored unwrapped.
class Chart
{
public:
  Chart() = default;
  Chart(std::vector<std::string> coordNames, std::vector<bool> periodic = {});

  int dim() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& coordNames() const noexcept { return names_; }
  const std::vector<bool>& periodic() const noexcept { return periodic_; }

  /// Wrap periodic coordinates into (-pi, pi]; used only for display.
  Vec wrapForDisplay(const Vec& q) const;

private:
  std::vector<std::string> names_;
  std::vector<bool> periodic_;
};

/// Axis-aligned sampling region.
struct Box
{
  Vec lo;
  Vec hi;

  int dim() const noexcept { return static_cast<int>(lo.size()); }
  static Box cube(int dim, double lo, double hi);
  /// Throws UsageError when dimensions disagree or some side is inverted.
  void validate() const;
};

/// Smooth real function on a chart. `grad` is optional; when present it is trusted.
struct ScalarField
{
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;

  double operator()(const Vec& q) const { return eval(q); }
  bool hasGrad() const noexcept { return static_cast<bool>(grad); }
};

/// Vector-valued field with optional analytic Jacobian (rows = outputs, cols = inputs).
struct VectorField
{
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> jacobian;

  Vec operator()(const Vec& q) const { return eval(q); }
  bool hasJacobian() const noexcept { return static_cast<bool>(jacobian); }
};

/// Time-stamped samples of a trajectory.
struct Curve
{
  std::vector<double> times;
  std::vector<Vec> points;

  std::size_t size() const noexcept { return times.size(); }
  const Vec& back() const { return points.back(); }
};

/// Default central-difference step for coordinate i.
double fdStep(double qi) noexcept;

/// Central-difference gradient; defers to f.grad when supplied.
/// `h` overrides the per-component step (absolute).
Vec fd_gradient(const ScalarField& f, const Vec& q, std::optional<double> h = std::nullopt);

/// Central-difference gradient of a bare procedure.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& q,
                std::optional<double> h = std::nullopt);

/// Central-difference Jacobian of a bare procedure.
Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& q,
                std::optional<double> h = std::nullopt);

/// Jacobian of a VectorField (analytic when supplied).
Mat jacobian(const VectorField& f, const Vec& q);

using OdeRhs = std::function<Vec(double, const Vec&)>;

/// Classical RK4 from t0 to t1. The last step is shortened to land on t1.
Curve integrate_rk4(const OdeRhs& rhs, const Vec& x0, double t0, double t1, double dt);

/// Deterministic uniform samples in a box.
std::vector<Vec> sample_box(const Box& box, int count, std::uint64_t seed);

/// Tensor grid, endpoints included. Throws UsageError when the point count exceeds `cap`
/// or some axis has fewer than two points.
std::vector<Vec> grid_box(const Box& box, const std::vector<int>& perAxis,
                          std::size_t cap = 100000);
std::vector<Vec> grid_box(const Box& box, int perAxis, std::size_t cap = 100000);

bool allFinite(const Vec& v) noexcept;

}  // namespace algebroid_mech
