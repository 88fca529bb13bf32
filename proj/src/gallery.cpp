#include "algebroid_mech/gallery.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "algebroid_mech/errors.hpp"
#include "algebroid_mech/lambert_w.hpp"

namespace algebroid_mech
{

using std::numbers::pi;

double OmegaSpec::value(double t) const
{
  return kind == Kind::Constant ? omega0 : omega0 * t;
}

double OmegaSpec::derivative(double) const
{
  return kind == Kind::Constant ? 0.0 : omega0;
}

double OmegaSpec::integral(double t) const
{
  return kind == Kind::Constant ? omega0 * t : 0.5 * omega0 * t * t;
}

std::string OmegaSpec::name() const
{
  return kind == Kind::Constant ? "constant" : "linear";
}

OmegaSpec OmegaSpec::parse(const std::string& text, double omega0)
{
  if (text == "constant")
  {
    return OmegaSpec{Kind::Constant, omega0};
  }
  if (text == "linear")
  {
    return OmegaSpec{Kind::Linear, omega0};
  }
  throw UsageError("unknown Omega specification '" + text + "' (expected constant or linear)");
}

namespace
{

const std::map<std::string, std::map<std::string, double>>& defaultsTable()
{
  static const std::map<std::string, std::map<std::string, double>> table = {
      {"cylinder_friction",
       {{"m", 1.0}, {"r", 1.0}, {"g", 1.0}, {"K1", 1.0}, {"K2", 1.0}, {"C1", 0.0}, {"C2", 0.0},
        {"branch", -1.0}}},
      {"three_body_drag",
       {{"mu", 0.2},
        {"k", 0.1},
        {"s_xx", 0.3},
        {"s_xy", -0.2},
        {"s_yy", 0.5},
        {"s_x", 0.1},
        {"s_y", -0.4}}},
      {"rolling_ball",
       {{"m", 1.0}, {"r", 1.0}, {"k", 1.0}, {"Omega0", 1.0}, {"C1", 1.0}, {"C2", 0.0}}},
      {"vertical_disk",
       {{"m", 1.0},
        {"I", 1.0},
        {"J", 1.0},
        {"R", 1.0},
        {"K", 1.0},
        {"k", 1.0},
        {"kappa", 0.0},
        {"phi0", 0.3},
        {"x0", 0.0},
        {"y0", 0.0},
        {"theta0", 0.0}}},
      {"time_dependent_free", {{"t_start", 0.5}, {"q_start", 1.0}}},
      {"riemannian_flat", {{"r0", 1.0}, {"theta0", 0.5}}},
  };
  return table;
}

const std::map<std::string, std::vector<std::string>>& positiveTable()
{
  static const std::map<std::string, std::vector<std::string>> table = {
      {"cylinder_friction", {"m", "r", "g"}},
      {"three_body_drag", {"mu"}},
      {"rolling_ball", {"m", "r", "k"}},
      {"vertical_disk", {"m", "I", "J", "R"}},
      {"time_dependent_free", {"t_start"}},
      {"riemannian_flat", {"r0"}},
  };
  return table;
}

std::map<std::string, double> resolveParams(const std::string& id,
                                            const std::map<std::string, double>& given)
{
  std::map<std::string, double> params = default_params(id);
  for (const auto& [name, value] : given)
  {
    if (params.find(name) == params.end())
    {
      throw UsageError("unknown parameter '" + name + "' for gallery system " + id);
    }
    if (!std::isfinite(value))
    {
      throw UsageError("parameter '" + name + "' must be finite");
    }
    params[name] = value;
  }
  for (const std::string& name : positiveTable().at(id))
  {
    if (!(params.at(name) > 0.0))
    {
      throw UsageError("parameter '" + name + "' of " + id + " must be positive");
    }
  }
  return params;
}

ScalarField quadraticKinetic(int m, const Vec& weights)
{
  ScalarField H;
  H.eval = [m, weights](const Vec& x) {
    const Vec p = x.tail(x.size() - m);
    return 0.5 * p.cwiseProduct(p).dot(weights);
  };
  H.grad = [m, weights](const Vec& x) -> Vec {
    Vec g = Vec::Zero(x.size());
    g.tail(x.size() - m) = x.tail(x.size() - m).cwiseProduct(weights);
    return g;
  };
  return H;
}

DualSection vstar(std::function<Vec(const Vec&)> eval, std::function<Mat(const Vec&)> jac)
{
  return DualSection{VectorField{std::move(eval), std::move(jac)}, DualSpace::VStar};
}

DualSection estar(std::function<Vec(const Vec&)> eval, std::function<Mat(const Vec&)> jac)
{
  return DualSection{VectorField{std::move(eval), std::move(jac)}, DualSpace::EStar};
}

Vec vec2(double a, double b)
{
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec3(double a, double b, double c)
{
  Vec v(3);
  v << a, b, c;
  return v;
}

Box makeBox(std::initializer_list<double> lo, std::initializer_list<double> hi)
{
  Box b;
  b.lo = Eigen::Map<const Vec>(lo.begin(), static_cast<Eigen::Index>(lo.size()));
  b.hi = Eigen::Map<const Vec>(hi.begin(), static_cast<Eigen::Index>(hi.size()));
  return b;
}

GallerySystem buildDisk(const std::map<std::string, double>& p)
{
  const double m = p.at("m");
  const double I = p.at("I");
  const double J = p.at("J");
  const double R = p.at("R");
  const double K = p.at("K");
  const double k = p.at("k");
  const double kappa = p.at("kappa");
  const double phi0 = p.at("phi0");
  const double x0 = p.at("x0");
  const double y0 = p.at("y0");
  const double theta0 = p.at("theta0");
  const double sr = std::sqrt(m * R * R + I);
  const double sj = std::sqrt(J);

  const Box box = makeBox({-1.0, -1.0, -pi, -pi}, {1.0, 1.0, pi, pi});
  const Chart chart({"x", "y", "theta", "phi"}, {false, false, true, true});
  const SkewAlgebroid TQ = tangent_algebroid(chart, false, box);

  ESection X1;
  X1.eval = [R, sr](const Vec& q) -> Vec {
    Vec v(4);
    v << R * std::cos(q[3]) / sr, R * std::sin(q[3]) / sr, 1.0 / sr, 0.0;
    return v;
  };
  X1.jacobian = [R, sr](const Vec& q) -> Mat {
    Mat j = Mat::Zero(4, 4);
    j(0, 3) = -R * std::sin(q[3]) / sr;
    j(1, 3) = R * std::cos(q[3]) / sr;
    return j;
  };
  ESection X2;
  X2.eval = [sj](const Vec&) -> Vec { return Vec::Unit(4, 3) / sj; };
  X2.jacobian = [](const Vec&) -> Mat { return Mat::Zero(4, 4); };

  const Vec metricDiag = (Vec(4) << m, m, I, J).finished();
  auto projector = [X1, X2, metricDiag](const Vec& q, const Vec& v) -> Vec {
    const Vec gv = metricDiag.cwiseProduct(v);
    return vec2(X1(q).dot(gv), X2(q).dot(gv));
  };
  const SkewAlgebroid D = projector_restriction(TQ, {X1, X2}, projector);

  const Homomorphism force{[K, J](const Vec& q) -> Mat {
    Mat f = Mat::Zero(2, 2);
    f(1, 1) = K * std::cos(q[3]) / J;
    return f;
  }};
  SkewAlgebroid ext = force_extension(D, force);
  HamiltonianSystem sys("vertical_disk", ext, quadraticKinetic(4, Vec::Ones(2)), p);

  GallerySystem gs{"vertical_disk", p, std::nullopt, sys, {}, {}, {}, box, {11, 11, 11, 11},
                   Vec(), 5.0, 1e-3, force, std::nullopt, {}};

  gs.sections.emplace(
      "reference",
      vstar(
          [k, K, sj, kappa](const Vec& q) { return vec2(k, -K / sj * std::sin(q[3]) + kappa); },
          [K, sj](const Vec& q) -> Mat {
            Mat j = Mat::Zero(2, 4);
            j(1, 3) = -K / sj * std::cos(q[3]);
            return j;
          }));

  const double c = R * k / sr;
  auto trajectory = [=](double t) -> Vec {
    const double s = -K / J * t + phi0;
    const double phi = 2.0 * std::atan(std::exp(s));
    Vec out(6);
    out << c * (t + J / K * std::log1p(std::exp(2.0 * s))) + x0, -J / K * c * phi + y0,
        k * t / sr + theta0, phi, k, -K / sj * std::sin(phi);
    return out;
  };
  std::string unavailable;
  if (kappa != 0.0)
  {
    unavailable = "closed forms assume kappa = 0";
  }
  if (K == 0.0)
  {
    unavailable = "closed forms assume K != 0";
  }
  gs.solutions["trajectory"] =
      ReferenceSolution{"t", "(x, y, theta, phi, p1, p2) along alpha o c",
                        -std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), unavailable, trajectory};
  gs.solutions["phi"] = ReferenceSolution{
      "t", "phi(t) = 2 arctan(exp(-K t / J + phi0))", -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(), K == 0.0 ? "closed forms assume K != 0" : "",
      [=](double t) -> Vec { return Vec::Constant(1, 2.0 * std::atan(std::exp(-K / J * t + phi0))); }};

  if (unavailable.empty())
  {
    gs.q0 = trajectory(0.0).head(4);
  }
  else
  {
    gs.q0 = (Vec(4) << x0, y0, theta0, 2.0 * std::atan(std::exp(phi0))).finished();
  }
  return gs;
}

GallerySystem buildBall(const std::map<std::string, double>& p, const OmegaSpec& omega)
{
  const double m = p.at("m");
  const double r = p.at("r");
  const double k = p.at("k");
  const double C1 = p.at("C1");
  const double C2 = p.at("C2");
  const double s = std::sqrt(m * (k * k + r * r));
  const double ratio = r * r / (k * k + r * r);

  const Box box = makeBox({0.0, -2.0, -2.0}, {2.0 * pi, 2.0, 2.0});
  const Chart chart({"t", "q1", "q2"});

  auto anchor = [omega](const Vec& q) -> Mat {
    Mat rho = Mat::Zero(3, 6);
    const double w = omega.value(q[0]);
    rho(0, 0) = 1.0;
    rho(1, 0) = -w * q[2];
    rho(2, 0) = w * q[1];
    rho(1, 1) = 1.0;
    rho(2, 2) = 1.0;
    return rho;
  };
  auto structure = [omega](const Vec& q) {
    StructureTensor c(6);
    const double w = omega.value(q[0]);
    c.set(0, 1, 2, -w);
    c.set(0, 2, 1, w);
    c.set(3, 4, 5, 1.0);
    c.set(4, 5, 3, 1.0);
    c.set(5, 3, 4, 1.0);
    return c;
  };
  const SkewAlgebroid E("ball.E", chart, 6, anchor, structure, false, box);

  const Vec metricDiag = (Vec(6) << 1.0, m, m, m * k * k, m * k * k, m * k * k).finished();
  const MetricField G = MetricField::constant(metricDiag.asDiagonal().toDenseMatrix());

  auto constantSection = [](Vec v) {
    ESection sec;
    sec.eval = [v](const Vec&) { return v; };
    sec.jacobian = [n = v.size()](const Vec& q) -> Mat { return Mat::Zero(n, q.size()); };
    return sec;
  };
  Vec u3 = Vec::Zero(6);
  u3[3] = 1.0;
  u3[2] = -r;
  Vec u4 = Vec::Zero(6);
  u4[4] = 1.0;
  u4[1] = r;
  const std::vector<ESection> U{constantSection(u3), constantSection(u4),
                                constantSection(Vec::Unit(6, 5))};
  const ESection X0 = constantSection(Vec::Unit(6, 0));

  ScalarField V;
  V.eval = [](const Vec&) { return 0.0; };
  V.grad = [](const Vec& q) -> Vec { return Vec::Zero(q.size()); };

  AffineOptions opts;
  opts.name = "rolling_ball";
  opts.params = p;
  HamiltonianSystem sys = affine_constraints(E, G, U, X0, V, opts);

  GallerySystem gs{"rolling_ball", p, omega, sys, {}, {}, {}, box, {11, 11, 11},
                   Vec(), 10.0, 1e-3, std::nullopt, std::nullopt, {}};

  // phi(t) = rotation of (C1, C2) by the angle ratio * int_0^t Omega.
  auto phase = [omega, ratio](double t) { return ratio * omega.integral(t); };
  auto phiAt = [phase, C1, C2](double t) {
    const double a = phase(t);
    return vec2(C1 * std::cos(a) - C2 * std::sin(a), C1 * std::sin(a) + C2 * std::cos(a));
  };
  gs.sections.emplace(
      "reference",
      vstar(
          [phiAt, r, s](const Vec& q) {
            const Vec f = phiAt(q[0]);
            return vec3(-r / s * f[1], r / s * f[0], 0.0);
          },
          [phiAt, omega, ratio, r, s](const Vec& q) -> Mat {
            const Vec f = phiAt(q[0]);
            const double rate = ratio * omega.value(q[0]);
            Mat j = Mat::Zero(3, 3);
            j(0, 0) = -r / s * rate * f[0];
            j(1, 0) = -r / s * rate * f[1];
            return j;
          }));

  gs.solutions["phi"] = ReferenceSolution{
      "t", "(phi1, phi2) solving the Hamilton-Jacobi system", -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(), "", phiAt};
  gs.solutions["alpha"] = ReferenceSolution{
      "t", "(alpha3, alpha4) along alpha o c", -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(), "", [phase, C1, C2, r, s](double t) {
        const double a = phase(t);
        return vec2(-r / s * (C1 * std::sin(a) + C2 * std::cos(a)),
                    r / s * (C1 * std::cos(a) - C2 * std::sin(a)));
      }};

  // For constant Omega, q(t) is a circle about the origin when it starts at the
  // particular solution R(wt) a with (w - Omega) J a = c phi(0).
  Vec q0 = vec3(0.0, 0.0, 1.0);
  if (omega.kind == OmegaSpec::Kind::Constant)
  {
    const double w = ratio * omega.omega0;
    const double c = r * r / (m * (k * k + r * r));
    if (std::abs(w - omega.omega0) > 1e-12)
    {
      const Vec f0 = phiAt(0.0);
      // a = -J c f0 / (w - Omega) with J(x, y) = (-y, x)
      q0[1] = c * f0[1] / (w - omega.omega0);
      q0[2] = -c * f0[0] / (w - omega.omega0);
    }
  }
  gs.q0 = q0;
  return gs;
}

GallerySystem buildCylinder(const std::map<std::string, double>& p)
{
  const double m = p.at("m");
  const double r = p.at("r");
  const double g = p.at("g");
  const double K1 = p.at("K1");
  const double K2 = p.at("K2");
  const double C1 = p.at("C1");
  const double C2 = p.at("C2");
  const double branch = p.at("branch") < 0.0 ? -1.0 : 1.0;

  const double xMax = K1 != 0.0 ? C2 / m + g * std::log(g * m) / (K1 * K1) : C2 / (g * m * m);
  const Box box = makeBox({xMax - 4.0, -pi}, {xMax - 0.1, pi});
  const Chart chart({"x", "theta"}, {false, true});
  const SkewAlgebroid TQ = tangent_algebroid(chart, false, box);
  const Homomorphism force =
      Homomorphism::constant((Mat(2, 2) << K1, 0.0, 0.0, K2).finished());
  const SkewAlgebroid ext = force_extension(TQ, force);

  ScalarField H;
  H.eval = [m, r, g](const Vec& x) {
    return x[2] * x[2] / (2.0 * m) + x[3] * x[3] / (2.0 * m * r * r) + m * g * x[0];
  };
  H.grad = [m, r, g](const Vec& x) -> Vec {
    Vec d(4);
    d << m * g, 0.0, x[2] / m, x[3] / (m * r * r);
    return d;
  };
  HamiltonianSystem sys("cylinder_friction", ext, H, p);

  GallerySystem gs{"cylinder_friction", p, std::nullopt, sys, {}, {}, {}, box, {11, 11},
                   vec2(xMax - 1.0, 0.5), 5.0, 1e-3, force, std::nullopt, {}};

  // S1'(x) from the Lambert W closed form (K1 != 0) or the square-root branch (K1 = 0).
  auto dS1 = [=](double x) {
    if (x > xMax)
    {
      std::ostringstream msg;
      msg.precision(17);
      msg << "x = " << x << " lies outside the domain x <= " << xMax;
      throw DomainError(msg.str());
    }
    if (K1 != 0.0)
    {
      // z >= -1/e on x <= x_max; the clamp only absorbs rounding at the endpoint.
      const double z = std::max(
          -std::exp(-1.0 + K1 * K1 * x / g - K1 * K1 * C2 / (g * m)) / (g * m),
          -1.0 / std::numbers::e);
      return (-g * m - g * m * lambert_w0(z)) / K1;
    }
    return branch * std::sqrt(2.0) * std::sqrt(-g * m * m * x + C2);
  };
  // Derivative of the closed form itself: W'(z) = W / (z (1 + W)) and dz/dx = (K1^2 / g) z.
  auto ddS1 = [=](double x) {
    if (K1 != 0.0)
    {
      const double z =
          -std::exp(-1.0 + K1 * K1 * x / g - K1 * K1 * C2 / (g * m)) / (g * m);
      const double w = lambert_w0(z);
      return -m * K1 * w / (1.0 + w);
    }
    return -branch * g * m * m / (std::sqrt(2.0) * std::sqrt(-g * m * m * x + C2));
  };

  for (const bool withS2 : {true, false})
  {
    const double s2 = withS2 ? -K2 * m * r * r : 0.0;
    gs.sections.emplace(withS2 ? "reference" : "reference_s2_zero",
                        vstar([dS1, s2](const Vec& q) { return vec2(dS1(q[0]), s2 * q[1]); },
                              [dS1, ddS1, s2](const Vec& q) -> Mat {
                                Mat j = Mat::Zero(2, 2);
                                j(0, 0) = ddS1(q[0]);
                                j(1, 1) = s2;
                                return j;
                              }));
  }

  gs.solutions["S1_prime"] = ReferenceSolution{
      "x", "dS1/dx on x <= x_max", -std::numeric_limits<double>::infinity(), xMax, "",
      [dS1](double x) { return Vec::Constant(1, dS1(x)); }};
  gs.solutions["S2"] = ReferenceSolution{
      "theta", "S2(theta) = -K2 m r^2 theta^2 / 2 + C1", -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(), "",
      [=](double th) { return Vec::Constant(1, -0.5 * K2 * m * r * r * th * th + C1); }};
  gs.solutions["S2_prime"] = ReferenceSolution{
      "theta", "dS2/dtheta = -K2 m r^2 theta", -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(), "",
      [=](double th) { return Vec::Constant(1, -K2 * m * r * r * th); }};
  return gs;
}

GallerySystem buildThreeBody(const std::map<std::string, double>& p)
{
  const double mu = p.at("mu");
  if (!(mu < 1.0))
  {
    throw UsageError("parameter 'mu' of three_body_drag must lie in (0, 1)");
  }
  const double mu1 = 1.0 - mu;
  const double mu2 = mu;
  const double k = p.at("k");
  const double sxx = p.at("s_xx");
  const double sxy = p.at("s_xy");
  const double syy = p.at("s_yy");
  const double sx = p.at("s_x");
  const double sy = p.at("s_y");

  const Box box = makeBox({-1.5, 0.25}, {1.5, 1.5});
  const Chart chart({"x", "y"});
  const SkewAlgebroid TQ = tangent_algebroid(chart, false, box);
  const Homomorphism force = Homomorphism::constant(k * Mat::Identity(2, 2));
  const SkewAlgebroid ext = force_extension(TQ, force);

  auto potentialGrad = [mu1, mu2](double x, double y) {
    const double r1 = std::hypot(x + mu2, y);
    const double r2 = std::hypot(x - mu1, y);
    const double u = mu1 / r1 + mu2 / r2;
    const double r13 = r1 * r1 * r1;
    const double r23 = r2 * r2 * r2;
    return vec3(u, -mu1 * (x + mu2) / r13 - mu2 * (x - mu1) / r23,
                -mu1 * y / r13 - mu2 * y / r23);
  };
  ScalarField H;
  H.eval = [potentialGrad](const Vec& v) {
    const double x = v[0], y = v[1], px = v[2], py = v[3];
    return 0.5 * px * px + 0.5 * py * py + y * px - x * py + potentialGrad(x, y)[0];
  };
  H.grad = [potentialGrad](const Vec& v) -> Vec {
    const double x = v[0], y = v[1], px = v[2], py = v[3];
    const Vec u = potentialGrad(x, y);
    Vec d(4);
    d << -py + u[1], px + u[2], px + y, py - x;
    return d;
  };
  HamiltonianSystem sys("three_body_drag", ext, H, p);

  GallerySystem gs{"three_body_drag", p, std::nullopt, sys, {}, {}, {}, box, {11, 11},
                   vec2(0.5, 0.8), 1.0, 1e-3, force, std::nullopt, {}};

  auto S = [=](const Vec& q) {
    return sxx * q[0] * q[0] + sxy * q[0] * q[1] + syy * q[1] * q[1] + sx * q[0] + sy * q[1];
  };
  auto dS = [=](const Vec& q) {
    return vec2(2.0 * sxx * q[0] + sxy * q[1] + sx, sxy * q[0] + 2.0 * syy * q[1] + sy);
  };
  gs.dualSections.emplace("probe_cocycle",
                          estar(
                              [S, dS, k](const Vec& q) {
                                const Vec d = dS(q);
                                return vec3(k * S(q), d[0], d[1]);
                              },
                              [dS, k, sxx, sxy, syy](const Vec& q) -> Mat {
                                const Vec d = dS(q);
                                Mat j(3, 2);
                                j << k * d[0], k * d[1], 2.0 * sxx, sxy, sxy, 2.0 * syy;
                                return j;
                              }));
  return gs;
}

GallerySystem buildTimeDependent(const std::map<std::string, double>& p)
{
  const double t0 = p.at("t_start");
  const double qs = p.at("q_start");
  const Box box = makeBox({0.5, -2.0}, {3.0, 2.0});
  const Chart chart({"t", "q"});
  const SkewAlgebroid TQ = tangent_algebroid(chart, true, box);
  HamiltonianSystem sys("time_dependent_free", TQ, quadraticKinetic(2, Vec::Ones(1)), p);

  GallerySystem gs{"time_dependent_free", p, std::nullopt, sys, {}, {}, {}, box, {11, 11},
                   vec2(t0, qs), 5.0, 1e-3, std::nullopt, std::nullopt, {}};

  auto needPositiveTime = [](double t) {
    if (!(t > 0.0))
    {
      throw DomainError("W(t, q) = q^2 / (2t) requires t > 0");
    }
  };
  gs.sections.emplace("reference", vstar(
                                       [needPositiveTime](const Vec& q) {
                                         needPositiveTime(q[0]);
                                         return Vec::Constant(1, q[1] / q[0]);
                                       },
                                       [](const Vec& q) -> Mat {
                                         Mat j(1, 2);
                                         j << -q[1] / (q[0] * q[0]), 1.0 / q[0];
                                         return j;
                                       }));
  gs.dualSections.emplace("dW", estar(
                                    [needPositiveTime](const Vec& q) {
                                      needPositiveTime(q[0]);
                                      return vec2(-q[1] * q[1] / (2.0 * q[0] * q[0]), q[1] / q[0]);
                                    },
                                    [](const Vec& q) -> Mat {
                                      const double t = q[0], x = q[1];
                                      Mat j(2, 2);
                                      j << x * x / (t * t * t), -x / (t * t), -x / (t * t), 1.0 / t;
                                      return j;
                                    }));
  gs.solutions["trajectory"] = ReferenceSolution{
      "t", "(t, q, p) along alpha o c starting at (t_start, q_start)", -t0,
      std::numeric_limits<double>::infinity(), "", [t0, qs](double s) {
        const double t = t0 + s;
        return vec3(t, qs * t / t0, qs / t0);
      }};
  gs.solutions["W"] = ReferenceSolution{
      "t", "W(t, q_start) = q_start^2 / (2t)", 0.0, std::numeric_limits<double>::infinity(), "",
      [qs](double t) { return Vec::Constant(1, qs * qs / (2.0 * t)); }};
  return gs;
}

GallerySystem buildRiemannian(const std::map<std::string, double>& p)
{
  const double r0 = p.at("r0");
  const double th0 = p.at("theta0");
  const Box box = makeBox({0.5, -pi}, {2.0, pi});
  const Chart chart({"r", "theta"}, {false, true});
  const SkewAlgebroid TQ = tangent_algebroid(chart, false, box);
  const Homomorphism zero = Homomorphism::zero(2);
  const SkewAlgebroid ext = force_extension(TQ, zero);

  ScalarField H;
  H.eval = [](const Vec& x) { return 0.5 * (x[2] * x[2] + x[3] * x[3] / (x[0] * x[0])); };
  H.grad = [](const Vec& x) -> Vec {
    const double r = x[0];
    Vec d(4);
    d << -x[3] * x[3] / (r * r * r), 0.0, x[2], x[3] / (r * r);
    return d;
  };
  HamiltonianSystem sys("riemannian_flat", ext, H, p);

  GallerySystem gs{"riemannian_flat", p, std::nullopt, sys, {}, {}, {}, box, {11, 11},
                   vec2(r0, th0), 3.0, 1e-3, zero, std::nullopt, {}};

  gs.metric = MetricField{[](const Vec& q) -> Mat {
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = q[0] * q[0];
    return g;
  }};
  gs.fields["cartesian_x"] = VectorField{
      [](const Vec& q) { return vec2(std::cos(q[1]), -std::sin(q[1]) / q[0]); },
      [](const Vec& q) -> Mat {
        Mat j(2, 2);
        j << 0.0, -std::sin(q[1]), std::sin(q[1]) / (q[0] * q[0]), -std::cos(q[1]) / q[0];
        return j;
      }};
  gs.sections.emplace("reference",
                      vstar([](const Vec& q) { return vec2(std::cos(q[1]), -q[0] * std::sin(q[1])); },
                            [](const Vec& q) -> Mat {
                              Mat j(2, 2);
                              j << 0.0, -std::sin(q[1]), -std::sin(q[1]), -q[0] * std::cos(q[1]);
                              return j;
                            }));
  gs.solutions["geodesic"] = ReferenceSolution{
      "t", "(r, theta, p_r, p_theta) along the line x = x0 + t", -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(), "", [r0, th0](double t) {
        const double x = r0 * std::cos(th0) + t;
        const double y = r0 * std::sin(th0);
        const double r = std::hypot(x, y);
        const double th = std::atan2(y, x);
        Vec out(4);
        out << r, th, std::cos(th), -r * std::sin(th);
        return out;
      }};
  return gs;
}

}  // namespace

std::vector<std::string> gallery_ids()
{
  return {"cylinder_friction", "three_body_drag",     "rolling_ball",
          "vertical_disk",     "time_dependent_free", "riemannian_flat"};
}

std::map<std::string, double> default_params(const std::string& id)
{
  const auto& table = defaultsTable();
  const auto it = table.find(id);
  if (it == table.end())
  {
    throw UsageError("unknown gallery system '" + id + "'");
  }
  return it->second;
}

GallerySystem instantiate(const std::string& id, const std::map<std::string, double>& params,
                          std::optional<OmegaSpec> omega)
{
  const auto p = resolveParams(id, params);
  if (omega && id != "rolling_ball")
  {
    throw UsageError("an Omega specification applies to rolling_ball only");
  }
  if (id == "vertical_disk")
  {
    return buildDisk(p);
  }
  if (id == "rolling_ball")
  {
    OmegaSpec spec = omega.value_or(OmegaSpec{});
    spec.omega0 = p.at("Omega0");
    return buildBall(p, spec);
  }
  if (id == "cylinder_friction")
  {
    return buildCylinder(p);
  }
  if (id == "three_body_drag")
  {
    return buildThreeBody(p);
  }
  if (id == "time_dependent_free")
  {
    return buildTimeDependent(p);
  }
  return buildRiemannian(p);
}

Vec reference_solution(const GallerySystem& gs, const std::string& name, double arg)
{
  const auto it = gs.solutions.find(name);
  if (it == gs.solutions.end())
  {
    throw UsageError("gallery system " + gs.id + " has no reference solution '" + name + "'");
  }
  const ReferenceSolution& sol = it->second;
  if (!sol.unavailable.empty())
  {
    throw DomainError(gs.id + "." + name + ": " + sol.unavailable);
  }
  if (!(arg >= sol.lo && arg <= sol.hi) || (name == "W" && !(arg > 0.0)) ||
      (gs.id == "time_dependent_free" && name == "trajectory" && !(arg > sol.lo)))
  {
    std::ostringstream msg;
    msg.precision(17);
    msg << gs.id << "." << name << " is defined for " << sol.argument << " in [" << sol.lo << ", "
        << sol.hi << "], got " << arg;
    throw DomainError(msg.str());
  }
  return sol.eval(arg);
}

const DualSection& gallery_section(const GallerySystem& gs, const std::string& name)
{
  if (auto it = gs.sections.find(name); it != gs.sections.end())
  {
    return it->second;
  }
  if (auto it = gs.dualSections.find(name); it != gs.dualSections.end())
  {
    return it->second;
  }
  throw UsageError("gallery system " + gs.id + " has no section '" + name + "'");
}

namespace
{

void requireBall(const GallerySystem& ball)
{
  if (ball.id != "rolling_ball" || !ball.omega)
  {
    throw UsageError("unreduced dynamics exist only for rolling_ball");
  }
}

}  // namespace

Vec ball_unreduced_rhs(const GallerySystem& ball, const Vec& x)
{
  requireBall(ball);
  if (x.size() != 8)
  {
    throw UsageError("unreduced ball state has 8 components");
  }
  const double m = ball.params.at("m");
  const double r = ball.params.at("r");
  const double k = ball.params.at("k");
  const double t = x[0];
  const double w = ball.omega->value(t);
  const double dw = ball.omega->derivative(t);
  const double f = m * k * k / (k * k + r * r);
  Vec out(8);
  out[0] = 1.0;
  out[1] = x[3] / m;
  out[2] = x[4] / m;
  out[3] = -f * (dw * x[2] + w * x[4] / m);
  out[4] = f * (dw * x[1] + w * x[3] / m);
  out[5] = r * f * (dw * x[1] + w * x[3] / m);
  out[6] = r * f * (dw * x[2] + w * x[4] / m);
  out[7] = 0.0;
  return out;
}

Vec ball_constraints(const GallerySystem& ball, const Vec& x)
{
  requireBall(ball);
  const double m = ball.params.at("m");
  const double r = ball.params.at("r");
  const double k = ball.params.at("k");
  const double w = ball.omega->value(x[0]);
  return vec2(w * x[2] + x[3] / m - r / (m * k * k) * x[6],
              -w * x[1] + x[4] / m + r / (m * k * k) * x[5]);
}

Vec ball_unreduce(const GallerySystem& ball, const Vec& reduced)
{
  requireBall(ball);
  if (reduced.size() != 6)
  {
    throw UsageError("reduced ball state has 6 components");
  }
  const double m = ball.params.at("m");
  const double r = ball.params.at("r");
  const double k = ball.params.at("k");
  const double s = std::sqrt(m * (k * k + r * r));
  const double t = reduced[0];
  const double w = ball.omega->value(t);
  const double u1 = r * reduced[4] / s;
  const double u2 = -r * reduced[3] / s;
  const Vec omegaBall = vec3(reduced[3] / s, reduced[4] / s, reduced[5] / (k * std::sqrt(m)));
  const double qd1 = u1 - w * reduced[2];
  const double qd2 = u2 + w * reduced[1];
  Vec out(8);
  out << t, reduced[1], reduced[2], m * qd1, m * qd2, m * k * k * omegaBall;
  return out;
}

}  // namespace algebroid_mech
