#include "algebroid_mech/algebroid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "algebroid_mech/errors.hpp"

namespace algebroid_mech
{

StructureTensor::StructureTensor(int rank) : rank_(rank)
{
  if (rank < 1)
  {
    throw UsageError("structure tensor rank must be positive");
  }
  const auto n = static_cast<std::size_t>(rank);
  data_.assign(n * (n - 1) / 2 * n, 0.0);
}

std::size_t StructureTensor::slot(int a, int b, int c) const
{
  // a < b assumed; row-major over the strict upper triangle.
  const auto n = static_cast<std::size_t>(rank_);
  const auto ua = static_cast<std::size_t>(a);
  const auto ub = static_cast<std::size_t>(b);
  const std::size_t pair = ua * n - ua * (ua + 1) / 2 + (ub - ua - 1);
  return pair * n + static_cast<std::size_t>(c);
}

double StructureTensor::operator()(int a, int b, int c) const
{
  if (a == b)
  {
    return 0.0;
  }
  if (a < b)
  {
    return data_[slot(a, b, c)];
  }
  return -data_[slot(b, a, c)];
}

void StructureTensor::set(int a, int b, int c, double value)
{
  if (a == b || a < 0 || b < 0 || c < 0 || a >= rank_ || b >= rank_ || c >= rank_)
  {
    throw UsageError("structure tensor index out of range");
  }
  if (a < b)
  {
    data_[slot(a, b, c)] = value;
  }
  else
  {
    data_[slot(b, a, c)] = -value;
  }
}

void StructureTensor::add(int a, int b, int c, double value)
{
  set(a, b, c, (*this)(a, b, c) + value);
}

double StructureTensor::maxUpper(int c) const
{
  double worst = 0.0;
  for (int a = 0; a < rank_; ++a)
  {
    for (int b = a + 1; b < rank_; ++b)
    {
      worst = std::max(worst, std::abs(data_[slot(a, b, c)]));
    }
  }
  return worst;
}

void WitnessCollector::offer(const Vec& q, double value)
{
  if (!std::isfinite(value))
  {
    throw NumericFailure("non-finite residual during sampled check");
  }
  max_ = std::max(max_, value);
  worst_.push_back(Witness{q, value});
  std::stable_sort(worst_.begin(), worst_.end(),
                   [](const Witness& l, const Witness& r) { return l.value > r.value; });
  if (worst_.size() > 5)
  {
    worst_.resize(5);
  }
}

void WitnessCollector::finalize(CheckReport& report) const
{
  report.max_violation = max_;
  report.witnesses = worst_;
  report.pass = max_ <= report.tol;
}

SkewAlgebroid::SkewAlgebroid(std::string name, Chart chart, int rank, AnchorFn anchor,
                             StructureFn structure, bool adapted, std::optional<Box> validationBox)
  : name_(std::move(name)),
    chart_(std::move(chart)),
    rank_(rank),
    anchor_(std::move(anchor)),
    structure_(std::move(structure)),
    adapted_(adapted)
{
  if (rank_ < 1)
  {
    throw UsageError("algebroid rank must be positive");
  }
  if (!anchor_ || !structure_)
  {
    throw UsageError("algebroid needs anchor and structure procedures");
  }
  validationBox_ = validationBox ? *validationBox : Box::cube(chart_.dim(), -1.0, 1.0);
  if (validationBox_.dim() != chart_.dim())
  {
    throw UsageError("validation box dimension differs from chart dimension");
  }
  validationBox_.validate();

  const int checks = adapted_ ? 16 : 1;
  const auto points = sample_box(validationBox_, checks, 42);
  for (const Vec& q : points)
  {
    const Mat rho = anchor_(q);
    if (rho.rows() != chart_.dim() || rho.cols() != rank_)
    {
      throw ConstructionError("anchor of '" + name_ + "' has wrong shape");
    }
    const StructureTensor c = structure_(q);
    if (c.rank() != rank_)
    {
      throw ConstructionError("structure functions of '" + name_ + "' have wrong rank");
    }
    if (adapted_ && c.maxUpper(0) > 1e-9)
    {
      std::ostringstream msg;
      msg << "algebroid '" << name_ << "' is flagged adapted but C^0 = " << c.maxUpper(0)
          << " at a validation sample";
      throw ConstructionError(msg.str());
    }
  }
}

Mat SkewAlgebroid::anchor(const Vec& q) const
{
  return anchor_(q);
}

StructureTensor SkewAlgebroid::structure(const Vec& q) const
{
  return structure_(q);
}

SkewAlgebroid tangent_algebroid(const Chart& chart, bool firstCoordinateIsCocycle,
                                std::optional<Box> validationBox)
{
  const int m = chart.dim();
  return SkewAlgebroid(
      "tangent", chart, m, [m](const Vec&) -> Mat { return Mat::Identity(m, m); },
      [m](const Vec&) { return StructureTensor(m); }, firstCoordinateIsCocycle,
      std::move(validationBox));
}

SkewAlgebroid v_subalgebroid(const SkewAlgebroid& A)
{
  if (!A.adapted())
  {
    throw UsageError("the V-part is defined only for adapted algebroids");
  }
  if (A.rank() < 2)
  {
    throw UsageError("adapted algebroid of rank 1 has an empty V-part");
  }
  const int n = A.rank();
  const AnchorFn anchor = A.anchorFn();
  const StructureFn structure = A.structureFn();
  return SkewAlgebroid(
      A.name() + ".V", A.chart(), n - 1,
      [anchor, n](const Vec& q) -> Mat { return anchor(q).rightCols(n - 1); },
      [structure, n](const Vec& q) {
        const StructureTensor full = structure(q);
        StructureTensor out(n - 1);
        for (int a = 1; a < n; ++a)
        {
          for (int b = a + 1; b < n; ++b)
          {
            for (int c = 1; c < n; ++c)
            {
              out.set(a - 1, b - 1, c - 1, full(a, b, c));
            }
          }
        }
        return out;
      },
      false, A.validationBox());
}

ESection basis_section(int rank, int index)
{
  if (index < 0 || index >= rank)
  {
    throw UsageError("basis index out of range");
  }
  ESection s;
  s.eval = [rank, index](const Vec&) -> Vec { return Vec::Unit(rank, index); };
  s.jacobian = [rank](const Vec& q) -> Mat { return Mat::Zero(rank, q.size()); };
  return s;
}

DualSection basis_dual(int rank, int index)
{
  return DualSection{basis_section(rank, index), DualSpace::EStar};
}

namespace
{

void requireLength(const Vec& v, int n, const char* what)
{
  if (v.size() != n)
  {
    std::ostringstream msg;
    msg << what << " has " << v.size() << " components, expected " << n;
    throw UsageError(msg.str());
  }
}

}  // namespace

Vec anchor_apply(const SkewAlgebroid& A, const ESection& sigma, const Vec& q)
{
  const Vec s = sigma(q);
  requireLength(s, A.rank(), "section");
  return A.anchor(q) * s;
}

Vec bracket_from_jets(const Mat& anchor, const StructureTensor& C, const Vec& sigma,
                      const Mat& jacSigma, const Vec& gamma, const Mat& jacGamma)
{
  const int n = C.rank();
  Vec out = Vec::Zero(n);
  for (int c = 0; c < n; ++c)
  {
    double acc = 0.0;
    for (int a = 0; a < n; ++a)
    {
      for (int b = a + 1; b < n; ++b)
      {
        acc += C(a, b, c) * (sigma[a] * gamma[b] - sigma[b] * gamma[a]);
      }
    }
    out[c] = acc;
  }
  const Vec rs = anchor * sigma;
  const Vec rg = anchor * gamma;
  out += jacGamma * rs - jacSigma * rg;
  return out;
}

Vec bracket_at(const SkewAlgebroid& A, const ESection& sigma, const ESection& gamma,
               const Vec& q)
{
  const Vec s = sigma(q);
  const Vec g = gamma(q);
  requireLength(s, A.rank(), "section");
  requireLength(g, A.rank(), "section");
  return bracket_from_jets(A.anchor(q), A.structure(q), s, jacobian(sigma, q), g,
                           jacobian(gamma, q));
}

ESection bracket(const SkewAlgebroid& A, const ESection& sigma, const ESection& gamma)
{
  ESection out;
  out.eval = [A, sigma, gamma](const Vec& q) { return bracket_at(A, sigma, gamma, q); };
  return out;
}

DualSection d_function(const SkewAlgebroid& A, const ScalarField& f)
{
  DualSection out;
  out.space = DualSpace::EStar;
  out.field.eval = [A, f](const Vec& q) -> Vec {
    return A.anchor(q).transpose() * fd_gradient(f, q);
  };
  return out;
}

double d_oneform_eval(const SkewAlgebroid& A, const DualSection& alpha, const ESection& sigma,
                      const ESection& gamma, const Vec& q)
{
  if (alpha.space != DualSpace::EStar)
  {
    throw UsageError("d_oneform_eval expects a section of E*");
  }
  const Vec a0 = alpha(q);
  requireLength(a0, A.rank(), "dual section");
  const auto pairing = [&alpha](const ESection& s) {
    return std::function<double(const Vec&)>(
        [&alpha, &s](const Vec& x) { return alpha(x).dot(s(x)); });
  };
  const Vec rs = anchor_apply(A, sigma, q);
  const Vec rg = anchor_apply(A, gamma, q);
  const double first = fd_gradient(pairing(gamma), q).dot(rs);
  const double second = fd_gradient(pairing(sigma), q).dot(rg);
  return (first - second) - a0.dot(bracket_at(A, sigma, gamma, q));
}

Mat d_oneform_components(const SkewAlgebroid& A, const DualSection& alpha, const Vec& q)
{
  const int n = A.rank();
  const Vec a = alpha(q);
  requireLength(a, n, "dual section");
  const Mat rho = A.anchor(q);
  const StructureTensor C = A.structure(q);
  // M(b, a) = rho_a(alpha_b).
  const Mat M = jacobian(alpha.field, q) * rho;
  Mat D = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
  {
    for (int j = i + 1; j < n; ++j)
    {
      double v = M(j, i) - M(i, j);
      for (int c = 0; c < n; ++c)
      {
        v -= C(i, j, c) * a[c];
      }
      D(i, j) = v;
      D(j, i) = -v;
    }
  }
  return D;
}

CheckReport check_cocycle(const SkewAlgebroid& A, const DualSection& phi, const Box& box,
                          int samples, std::uint64_t seed, double tol)
{
  CheckReport report;
  report.name = "cocycle";
  report.tol = tol;
  report.samples = samples;
  report.seed = seed;
  const auto points = sample_box(box, samples, seed);
  WitnessCollector worst;
  for (const Vec& q : points)
  {
    const Mat D = d_oneform_components(A, phi, q);
    worst.offer(q, D.cwiseAbs().maxCoeff());
  }
  worst.finalize(report);
  return report;
}

int numeric_rank(const Mat& columns, double relTol)
{
  if (columns.size() == 0)
  {
    return 0;
  }
  Eigen::JacobiSVD<Mat> svd(columns);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0.0)
  {
    return 0;
  }
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
  {
    if (s[i] > relTol * s[0])
    {
      ++r;
    }
  }
  return r;
}

namespace
{

using FieldFn = std::function<Vec(const Vec&)>;

// Steps for nested differentiation: a field built from L brackets carries roundoff of order
// eps_L, and a fourth-order stencil on it is balanced at h ~ eps_L^(1/5).
double nestedStep(int level, double qi)
{
  static constexpr double steps[] = {7.5e-4, 3.5e-3, 1.25e-2, 3.5e-2, 8e-2, 1.5e-1};
  const int idx = std::min<int>(level, static_cast<int>(std::size(steps)) - 1);
  return steps[idx] * std::max(1.0, std::abs(qi));
}

Mat stencilJacobian(const FieldFn& f, const Vec& q, int level)
{
  Mat jac;
  Vec x = q;
  for (int i = 0; i < q.size(); ++i)
  {
    const double h = nestedStep(level, q[i]);
    x[i] = q[i] + 2.0 * h;
    const Vec f2p = f(x);
    x[i] = q[i] + h;
    const Vec f1p = f(x);
    x[i] = q[i] - h;
    const Vec f1m = f(x);
    x[i] = q[i] - 2.0 * h;
    const Vec f2m = f(x);
    x[i] = q[i];
    if (i == 0)
    {
      jac.resize(f2p.size(), q.size());
    }
    jac.col(i) = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
  }
  if (!jac.allFinite())
  {
    throw NumericFailure("non-finite vector field in bracket evaluation");
  }
  return jac;
}

struct LeveledField
{
  FieldFn f;
  int level;
};

LeveledField lieBracket(const LeveledField& X, const LeveledField& Y)
{
  FieldFn fx = X.f;
  FieldFn fy = Y.f;
  const int lx = X.level;
  const int ly = Y.level;
  return LeveledField{[fx, fy, lx, ly](const Vec& q) -> Vec {
                        return stencilJacobian(fy, q, ly) * fx(q) -
                               stencilJacobian(fx, q, lx) * fy(q);
                      },
                      std::max(lx, ly) + 1};
}

}  // namespace

std::vector<int> flag_rank_of_fields(const std::vector<FieldFn>& fields, const Vec& q,
                                     int maxDepth)
{
  if (maxDepth < 1)
  {
    throw UsageError("flag depth must be at least 1");
  }
  if (fields.empty())
  {
    throw UsageError("flag rank needs at least one generating field");
  }
  std::vector<LeveledField> generators;
  for (const auto& f : fields)
  {
    generators.push_back(LeveledField{f, 0});
  }

  std::vector<Vec> values;
  for (const auto& g : generators)
  {
    values.push_back(g.f(q));
  }
  const auto rankOf = [&values]() {
    Mat cols(values.front().size(), static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
    {
      cols.col(static_cast<Eigen::Index>(i)) = values[i];
    }
    return numeric_rank(cols);
  };

  std::vector<int> ranks{rankOf()};
  const int full = static_cast<int>(q.size());
  std::vector<LeveledField> frontier = generators;
  for (int depth = 2; depth <= maxDepth; ++depth)
  {
    if (ranks.back() == full)
    {
      ranks.push_back(full);
      continue;
    }
    std::vector<LeveledField> next;
    for (std::size_t i = 0; i < generators.size(); ++i)
    {
      for (std::size_t j = 0; j < frontier.size(); ++j)
      {
        // At depth 2 the pair (i, j) and (j, i) give the same bracket up to sign.
        if (depth == 2 && j <= i)
        {
          continue;
        }
        next.push_back(lieBracket(generators[i], frontier[j]));
        values.push_back(next.back().f(q));
      }
    }
    ranks.push_back(rankOf());
    frontier = std::move(next);
  }
  return ranks;
}

std::vector<int> flag_rank(const SkewAlgebroid& A, const Vec& q, int maxDepth)
{
  std::vector<FieldFn> fields;
  const AnchorFn anchor = A.anchorFn();
  for (int a = 0; a < A.rank(); ++a)
  {
    fields.push_back([anchor, a](const Vec& x) -> Vec { return anchor(x).col(a); });
  }
  return flag_rank_of_fields(fields, q, maxDepth);
}

}  // namespace algebroid_mech
