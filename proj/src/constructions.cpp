#include "algebroid_mech/constructions.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "algebroid_mech/errors.hpp"

namespace algebroid_mech
{

Homomorphism Homomorphism::constant(const Mat& value)
{
  return Homomorphism{[value](const Vec&) { return value; }};
}

Homomorphism Homomorphism::zero(int rank)
{
  return constant(Mat::Zero(rank, rank));
}

MetricField MetricField::constant(const Mat& value)
{
  return MetricField{[value](const Vec&) { return value; }};
}

Vec MorphismPair::apply(const Vec& packed, int m) const
{
  const Vec q = packed.head(m);
  const Vec qbar = base(q);
  const Vec pbar = fiber(q, packed.tail(packed.size() - m));
  Vec out(qbar.size() + pbar.size());
  out << qbar, pbar;
  return out;
}

MorphismPair MorphismPair::identity()
{
  return MorphismPair{[](const Vec& q) { return q; },
                      [](const Vec&, const Vec& p) { return p; }};
}

SkewAlgebroid force_extension(const SkewAlgebroid& base, const Homomorphism& F)
{
  const int k = base.rank();
  const int n = k + 1;
  const int m = base.dim();
  for (const Vec& q : sample_box(base.validationBox(), 4, 42))
  {
    const Mat f = F(q);
    if (f.rows() != k || f.cols() != k)
    {
      std::ostringstream msg;
      msg << "force homomorphism is " << f.rows() << "x" << f.cols() << " but the base rank is "
          << k;
      throw UsageError(msg.str());
    }
  }
  const AnchorFn baseAnchor = base.anchorFn();
  const StructureFn baseStructure = base.structureFn();
  auto anchor = [baseAnchor, m, n](const Vec& q) -> Mat {
    Mat rho = Mat::Zero(m, n);
    rho.rightCols(n - 1) = baseAnchor(q);
    return rho;
  };
  auto structure = [baseStructure, F, n](const Vec& q) {
    const StructureTensor c = baseStructure(q);
    const Mat f = F(q);
    StructureTensor out(n);
    for (int a = 1; a < n; ++a)
    {
      for (int b = 1; b < n; ++b)
      {
        out.set(0, a, b, -f(a - 1, b - 1));
      }
      for (int b = a + 1; b < n; ++b)
      {
        for (int d = 1; d < n; ++d)
        {
          out.set(a, b, d, c(a - 1, b - 1, d - 1));
        }
      }
    }
    return out;
  };
  return SkewAlgebroid(base.name() + "+force", base.chart(), n, anchor, structure, true,
                       base.validationBox());
}

namespace
{

Mat basisMatrix(const std::vector<ESection>& basis, const Vec& q, int rank)
{
  Mat X(rank, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
  {
    const Vec v = basis[a](q);
    if (v.size() != rank)
    {
      throw UsageError("basis section has the wrong number of components");
    }
    X.col(static_cast<Eigen::Index>(a)) = v;
  }
  return X;
}

}  // namespace

SkewAlgebroid projector_restriction(const SkewAlgebroid& E, const std::vector<ESection>& D_basis,
                                    std::function<Vec(const Vec&, const Vec&)> P, bool adapted)
{
  if (D_basis.empty())
  {
    throw UsageError("projector restriction needs a nonempty basis");
  }
  const int r = static_cast<int>(D_basis.size());
  const int n = E.rank();
  for (const Vec& q : sample_box(E.validationBox(), 16, 42))
  {
    const Mat X = basisMatrix(D_basis, q, n);
    double worst = 0.0;
    for (int a = 0; a < r; ++a)
    {
      const Vec image = P(q, X.col(a));
      if (image.size() != r)
      {
        throw UsageError("projector returns the wrong number of coordinates");
      }
      worst = std::max(worst, (image - Vec::Unit(r, a)).cwiseAbs().maxCoeff());
    }
    if (worst > 1e-9)
    {
      std::ostringstream msg;
      msg << "projector is not the identity on D (deviation " << worst << ")";
      throw ConstructionError(msg.str());
    }
  }

  auto anchor = [E, D_basis, n](const Vec& q) -> Mat {
    return E.anchor(q) * basisMatrix(D_basis, q, n);
  };
  auto structure = [E, D_basis, P, r](const Vec& q) {
    StructureTensor out(r);
    for (int a = 0; a < r; ++a)
    {
      for (int b = a + 1; b < r; ++b)
      {
        const Vec image = P(q, bracket_at(E, D_basis[static_cast<std::size_t>(a)],
                                          D_basis[static_cast<std::size_t>(b)], q));
        for (int c = 0; c < r; ++c)
        {
          out.set(a, b, c, image[c]);
        }
      }
    }
    return out;
  };
  return SkewAlgebroid(E.name() + "|D", E.chart(), r, anchor, structure, adapted,
                       E.validationBox());
}

Mat gram_schmidt_at(const Mat& G, const Mat& basisColumns)
{
  const int k = static_cast<int>(basisColumns.cols());
  if (G.rows() != basisColumns.rows() || G.cols() != G.rows())
  {
    throw UsageError("metric and basis dimensions disagree");
  }
  Mat K = Mat::Identity(k, k);
  Mat Q = basisColumns;
  for (int j = 0; j < k; ++j)
  {
    for (int pass = 0; pass < 2; ++pass)
    {
      for (int i = 0; i < j; ++i)
      {
        const double proj = Q.col(i).dot(G * Q.col(j));
        Q.col(j) -= proj * Q.col(i);
        K.col(j) -= proj * K.col(i);
      }
    }
    const double normSq = Q.col(j).dot(G * Q.col(j));
    if (!(normSq > 1e-20))
    {
      std::ostringstream msg;
      msg << "Gram-Schmidt pivot " << std::sqrt(std::max(normSq, 0.0)) << " at basis element "
          << j << " is below 1e-10";
      throw DegenerateMetricError(msg.str());
    }
    const double norm = std::sqrt(normSq);
    Q.col(j) /= norm;
    K.col(j) /= norm;
  }
  return K;
}

Mat gram_schmidt_at(const MetricField& G, const std::vector<ESection>& basis, const Vec& q)
{
  const Mat g = G(q);
  return gram_schmidt_at(g, basisMatrix(basis, q, static_cast<int>(g.rows())));
}

namespace
{

// Structure functions keyed by q rounded to a 1e-9 grid.
class StructureCache
{
public:
  std::optional<StructureTensor> find(const Vec& q) const
  {
    std::shared_lock lock(mutex_);
    const auto it = table_.find(key(q));
    if (it == table_.end())
    {
      return std::nullopt;
    }
    return it->second;
  }

  void insert(const Vec& q, const StructureTensor& value)
  {
    std::unique_lock lock(mutex_);
    table_.emplace(key(q), value);
  }

private:
  static std::string key(const Vec& q)
  {
    std::string k;
    for (int i = 0; i < q.size(); ++i)
    {
      k += std::to_string(std::llround(q[i] * 1e9));
      k += ',';
    }
    return k;
  }

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, StructureTensor> table_;
};

}  // namespace

HamiltonianSystem affine_constraints(const SkewAlgebroid& E, const MetricField& G,
                                     const std::vector<ESection>& U_basis, const ESection& X0,
                                     const ScalarField& V, const AffineOptions& options)
{
  if (U_basis.empty())
  {
    throw UsageError("affine constraints need a nonempty U basis");
  }
  const int nE = E.rank();
  const int k = static_cast<int>(U_basis.size());
  const int n = k + 1;
  const int m = E.dim();

  // Orthonormal frame of U at q, as E-vectors (columns).
  auto frameAt = [G, U_basis, nE](const Vec& q) -> Mat {
    const Mat g = G(q);
    const Mat U = basisMatrix(U_basis, q, nE);
    return U * gram_schmidt_at(g, U);
  };
  auto projectorAt = [G, frameAt](const Vec& q, const Vec& v) -> Vec {
    return frameAt(q).transpose() * (G(q) * v);
  };

  for (const Vec& q : sample_box(E.validationBox(), 16, 42))
  {
    const Mat g = G(q);
    if (g.rows() != nE || g.cols() != nE)
    {
      throw UsageError("bundle metric has the wrong size");
    }
    const double defect = projectorAt(q, X0(q)).cwiseAbs().maxCoeff();
    if (defect > 1e-9)
    {
      std::ostringstream msg;
      msg << "drift section is not G-orthogonal to U (|P(X0)| = " << defect << ")";
      throw ConstructionError(msg.str());
    }
  }

  std::vector<ESection> frame;
  for (int a = 0; a < k; ++a)
  {
    ESection s;
    s.eval = [frameAt, a](const Vec& q) -> Vec { return frameAt(q).col(a); };
    frame.push_back(s);
  }

  auto anchor = [E, X0, frameAt, m, n](const Vec& q) -> Mat {
    const Mat rho = E.anchor(q);
    Mat out(m, n);
    out.col(0) = rho * X0(q);
    out.rightCols(n - 1) = rho * frameAt(q);
    return out;
  };

  auto compute = [E, G, X0, frame, frameAt, n](const Vec& q) {
    const Mat g = G(q);
    const Mat ebar = frameAt(q);
    StructureTensor out(n);
    for (int b = 1; b < n; ++b)
    {
      const Vec br = bracket_at(E, X0, frame[static_cast<std::size_t>(b - 1)], q);
      const Vec coords = ebar.transpose() * (g * br);
      for (int c = 1; c < n; ++c)
      {
        out.set(0, b, c, coords[c - 1]);
      }
    }
    for (int a = 1; a < n; ++a)
    {
      for (int b = a + 1; b < n; ++b)
      {
        const Vec br = bracket_at(E, frame[static_cast<std::size_t>(a - 1)],
                                  frame[static_cast<std::size_t>(b - 1)], q);
        const Vec coords = ebar.transpose() * (g * br);
        for (int c = 1; c < n; ++c)
        {
          out.set(a, b, c, coords[c - 1]);
        }
      }
    }
    return out;
  };

  StructureFn structure;
  if (options.memoize)
  {
    auto cache = std::make_shared<StructureCache>();
    structure = [compute, cache](const Vec& q) {
      if (auto hit = cache->find(q))
      {
        return *hit;
      }
      StructureTensor value = compute(q);
      cache->insert(q, value);
      return value;
    };
  }
  else
  {
    structure = compute;
  }

  SkewAlgebroid Ut(options.name, E.chart(), n, anchor, structure, true, E.validationBox());

  ScalarField H;
  H.eval = [V, m](const Vec& x) {
    const Vec p = x.tail(x.size() - m);
    return 0.5 * p.squaredNorm() + V(x.head(m));
  };
  H.grad = [V, m](const Vec& x) -> Vec {
    Vec g(x.size());
    g.head(m) = fd_gradient(V, Vec(x.head(m)));
    g.tail(x.size() - m) = x.tail(x.size() - m);
    return g;
  };
  return HamiltonianSystem(options.name, std::move(Ut), H, options.params);
}

namespace
{

ScalarField coordinateProbe(int index)
{
  ScalarField f;
  f.eval = [index](const Vec& x) { return x[index]; };
  f.grad = [index](const Vec& x) -> Vec { return Vec::Unit(x.size(), index); };
  return f;
}

PhasePoint unpack(const Vec& packed, int m)
{
  PhasePoint x;
  x.q = packed.head(m);
  x.p0 = packed[m];
  x.p = packed.tail(packed.size() - m - 1);
  return x;
}

}  // namespace

CheckReport poisson_morphism_check(const SkewAlgebroid& src, const SkewAlgebroid& dst,
                                   const MorphismPair& map, const Box& box, int samples,
                                   std::uint64_t seed, double tol)
{
  const int m = src.dim();
  const int mbar = dst.dim();
  const int total = m + src.rank();
  const int totalBar = mbar + dst.rank();
  if (box.dim() != total)
  {
    throw UsageError("morphism box must cover the packed source points (q, p0, p)");
  }
  CheckReport report;
  report.name = "almost_poisson";
  report.tol = tol;
  report.samples = samples;
  report.seed = seed;
  WitnessCollector worst;

  std::vector<ScalarField> pulled;
  std::vector<ScalarField> probes;
  for (int j = 0; j < totalBar; ++j)
  {
    probes.push_back(coordinateProbe(j));
    ScalarField f;
    f.eval = [map, m, j](const Vec& x) { return map.apply(x, m)[j]; };
    pulled.push_back(f);
  }

  for (const Vec& x : sample_box(box, samples, seed))
  {
    const Vec image = map.apply(x, m);
    if (image.size() != totalBar)
    {
      throw UsageError("morphism image has the wrong dimension");
    }
    const PhasePoint here = unpack(x, m);
    const PhasePoint there = unpack(image, mbar);
    double local = 0.0;
    for (int i = 0; i < totalBar; ++i)
    {
      for (int j = i + 1; j < totalBar; ++j)
      {
        const double lhs = poisson_bracket_eval(src, pulled[static_cast<std::size_t>(i)],
                                                pulled[static_cast<std::size_t>(j)], here);
        const double rhs = poisson_bracket_eval(dst, probes[static_cast<std::size_t>(i)],
                                                probes[static_cast<std::size_t>(j)], there);
        local = std::max(local, std::abs(lhs - rhs));
      }
    }
    worst.offer(x, local);
  }
  worst.finalize(report);
  return report;
}

std::array<CheckReport, 3> morphism_check(const HamiltonianSystem& src,
                                          const HamiltonianSystem& dst, const MorphismPair& map,
                                          const Box& box, int samples, std::uint64_t seed,
                                          double tol)
{
  std::array<CheckReport, 3> out;
  out[0] = poisson_morphism_check(src.algebroid(), dst.algebroid(), map, box, samples, seed, tol);

  const int m = src.m();
  const int n = src.n();
  const int nbar = dst.n();
  const int mbar = dst.m();

  CheckReport& cocycle = out[1];
  cocycle.name = "cocycle_related";
  cocycle.tol = tol;
  cocycle.samples = samples;
  cocycle.seed = seed;
  CheckReport& hamiltonian = out[2];
  hamiltonian.name = "hamiltonian_related";
  hamiltonian.tol = tol;
  hamiltonian.samples = samples;
  hamiltonian.seed = seed;

  WitnessCollector cocycleWorst;
  WitnessCollector hamWorst;
  const ScalarField F = f_h_field(src);
  const ScalarField Fbar = f_h_field(dst);
  for (const Vec& x : sample_box(box, samples, seed))
  {
    const Vec q = x.head(m);
    const Vec linear = map.fiber(q, Vec::Unit(n, 0)) - map.fiber(q, Vec::Zero(n));
    if (linear.size() != nbar)
    {
      throw UsageError("morphism fiber image has the wrong dimension");
    }
    cocycleWorst.offer(x, (linear - Vec::Unit(nbar, 0)).cwiseAbs().maxCoeff());

    const Vec image = map.apply(x, m);
    if (image.size() != mbar + nbar)
    {
      throw UsageError("morphism image has the wrong dimension");
    }
    hamWorst.offer(x, std::abs(Fbar(image) - F(x)));
  }
  cocycleWorst.finalize(cocycle);
  hamWorst.finalize(hamiltonian);
  return out;
}

}  // namespace algebroid_mech
