#include "algebroid_mech/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace algebroid_mech
{

Json number(double x)
{
  if (std::isnan(x))
  {
    return "nan";
  }
  if (std::isinf(x))
  {
    return x > 0 ? "inf" : "-inf";
  }
  return x;
}

Json to_json(const Vec& v)
{
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
  {
    out.push_back(number(v[i]));
  }
  return out;
}

Json to_json(const Witness& w)
{
  return Json{{"q", to_json(w.q)}, {"value", number(w.value)}};
}

Json to_json(const CheckReport& r)
{
  Json witnesses = Json::array();
  for (const Witness& w : r.witnesses)
  {
    witnesses.push_back(to_json(w));
  }
  return Json{{"name", r.name},       {"max_violation", number(r.max_violation)},
              {"tol", number(r.tol)}, {"samples", r.samples},
              {"seed", r.seed},       {"pass", r.pass},
              {"witnesses", witnesses}};
}

Json to_json(const HJReport& r)
{
  Json worst = Json::array();
  for (const Witness& w : r.worst)
  {
    worst.push_back(to_json(w));
  }
  Json grid = {{"points", r.residual_grid.size()},
               {"components", r.residual_grid.empty() ? 0 : r.residual_grid.front().second.size()}};
  return Json{{"max_norm", number(r.max_norm)},
              {"tol", number(r.tol)},
              {"pass", r.pass},
              {"grid", grid},
              {"worst", worst}};
}

Json to_json(const LiftReport& r, int worstCount)
{
  std::vector<std::size_t> order(r.deviations.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.deviations[a] > r.deviations[b];
  });
  if (order.size() > static_cast<std::size_t>(std::max(worstCount, 0)))
  {
    order.resize(static_cast<std::size_t>(std::max(worstCount, 0)));
  }
  Json worst = Json::array();
  for (std::size_t i : order)
  {
    worst.push_back(Json{{"t", number(r.base_curve.times[i])},
                         {"deviation", number(r.deviations[i])}});
  }
  Json times = Json::object();
  if (!r.base_curve.times.empty())
  {
    times = Json{{"t0", number(r.base_curve.times.front())},
                 {"t1", number(r.base_curve.times.back())},
                 {"steps", r.base_curve.size() - 1}};
  }
  Json out{{"max_deviation", number(r.max_deviation)},
           {"tol", number(r.tol)},
           {"pass", r.pass},
           {"times", times},
           {"worst", worst}};
  if (!r.failure.empty())
  {
    out["failure"] = r.failure;
  }
  if (!r.base_curve.points.empty() && !r.hamilton_curve.points.empty())
  {
    out["final"] = Json{{"lifted", to_json(r.lifted_curve.back())},
                        {"hamilton", to_json(r.hamilton_curve.back())}};
  }
  return out;
}

Json to_json(const Box& b)
{
  return Json{{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}};
}

Json gallery_catalogue()
{
  Json out = Json::array();
  for (const std::string& id : gallery_ids())
  {
    const GallerySystem gs = instantiate(id);
    Json params = Json::object();
    for (const auto& [name, value] : gs.params)
    {
      params[name] = number(value);
    }
    if (gs.omega)
    {
      params["Omega"] = gs.omega->name();
    }

    Json sections = Json::array();
    for (const auto& entry : gs.sections)
    {
      sections.push_back(entry.first);
    }
    Json dual = Json::array();
    for (const auto& entry : gs.dualSections)
    {
      dual.push_back(entry.first);
    }
    Json solutions = Json::array();
    Json solutionDomains = Json::object();
    for (const auto& [name, sol] : gs.solutions)
    {
      solutions.push_back(name);
      Json domain{{"argument", sol.argument},
                  {"lo", number(sol.lo)},
                  {"hi", number(sol.hi)},
                  {"description", sol.description}};
      if (!sol.unavailable.empty())
      {
        domain["unavailable"] = sol.unavailable;
      }
      solutionDomains[name] = domain;
    }

    const SkewAlgebroid& A = gs.system.algebroid();
    Json coordinates = Json::array();
    for (const std::string& c : A.chart().coordNames())
    {
      coordinates.push_back(c);
    }
    Json grid = Json::array();
    for (int g : gs.grid)
    {
      grid.push_back(g);
    }

    out.push_back(Json{
        {"id", id},
        {"params", params},
        {"rank", A.rank()},
        {"coordinates", coordinates},
        {"references",
         Json{{"sections", sections}, {"dual_sections", dual}, {"solutions", solutions}}},
        {"domains", Json{{"box", to_json(gs.box)},
                         {"grid", grid},
                         {"q0", to_json(gs.q0)},
                         {"horizon", number(gs.horizon)},
                         {"solutions", solutionDomains}}},
    });
  }
  return out;
}

std::string dump(const Json& j)
{
  return j.dump(2) + "\n";
}

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows)
{
  for (std::size_t i = 0; i < header.size(); ++i)
  {
    out << (i ? "," : "") << header[i];
  }
  out << "\r\n";
  for (const auto& row : rows)
  {
    for (std::size_t i = 0; i < row.size(); ++i)
    {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\r\n";
  }
}

}  // namespace algebroid_mech
