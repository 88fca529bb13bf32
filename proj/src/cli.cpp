#include "algebroid_mech/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "algebroid_mech/errors.hpp"

namespace algebroid_mech
{

namespace
{

double parseDouble(const std::string& token, const std::string& what)
{
  std::size_t begin = token.find_first_not_of(" \t");
  std::size_t end = token.find_last_not_of(" \t");
  if (begin == std::string::npos)
  {
    throw UsageError("empty value in " + what);
  }
  const char* first = token.data() + begin;
  const char* last = token.data() + end + 1;
  if (*first == '+')
  {
    ++first;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
  {
    throw UsageError("'" + token + "' is not a finite decimal in " + what);
  }
  return value;
}

Vec toVec(const std::vector<double>& values)
{
  return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

bool given(CLI::App* sub, const std::string& name)
{
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

Json vecOrNull(const std::optional<Vec>& v)
{
  return v ? to_json(*v) : Json();
}

Json optNumber(const std::optional<double>& x)
{
  return x ? number(*x) : Json();
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
  if (cfg.out.empty())
  {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file)
  {
    throw UsageError("cannot open output file '" + cfg.out + "'");
  }
  file << text;
  if (!file)
  {
    throw UsageError("failed writing output file '" + cfg.out + "'");
  }
}

GallerySystem load(const RunConfig& cfg)
{
  std::optional<OmegaSpec> omega;
  if (cfg.system == "rolling_ball")
  {
    omega = OmegaSpec::parse(cfg.omega, 1.0);
  }
  else if (cfg.omega != "constant")
  {
    throw UsageError("--omega applies to rolling_ball only");
  }
  return instantiate(cfg.system, cfg.params, omega);
}

/// Replaces partial settings by the resolved ones so the report echoes what actually ran.
void resolveDefaults(RunConfig& cfg, const GallerySystem& gs, double defaultTol)
{
  cfg.params = gs.params;
  if (cfg.system != "rolling_ball")
  {
    cfg.omega.clear();
  }
  if (!cfg.t1)
  {
    cfg.t1 = cfg.t0 + gs.horizon;
  }
  if (!cfg.dt)
  {
    cfg.dt = gs.dt;
  }
  if (!(*cfg.dt > 0.0))
  {
    throw UsageError("--dt must be positive");
  }
  if (!(*cfg.t1 > cfg.t0))
  {
    throw UsageError("--t1 must exceed --t0");
  }
  if (!cfg.x0)
  {
    cfg.x0 = gs.q0;
  }
  if (!cfg.box)
  {
    cfg.box = gs.box;
  }
  cfg.box->validate();
  if (cfg.box->dim() != gs.system.m())
  {
    throw UsageError("--box needs " + std::to_string(gs.system.m()) + " lo,hi pairs");
  }
  if (cfg.grid.empty())
  {
    cfg.grid = gs.grid;
  }
  if (cfg.grid.size() == 1)
  {
    cfg.grid.assign(static_cast<std::size_t>(gs.system.m()), cfg.grid.front());
  }
  if (static_cast<int>(cfg.grid.size()) != gs.system.m())
  {
    throw UsageError("--grid needs one or " + std::to_string(gs.system.m()) + " values");
  }
  if (std::any_of(cfg.grid.begin(), cfg.grid.end(), [](int g) { return g < 2; }))
  {
    throw UsageError("--grid needs at least 2 points per axis");
  }
  if (!cfg.point)
  {
    cfg.point = gs.q0.size() == gs.system.m() ? gs.q0 : Vec(0.5 * (gs.box.lo + gs.box.hi));
  }
  if (cfg.point->size() != gs.system.m())
  {
    throw UsageError("--point needs " + std::to_string(gs.system.m()) + " coordinates");
  }
  if (!cfg.tol)
  {
    cfg.tol = defaultTol;
  }
  if (cfg.samples < 1)
  {
    throw UsageError("--samples must be positive");
  }
  if (cfg.depth < 1)
  {
    throw UsageError("--depth must be at least 1");
  }
  if (cfg.format.empty())
  {
    cfg.format = (cfg.command == "simulate" || cfg.command == "dissipation") ? "csv" : "json";
  }
}

/// Name of the V* section used to seed momenta, or empty when the system has none.
std::string seedSection(const RunConfig& cfg, const GallerySystem& gs)
{
  if (!cfg.section.empty())
  {
    return cfg.section;
  }
  return gs.sections.count("reference") ? "reference" : std::string();
}

const DualSection& requireVStar(const GallerySystem& gs, const std::string& name)
{
  const DualSection& s = gallery_section(gs, name);
  if (s.space != DualSpace::VStar)
  {
    throw UsageError("section '" + name + "' of " + gs.id + " is not a section of V*");
  }
  return s;
}

Vec initialState(RunConfig& cfg, const GallerySystem& gs)
{
  const HamiltonianSystem& sys = gs.system;
  const Vec& x0 = *cfg.x0;
  if (x0.size() == sys.stateDim())
  {
    return x0;
  }
  if (x0.size() != sys.m())
  {
    throw UsageError("--x0 needs " + std::to_string(sys.m()) + " base coordinates or " +
                     std::to_string(sys.stateDim()) + " phase coordinates");
  }
  Vec state = Vec::Zero(sys.stateDim());
  state.head(sys.m()) = x0;
  const std::string name = seedSection(cfg, gs);
  if (!name.empty())
  {
    cfg.section = name;
    state.tail(sys.n() - 1) = requireVStar(gs, name)(x0);
  }
  return state;
}

std::vector<std::string> stateHeader(const GallerySystem& gs)
{
  std::vector<std::string> header{"t"};
  for (const std::string& c : gs.system.algebroid().chart().coordNames())
  {
    header.push_back(c);
  }
  for (int a = 1; a < gs.system.n(); ++a)
  {
    header.push_back("p" + std::to_string(a));
  }
  return header;
}

std::string table(const RunConfig& cfg, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows)
{
  if (cfg.format == "csv")
  {
    std::ostringstream os;
    write_csv(os, header, rows);
    return os.str();
  }
  Json jrows = Json::array();
  for (const auto& row : rows)
  {
    Json r = Json::array();
    for (double v : row)
    {
      r.push_back(number(v));
    }
    jrows.push_back(r);
  }
  return dump(Json{{"config", to_json(cfg)}, {"columns", header}, {"rows", jrows}});
}

int cmdGalleryList(RunConfig& cfg, std::ostream& out)
{
  emit(cfg, out, dump(gallery_catalogue()));
  return 0;
}

int cmdSimulate(RunConfig& cfg, std::ostream& out)
{
  const GallerySystem gs = load(cfg);
  resolveDefaults(cfg, gs, 0.0);
  cfg.tol.reset();
  const Vec x0 = initialState(cfg, gs);
  const Curve c = integrate_hamilton(gs.system, x0, cfg.t0, *cfg.t1, *cfg.dt);
  std::vector<std::vector<double>> rows;
  rows.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    std::vector<double> row{c.times[i]};
    row.insert(row.end(), c.points[i].data(), c.points[i].data() + c.points[i].size());
    rows.push_back(std::move(row));
  }
  emit(cfg, out, table(cfg, stateHeader(gs), rows));
  return 0;
}

int cmdDissipation(RunConfig& cfg, std::ostream& out)
{
  const GallerySystem gs = load(cfg);
  resolveDefaults(cfg, gs, 0.0);
  cfg.tol.reset();
  const Vec x0 = initialState(cfg, gs);
  const HamiltonianSystem& sys = gs.system;
  const Curve c = integrate_hamilton(sys, x0, cfg.t0, *cfg.t1, *cfg.dt);
  std::vector<std::vector<double>> rows;
  rows.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    const Vec& s = c.points[i];
    rows.push_back({c.times[i], sys.hamiltonian(s.head(sys.m()), s.tail(sys.n() - 1)),
                    dissipation_rate(sys, s)});
  }
  emit(cfg, out, table(cfg, {"t", "H", "rate"}, rows));
  return 0;
}

int cmdHjCheck(RunConfig& cfg, std::ostream& out)
{
  const GallerySystem gs = load(cfg);
  resolveDefaults(cfg, gs, 1e-9);
  if (cfg.section.empty())
  {
    cfg.section = gs.sections.count("reference") || gs.dualSections.empty()
                      ? "reference"
                      : gs.dualSections.begin()->first;
  }
  const DualSection& s = gallery_section(gs, cfg.section);
  const HamiltonianSystem& sys = gs.system;
  std::function<Vec(const Vec&)> residual;
  if (s.space == DualSpace::VStar)
  {
    residual = [&](const Vec& q) { return hj_residual(sys, s, q); };
  }
  else
  {
    residual = [&](const Vec& q) { return hj_residual_dual(sys, s, q); };
  }
  const HJReport report = hj_grid_check(residual, *cfg.box, cfg.grid, *cfg.tol);
  Json j = to_json(report);
  j["config"] = to_json(cfg);
  j["residual"] = s.space == DualSpace::VStar ? "hj_residual" : "hj_residual_dual";
  emit(cfg, out, dump(j));
  return report.pass ? 0 : 1;
}

int cmdLiftVerify(RunConfig& cfg, std::ostream& out)
{
  const GallerySystem gs = load(cfg);
  resolveDefaults(cfg, gs, 1e-6);
  if (cfg.section.empty())
  {
    cfg.section = "reference";
  }
  const DualSection& s = requireVStar(gs, cfg.section);
  try
  {
    const LiftReport report =
        verify_lift(gs.system, s, *cfg.x0, cfg.t0, *cfg.t1, *cfg.dt, *cfg.tol);
    Json j = to_json(report);
    j["config"] = to_json(cfg);
    emit(cfg, out, dump(j));
    return report.pass ? 0 : 1;
  }
  catch (const LiftFailure& e)
  {
    Json j = to_json(e.partial());
    j["config"] = to_json(cfg);
    j["last_good_time"] = number(e.lastGoodTime());
    emit(cfg, out, dump(j));
    throw;
  }
}

int cmdCocycleCheck(RunConfig& cfg, std::ostream& out)
{
  const GallerySystem gs = load(cfg);
  resolveDefaults(cfg, gs, 1e-9);
  if (cfg.section.empty())
  {
    cfg.section = "cocycle";
  }
  const SkewAlgebroid& A = gs.system.algebroid();
  CheckReport report;
  std::string algebroid;
  if (cfg.section == "cocycle")
  {
    algebroid = "E";
    report = check_cocycle(A, basis_dual(A.rank(), 0), *cfg.box, cfg.samples, cfg.seed, *cfg.tol);
  }
  else
  {
    const DualSection& s = gallery_section(gs, cfg.section);
    if (s.space == DualSpace::VStar)
    {
      // A section of V* is tested as a 1-form on the subalgebroid V = ker(phi).
      algebroid = "V";
      report = check_cocycle(v_subalgebroid(A), DualSection{s.field, DualSpace::EStar}, *cfg.box,
                             cfg.samples, cfg.seed, *cfg.tol);
    }
    else
    {
      algebroid = "E";
      report = check_cocycle(A, s, *cfg.box, cfg.samples, cfg.seed, *cfg.tol);
    }
  }
  report.name = gs.id + "." + cfg.section;
  Json j = to_json(report);
  j["config"] = to_json(cfg);
  j["algebroid"] = algebroid;
  emit(cfg, out, dump(j));
  return report.pass ? 0 : 1;
}

int cmdFlagRank(RunConfig& cfg, std::ostream& out)
{
  const GallerySystem gs = load(cfg);
  resolveDefaults(cfg, gs, 0.0);
  cfg.tol.reset();
  // The flag of the constraint distribution: anchor image of V = ker(phi).
  const SkewAlgebroid V = v_subalgebroid(gs.system.algebroid());
  const std::vector<int> ranks = flag_rank(V, *cfg.point, cfg.depth);
  const int dim = gs.system.m();
  const bool full = !ranks.empty() && ranks.back() == dim;
  Json j{{"config", to_json(cfg)},
         {"ranks", ranks},
         {"dim", dim},
         {"bracket_generating", full},
         {"pass", full}};
  emit(cfg, out, dump(j));
  return full ? 0 : 1;
}

MorphismPair parseMap(const std::string& spec)
{
  if (spec == "identity")
  {
    return MorphismPair::identity();
  }
  const std::string prefix = "scale:";
  if (spec.rfind(prefix, 0) == 0)
  {
    const double s = parseDouble(spec.substr(prefix.size()), "--map");
    MorphismPair map;
    map.base = [](const Vec& q) { return q; };
    map.fiber = [s](const Vec&, const Vec& covector) -> Vec { return s * covector; };
    return map;
  }
  throw UsageError("unknown --map '" + spec + "' (expected identity or scale:<s>)");
}

int cmdMorphismCheck(RunConfig& cfg, std::ostream& out)
{
  const GallerySystem gs = load(cfg);
  resolveDefaults(cfg, gs, 1e-6);
  const MorphismPair map = parseMap(cfg.map);
  const HamiltonianSystem& sys = gs.system;
  // Packed source points (q, p0, p): the base box times [-1, 1] in every fiber coordinate.
  Box packed;
  packed.lo = Vec::Constant(sys.m() + sys.n(), -1.0);
  packed.hi = Vec::Constant(sys.m() + sys.n(), 1.0);
  packed.lo.head(sys.m()) = cfg.box->lo;
  packed.hi.head(sys.m()) = cfg.box->hi;
  const auto reports = morphism_check(sys, sys, map, packed, cfg.samples, cfg.seed, *cfg.tol);
  Json j{{"config", to_json(cfg)},
         {"almost_poisson", to_json(reports[0])},
         {"cocycle_related", to_json(reports[1])},
         {"hamiltonian_related", to_json(reports[2])}};
  const bool pass = reports[0].pass && reports[1].pass && reports[2].pass;
  j["pass"] = pass;
  emit(cfg, out, dump(j));
  return pass ? 0 : 1;
}

}  // namespace

Json to_json(const RunConfig& cfg)
{
  Json params = Json::object();
  for (const auto& [name, value] : cfg.params)
  {
    params[name] = number(value);
  }
  Json grid = Json::array();
  for (int g : cfg.grid)
  {
    grid.push_back(g);
  }
  return Json{{"command", cfg.command},
              {"system", cfg.system},
              {"params", params},
              {"omega", cfg.omega.empty() ? Json() : Json(cfg.omega)},
              {"x0", vecOrNull(cfg.x0)},
              {"t0", number(cfg.t0)},
              {"t1", optNumber(cfg.t1)},
              {"dt", optNumber(cfg.dt)},
              {"out", cfg.out},
              {"format", cfg.format},
              {"box", cfg.box ? to_json(*cfg.box) : Json()},
              {"grid", grid},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"tol", optNumber(cfg.tol)},
              {"section", cfg.section},
              {"point", vecOrNull(cfg.point)},
              {"depth", cfg.depth},
              {"map", cfg.map}};
}

std::vector<double> parse_list(const std::string& text)
{
  std::vector<double> values;
  std::size_t start = 0;
  while (true)
  {
    const std::size_t comma = text.find(',', start);
    values.push_back(parseDouble(text.substr(start, comma - start), "list '" + text + "'"));
    if (comma == std::string::npos)
    {
      break;
    }
    start = comma + 1;
  }
  return values;
}

Box parse_box(const std::string& text)
{
  const std::vector<double> v = parse_list(text);
  if (v.size() % 2 != 0)
  {
    throw UsageError("--box expects lo,hi pairs");
  }
  Box b;
  b.lo.resize(static_cast<Eigen::Index>(v.size() / 2));
  b.hi.resize(static_cast<Eigen::Index>(v.size() / 2));
  for (std::size_t i = 0; i < v.size() / 2; ++i)
  {
    b.lo[static_cast<Eigen::Index>(i)] = v[2 * i];
    b.hi[static_cast<Eigen::Index>(i)] = v[2 * i + 1];
  }
  b.validate();
  return b;
}

std::pair<std::string, double> parse_param(const std::string& text)
{
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
  {
    throw UsageError("--param expects name=value, got '" + text + "'");
  }
  return {text.substr(0, eq), parseDouble(text.substr(eq + 1), "--param " + text)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Hamiltonian mechanics and Hamilton-Jacobi checks on skew-symmetric algebroids",
               "algebroid-mech"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> params;
  std::string x0, box, grid, point;
  double t1 = 0.0, dt = 0.0, tol = 0.0;

  auto addSystem = [&](CLI::App* sub) {
    sub->add_option("system", cfg.system, "Gallery id (see 'gallery list')")->required();
    sub->add_option("--param", params, "Parameter override name=value (repeatable)");
    sub->add_option("--omega", cfg.omega, "Table angular velocity of rolling_ball: constant|linear")
        ->check(CLI::IsMember({"constant", "linear"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "Output file (default: standard output)");
  };
  auto addTimes = [&](CLI::App* sub) {
    sub->add_option("--x0", x0,
                    "Initial point: base coordinates (momenta from --section) or a full phase "
                    "state; default: the system's documented start point");
    sub->add_option("--t0", cfg.t0, "Start time")->capture_default_str();
    sub->add_option("--t1", t1, "End time (default: t0 + the system's horizon)");
    sub->add_option("--dt", dt, "RK4 step (default: the system's step, usually 1e-3)");
  };
  auto addTol = [&](CLI::App* sub, const std::string& dflt) {
    sub->add_option("--tol", tol, "Pass threshold (default: " + dflt + ")");
  };
  auto addSampling = [&](CLI::App* sub) {
    sub->add_option("--box", box, "Sampling box lo1,hi1,lo2,hi2,... (default: documented box)");
    sub->add_option("--samples", cfg.samples, "Number of seeded samples")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  };

  CLI::App* gallery = app.add_subcommand("gallery", "Gallery catalogue");
  gallery->require_subcommand(1);
  CLI::App* list = gallery->add_subcommand("list", "Print [{id, params, references, domains}]");
  list->add_option("--out", cfg.out, "Output file (default: standard output)");

  CLI::App* simulate = app.add_subcommand("simulate", "Integrate the Hamilton equations");
  addSystem(simulate);
  addTimes(simulate);
  simulate->add_option("--section", cfg.section, "V* section seeding the momenta (default: reference)");
  simulate->add_option("--format", cfg.format, "csv|json (default: csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* dissipation =
      app.add_subcommand("dissipation", "H and its dissipation rate along a trajectory");
  addSystem(dissipation);
  addTimes(dissipation);
  dissipation->add_option("--section", cfg.section, "V* section seeding the momenta (default: reference)");
  dissipation->add_option("--format", cfg.format, "csv|json (default: csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* hj = app.add_subcommand("hj-check", "Hamilton-Jacobi residual on a grid");
  addSystem(hj);
  hj->add_option("--section", cfg.section, "Section of V* or E* (default: reference)");
  hj->add_option("--box", box, "Grid box lo1,hi1,lo2,hi2,... (default: documented box)");
  hj->add_option("--grid", grid, "Points per axis: one value or one per axis (default: documented)");
  addTol(hj, "1e-9");

  CLI::App* lift = app.add_subcommand("lift-verify", "Compare lifted base curves with the flow");
  addSystem(lift);
  addTimes(lift);
  lift->add_option("--section", cfg.section, "Section of V* (default: reference)");
  addTol(lift, "1e-6");

  CLI::App* cocycle = app.add_subcommand("cocycle-check", "Sampled d-closedness of a 1-form");
  addSystem(cocycle);
  addSampling(cocycle);
  cocycle->add_option("--section", cfg.section,
                      "'cocycle' for e^0, a section of E*, or a section of V* tested on V "
                      "(default: cocycle)");
  addTol(cocycle, "1e-9");

  CLI::App* flag = app.add_subcommand("flag-rank", "Flag ranks of the constraint distribution");
  addSystem(flag);
  flag->add_option("--point", point, "Base point (default: documented start point)");
  flag->add_option("--depth", cfg.depth, "Maximum bracket depth")->capture_default_str();

  CLI::App* morph = app.add_subcommand("morphism-check", "Hamiltonian morphism conditions");
  addSystem(morph);
  addSampling(morph);
  morph->add_option("--map", cfg.map, "identity or scale:<s> (fiber scaling)")->capture_default_str();
  addTol(morph, "1e-6");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp&)
  {
    const CLI::App* shown = &app;
    for (CLI::App* sub : app.get_subcommands())
    {
      shown = sub;
      for (CLI::App* inner : sub->get_subcommands())
      {
        shown = inner;
      }
    }
    out << shown->help();
    return 0;
  }
  catch (const CLI::CallForAllHelp&)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  }
  catch (const CLI::ParseError& e)
  {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try
  {
    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    if (chosen == gallery)
    {
      cfg.command = "gallery list";
      return cmdGalleryList(cfg, out);
    }
    for (const std::string& p : params)
    {
      auto [name, value] = parse_param(p);
      if (cfg.params.count(name))
      {
        throw UsageError("parameter '" + name + "' given twice");
      }
      cfg.params[name] = value;
    }
    if (!x0.empty())
    {
      cfg.x0 = toVec(parse_list(x0));
    }
    if (!point.empty())
    {
      cfg.point = toVec(parse_list(point));
    }
    if (!box.empty())
    {
      cfg.box = parse_box(box);
    }
    if (!grid.empty())
    {
      for (double g : parse_list(grid))
      {
        if (g != std::floor(g))
        {
          throw UsageError("--grid values must be integers");
        }
        cfg.grid.push_back(static_cast<int>(g));
      }
    }
    if (given(chosen, "--t1"))
    {
      cfg.t1 = t1;
    }
    if (given(chosen, "--dt"))
    {
      cfg.dt = dt;
    }
    if (given(chosen, "--tol"))
    {
      cfg.tol = tol;
      if (!(tol >= 0.0))
      {
        throw UsageError("--tol must be non-negative");
      }
    }

    if (chosen == simulate)
    {
      return cmdSimulate(cfg, out);
    }
    if (chosen == dissipation)
    {
      return cmdDissipation(cfg, out);
    }
    if (chosen == hj)
    {
      return cmdHjCheck(cfg, out);
    }
    if (chosen == lift)
    {
      return cmdLiftVerify(cfg, out);
    }
    if (chosen == cocycle)
    {
      return cmdCocycleCheck(cfg, out);
    }
    if (chosen == flag)
    {
      return cmdFlagRank(cfg, out);
    }
    return cmdMorphismCheck(cfg, out);
  }
  catch (const UsageError& e)
  {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  catch (const DomainError& e)
  {
    err << "domain error: " << e.what() << "\n";
    return 2;
  }
  catch (const ConstructionError& e)
  {
    err << "construction error: " << e.what() << "\n";
    return 2;
  }
  catch (const NumericFailure& e)
  {
    err << "numeric failure: " << e.what() << " (last good time " << e.lastGoodTime() << ")\n";
    return 3;
  }
  catch (const std::exception& e)
  {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}

int run(int argc, const char* const* argv)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i)
  {
    args.emplace_back(argv[i]);
  }
  return run(args, std::cout, std::cerr);
}

}  // namespace algebroid_mech
