#include "heatlab/scenario_io.hpp"

#include "heatlab/csv.hpp"
#include "heatlab/errors.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace heatlab
{

namespace
{

std::string trim(std::string const &s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::set<std::string> const &known_keys()
{
  static std::set<std::string> const keys = {
      "L",         "H",       "theta",       "k",           "alpha",    "tau_q",     "tau_T",
      "T0",        "traj.kind", "traj.A",    "traj.B",      "traj.w",   "traj.cx",   "traj.cy",
      "traj.samples", "fdm.hx", "fdm.hy",    "fdm.dt",      "fdm.sigma", "fdm.t_end", "fdm.store_every"};
  return keys;
}

std::shared_ptr<SampledPath<double> const> load_samples(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read trajectory samples '" + path.string() + "'");
  std::vector<double> t, x, y;
  std::string line;
  while (std::getline(in, line))
  {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == 't')
      continue;
    std::stringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c, ','))
      throw ConfigError("trajectory samples need t,x,y rows: '" + line + "'");
    t.push_back(parse_double(trim(a)));
    x.push_back(parse_double(trim(b)));
    y.push_back(parse_double(trim(c)));
  }
  using Vector = Eigen::VectorXd;
  auto tv = Eigen::Map<Vector>(t.data(), Eigen::Index(t.size()));
  auto xv = Eigen::Map<Vector>(x.data(), Eigen::Index(x.size()));
  auto yv = Eigen::Map<Vector>(y.data(), Eigen::Index(y.size()));
  return std::make_shared<SampledPath<double> const>(
      SampledPath<double>{CubicSpline<double>(tv, xv), CubicSpline<double>(tv, yv)});
}

} // namespace

ScenarioFile parse_scenario(std::string const &text, std::filesystem::path const &base_dir)
{
  std::map<std::string, std::string> entries;
  std::vector<std::string> problems;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line))
  {
    ++number;
    auto const hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty())
      continue;
    auto const eq = line.find('=');
    if (eq == std::string::npos)
    {
      problems.push_back("line " + std::to_string(number) + ": expected key = value");
      continue;
    }
    std::string const key = trim(line.substr(0, eq));
    std::string const value = trim(line.substr(eq + 1));
    if (!known_keys().count(key))
      problems.push_back("line " + std::to_string(number) + ": unknown key '" + key + "'");
    else if (!entries.emplace(key, value).second)
      problems.push_back("line " + std::to_string(number) + ": duplicate key '" + key + "'");
  }

  auto number_of = [&](std::string const &key, std::optional<double> fallback) -> double {
    auto const it = entries.find(key);
    if (it == entries.end())
    {
      if (!fallback)
        problems.push_back("missing required key '" + key + "'");
      return fallback.value_or(0.0);
    }
    try
    {
      return parse_double(it->second);
    }
    catch (ConfigError const &e)
    {
      problems.push_back(key + ": " + e.what());
      return 0.0;
    }
  };

  ScenarioFile file;
  auto &s = file.scenario;
  s.length = number_of("L", std::nullopt);
  s.height = number_of("H", std::nullopt);
  s.strength = number_of("theta", std::nullopt);
  s.conductivity = number_of("k", std::nullopt);
  s.diffusivity = number_of("alpha", std::nullopt);
  s.lag_q = number_of("tau_q", 0.0);
  s.lag_t = number_of("tau_T", 0.0);
  s.ambient = number_of("T0", 0.0);

  auto &tr = s.trajectory;
  if (auto const it = entries.find("traj.kind"); it == entries.end())
    problems.push_back("missing required key 'traj.kind'");
  else
  {
    try
    {
      tr.kind = trajectory_kind_from_string(it->second);
    }
    catch (ConfigError const &e)
    {
      problems.push_back(e.what());
    }
  }
  bool const custom = tr.kind == TrajectoryKind::custom;
  tr.a = number_of("traj.A", custom ? std::optional<double>(0.0) : std::nullopt);
  tr.b = number_of("traj.B", 0.0);
  tr.w = number_of("traj.w", custom ? std::optional<double>(0.0) : std::nullopt);
  tr.center = {number_of("traj.cx", s.length / 2), number_of("traj.cy", s.height / 2)};
  if (auto const it = entries.find("traj.samples"); it != entries.end())
  {
    file.samples_path = it->second;
    if (!custom)
      problems.push_back("traj.samples is only valid with traj.kind = custom");
    else
    {
      try
      {
        tr.samples = load_samples(base_dir / it->second);
      }
      catch (ConfigError const &e)
      {
        problems.push_back(e.what());
      }
    }
  }

  bool any_fdm = false;
  for (auto const &[key, value] : entries)
    any_fdm = any_fdm || key.rfind("fdm.", 0) == 0;
  if (any_fdm)
  {
    FdmConfig cfg;
    cfg.hx = number_of("fdm.hx", cfg.hx);
    cfg.hy = number_of("fdm.hy", cfg.hy);
    cfg.dt = number_of("fdm.dt", cfg.dt);
    if (entries.count("fdm.sigma"))
      cfg.sigma = number_of("fdm.sigma", std::nullopt);
    cfg.t_end = number_of("fdm.t_end", cfg.t_end);
    double const every = number_of("fdm.store_every", 0.0);
    if (every < 0 || every != double(int(every)))
      problems.push_back("fdm.store_every must be a non-negative integer");
    cfg.store_every = int(every);
    file.fdm = cfg;
  }

  if (problems.empty())
  {
    auto result = validate_scenario(s);
    for (auto const &issue : result.issues)
      problems.push_back(issue.message);
  }
  if (!problems.empty())
  {
    std::string message = "invalid scenario:";
    for (auto const &p : problems)
      message += "\n  " + p;
    throw ConfigError(message);
  }
  return file;
}

ScenarioFile load_scenario(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read scenario file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.parent_path());
}

std::string format_scenario(ScenarioFile const &file)
{
  auto const &s = file.scenario;
  auto const &tr = s.trajectory;
  std::ostringstream os;
  auto put = [&](char const *key, double value) { os << key << " = " << format_double(value) << '\n'; };
  put("L", s.length);
  put("H", s.height);
  put("theta", s.strength);
  put("k", s.conductivity);
  put("alpha", s.diffusivity);
  put("tau_q", s.lag_q);
  put("tau_T", s.lag_t);
  put("T0", s.ambient);
  os << "traj.kind = " << to_string(tr.kind) << '\n';
  put("traj.A", tr.a);
  put("traj.B", tr.b);
  put("traj.w", tr.w);
  put("traj.cx", tr.center.x());
  put("traj.cy", tr.center.y());
  if (!file.samples_path.empty())
    os << "traj.samples = " << file.samples_path << '\n';
  if (file.fdm)
  {
    auto const &f = *file.fdm;
    put("fdm.hx", f.hx);
    put("fdm.hy", f.hy);
    put("fdm.dt", f.dt);
    if (f.sigma)
      put("fdm.sigma", *f.sigma);
    put("fdm.t_end", f.t_end);
    put("fdm.store_every", f.store_every);
  }
  return os.str();
}

} // namespace heatlab
