// dpl_heatlab: fields, profiles, peak sweeps, parameter sweeps and
// finite-difference cross-checks for a plate heated by a moving source.

#include "heatlab/csv.hpp"
#include "heatlab/errors.hpp"
#include "heatlab/fdm.hpp"
#include "heatlab/field_analysis.hpp"
#include "heatlab/scenario_io.hpp"
#include "heatlab/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace heatlab;
using json = nlohmann::ordered_json;

#ifndef HEATLAB_VERSION
#define HEATLAB_VERSION "unknown"
#endif

namespace
{

enum ExitCode
{
  exit_ok = 0,
  exit_config = 2,
  exit_numeric = 3,
  exit_io = 4
};

struct CommonOptions
{
  std::string scenario;
  std::string out = ".";
  std::string modes;
  std::string grid;
  std::optional<double> quad_abs;
  std::optional<double> quad_rel;
  std::optional<unsigned> threads;
};

void add_common(CLI::App &cmd, CommonOptions &o)
{
  cmd.add_option("--scenario", o.scenario, "scenario file")->required();
  cmd.add_option("--out", o.out, "output directory")->capture_default_str();
  cmd.add_option("--modes", o.modes, "truncation M,N (or M for both)");
  cmd.add_option("--grid", o.grid, "sample grid NX,NY");
  cmd.add_option("--quad-abs", o.quad_abs, "quadrature absolute tolerance");
  cmd.add_option("--quad-rel", o.quad_rel, "quadrature relative tolerance");
  cmd.add_option("--threads", o.threads, "worker threads, 0 = all cores");
}

std::vector<std::string> split(std::string const &text, char sep)
{
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty())
      parts.push_back(item);
  return parts;
}

int parse_count(std::string const &token, char const *what)
{
  double const v = parse_double(token);
  if (v != double(int(v)) || v < 1)
    throw ConfigError(std::string(what) + " must be a positive integer, got '" + token + "'");
  return int(v);
}

std::vector<double> parse_list(std::string const &text)
{
  std::vector<double> values;
  for (auto const &token : split(text, ','))
    values.push_back(parse_double(token));
  return values;
}

std::pair<int, int> parse_pair(std::string const &text, char sep, char const *what)
{
  auto const parts = split(text, sep);
  if (parts.size() == 1)
  {
    int const v = parse_count(parts[0], what);
    return {v, v};
  }
  if (parts.size() != 2)
    throw ConfigError(std::string(what) + " expects A" + sep + "B, got '" + text + "'");
  return {parse_count(parts[0], what), parse_count(parts[1], what)};
}

struct Context
{
  std::string subcommand;
  CommonOptions common;
  ScenarioFile file;
  int modes_x = 0;
  int modes_y = 0;
  GridSpec grid;
  QuadratureSpec quad;
  Parallelism par;
  fs::path out;
  json parameters = json::object();

  PlateScenario const &scenario() const { return file.scenario; }
};

Context make_context(std::string subcommand, CommonOptions const &o)
{
  Context c;
  c.subcommand = std::move(subcommand);
  c.common = o;
  c.file = load_scenario(o.scenario);
  auto const &s = c.file.scenario;

  int const fallback = default_truncation(s.diffusivity);
  std::tie(c.modes_x, c.modes_y) = o.modes.empty() ? std::pair{fallback, fallback} : parse_pair(o.modes, ',', "--modes");

  if (o.grid.empty())
  {
    long const ny = 1 + std::lround(200 * s.height / s.length);
    c.grid = GridSpec(201, std::max(2L, ny), s.length, s.height);
  }
  else
  {
    auto const [nx, ny] = parse_pair(o.grid, ',', "--grid");
    if (nx < 2 || ny < 2)
      throw ConfigError("--grid needs at least 2 samples per direction");
    c.grid = GridSpec(nx, ny, s.length, s.height);
  }

  if (o.quad_abs)
    c.quad.abs_tol = *o.quad_abs;
  if (o.quad_rel)
    c.quad.rel_tol = *o.quad_rel;
  if (!(c.quad.abs_tol >= 0 && c.quad.rel_tol >= 0) || (c.quad.abs_tol == 0 && c.quad.rel_tol == 0))
    throw ConfigError("quadrature tolerances must be non-negative and not both zero");

  if (o.threads)
    c.par.threads = *o.threads;
  else if (char const *env = std::getenv("DPL_HEATLAB_THREADS"))
  {
    double const v = parse_double(env);
    if (v < 0 || v != double(unsigned(v)))
      throw ConfigError(std::string("DPL_HEATLAB_THREADS must be a non-negative integer, got '") + env + "'");
    c.par.threads = unsigned(v);
  }
  else
    c.par.threads = 0;

  c.out = o.out;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec)
    throw IoError("cannot create output directory " + c.out.string() + ": " + ec.message());
  return c;
}

std::string utc_timestamp()
{
  std::time_t const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(Context const &c, std::vector<std::string> const &outputs)
{
  json m;
  m["tool"] = "dpl_heatlab";
  m["version"] = HEATLAB_VERSION;
  m["subcommand"] = c.subcommand;
  m["scenario"] = c.common.scenario;
  m["out"] = c.out.string();
  m["modes"] = {c.modes_x, c.modes_y};
  m["grid"] = {c.grid.nx, c.grid.ny};
  m["quadrature"] = {{"abs", c.quad.abs_tol}, {"rel", c.quad.rel_tol}, {"max_subintervals", c.quad.max_subintervals}};
  m["threads"] = c.par.threads;
  m["parameters"] = c.parameters;
  m["scenario_text"] = format_scenario(c.file);
  m["outputs"] = outputs;
  m["timestamp"] = utc_timestamp();
  write_text(c.out / "manifest.json", m.dump(2) + "\n");
}

// Samples of the path for plot overlays: one period, or the sample span of a custom path.
std::vector<Vec2<double>> trajectory_polyline(Trajectory<double> const &tr, int count)
{
  std::vector<Vec2<double>> points;
  double t0 = 0, t1 = 0;
  if (tr.kind == TrajectoryKind::custom)
  {
    t0 = tr.samples->x.front();
    t1 = tr.samples->x.back();
  }
  else if (tr.w != 0)
    t1 = period(tr);
  for (int i = 0; i <= count; ++i)
    points.push_back(position(tr, t0 + (t1 - t0) * i / count));
  return points;
}

std::string field_plot_script(Context const &c, std::string const &csv, double t)
{
  auto const &s = c.scenario();
  auto const src = position(s.trajectory, t);
  std::ostringstream gp;
  gp << "# gnuplot script: heat map of " << csv << " with the source path (dashed) and position (marker)\n"
     << "set terminal pngcairo size 900,760\n"
     << "set output 'field.png'\n"
     << "set datafile separator ','\n"
     << "set view map\n"
     << "set size ratio " << format_double(s.height / s.length) << "\n"
     << "set xrange [0:" << format_double(s.length) << "]\n"
     << "set yrange [0:" << format_double(s.height) << "]\n"
     << "set xlabel 'x'\nset ylabel 'y'\n"
     << "set cblabel 'T'\n"
     << "set palette rgbformulae 22,13,-31\n"
     << "set title 't = " << format_double(t) << "'\n"
     << "$path << EOD\n";
  for (auto const &p : trajectory_polyline(s.trajectory, 400))
    gp << format_double(p.x()) << ',' << format_double(p.y()) << '\n';
  gp << "EOD\n"
     << "$source << EOD\n"
     << format_double(src.x()) << ',' << format_double(src.y()) << "\nEOD\n"
     << "plot '" << csv << "' skip 1 using 1:2:3 with image notitle, \\\n"
     << "     $path using 1:2 with lines dashtype 2 lw 2 lc rgb 'black' title 'trajectory', \\\n"
     << "     $source using 1:2 with points pt 7 ps 1.5 lc rgb 'white' title 'source'\n";
  return gp.str();
}

std::string profile_plot_script(std::vector<std::string> const &files, std::vector<std::string> const &titles,
                                std::string const &xlabel)
{
  std::ostringstream gp;
  gp << "set terminal pngcairo size 900,600\n"
     << "set output 'profile.png'\n"
     << "set datafile separator ','\n"
     << "set xlabel '" << xlabel << "'\nset ylabel 'T'\nset key outside\n"
     << "plot ";
  for (std::size_t i = 0; i < files.size(); ++i)
    gp << (i ? ", \\\n     " : "") << "'" << files[i] << "' skip 1 using 1:2 with lines title '" << titles[i] << "'";
  gp << "\n";
  return gp.str();
}

std::string tag(double v) { return format_double(v); }

// ---------------------------------------------------------------- field

struct FieldArgs
{
  CommonOptions common;
  double t = 0;
};

int cmd_field(FieldArgs const &a)
{
  auto c = make_context("field", a.common);
  c.parameters["t"] = a.t;
  auto const field = temperature(c.scenario(), c.grid, a.t, c.modes_x, c.modes_y, c.quad, c.par);
  write_field_csv(c.out / "field.csv", field);
  write_text(c.out / "field.gp", field_plot_script(c, "field.csv", a.t));
  write_manifest(c, {"field.csv", "field.gp"});
  std::cout << "field: " << c.grid.nx << "x" << c.grid.ny << " samples, max T = " << format_double(field.values.maxCoeff())
            << " -> " << (c.out / "field.csv").string() << "\n";
  return exit_ok;
}

// ---------------------------------------------------------------- profile

struct ProfileArgs
{
  CommonOptions common;
  std::string times;
  std::string kind;
  std::optional<double> y0;
  int samples = 201;
  int angles = 360;
};

LineProfile profile_of(TemperatureSeries<double> const &series, std::string const &kind, double y0, int samples,
                       int angles)
{
  if (kind == "line-y")
    return line_profile_y(series, y0, samples);
  return trajectory_profile(series, angles);
}

void check_profile_kind(PlateScenario const &s, std::string const &kind)
{
  if (kind == "trajectory" && !(s.trajectory.kind == TrajectoryKind::circle || s.trajectory.kind == TrajectoryKind::ellipse))
    throw TrajectoryNotClosed("trajectory profiles need a CT or ET path, scenario has " +
                              std::string(to_string(s.trajectory.kind)));
}

int cmd_profile(ProfileArgs const &a)
{
  auto c = make_context("profile", a.common);
  auto const &s = c.scenario();
  check_profile_kind(s, a.kind);
  auto const times = parse_list(a.times);
  if (times.empty())
    throw ConfigError("--t needs at least one time");
  double const y0 = a.y0.value_or(s.height / 2);
  c.parameters = {{"kind", a.kind}, {"t", times}, {"y0", y0}, {"samples", a.samples}, {"angles", a.angles}};

  std::vector<std::string> outputs, titles;
  for (double t : times)
  {
    auto const series = make_series(s, t, c.modes_x, c.modes_y, c.quad, c.par);
    auto const profile = profile_of(series, a.kind, y0, a.samples, a.angles);
    std::string const name = "profile_" + a.kind + "_t" + tag(t) + ".csv";
    write_profile_csv(c.out / name, profile);
    auto const [where, peak] = profile.peak();
    std::cout << "t = " << format_double(t) << ": peak " << format_double(peak) << " at "
              << (a.kind == "line-y" ? "x = " : "phi = ") << format_double(where) << "\n";
    outputs.push_back(name);
    titles.push_back("t = " + tag(t));
  }
  write_text(c.out / "profile.gp", profile_plot_script(outputs, titles, a.kind == "line-y" ? "x" : "central angle"));
  outputs.push_back("profile.gp");
  write_manifest(c, outputs);
  return exit_ok;
}

// ---------------------------------------------------------------- peak-sweep

struct PeakSweepArgs
{
  CommonOptions common;
  double t = 0;
  std::string truncations = "10,20,40,80";
  std::string alphas;
  std::string search = "concomitant";
  bool no_refine = false;
};

int cmd_peak_sweep(PeakSweepArgs const &a)
{
  auto c = make_context("peak-sweep", a.common);
  std::vector<std::pair<int, int>> truncations;
  for (auto const &token : split(a.truncations, ','))
    truncations.push_back(parse_pair(token, 'x', "truncation"));
  if (truncations.empty())
    throw ConfigError("truncation list is empty");
  if (a.search != "global" && a.search != "concomitant")
    throw ConfigError("--search must be global or concomitant");
  PeakOptions options;
  options.refine = !a.no_refine;
  options.search = a.search == "global" ? PeakSearch::global : PeakSearch::concomitant;

  std::vector<double> alphas = parse_list(a.alphas);
  bool const per_alpha = !alphas.empty();
  if (!per_alpha)
    alphas.push_back(c.scenario().diffusivity);

  json trunc = json::array();
  for (auto const &[m, n] : truncations)
    trunc.push_back({m, n});
  c.parameters = {{"t", a.t}, {"truncations", trunc}, {"alphas", alphas}, {"search", a.search}, {"refine", options.refine}};

  std::vector<std::string> outputs;
  for (double alpha : alphas)
  {
    PlateScenario s = c.scenario();
    s.diffusivity = alpha;
    s = validated(s);
    auto const reports = source_peak_distance_sweep(s, a.t, truncations, c.grid, options, c.quad, c.par);
    std::string const name = per_alpha ? "peaks_alpha" + tag(alpha) + ".csv" : "peaks.csv";
    write_peak_csv(c.out / name, reports);
    outputs.push_back(name);
    std::cout << "alpha = " << format_double(alpha) << ":";
    for (auto const &r : reports)
      std::cout << " d(" << r.modes_x << ")=" << format_double(r.distance);
    std::cout << "\n";
  }
  write_manifest(c, outputs);
  return exit_ok;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs
{
  CommonOptions common;
  std::optional<double> hx, hy, dt, sigma, t_end;
  std::optional<int> store_every;
};

int cmd_oracle(OracleArgs const &a)
{
  auto c = make_context("oracle", a.common);
  auto const &s = c.scenario();
  FdmConfig cfg = c.file.fdm.value_or(FdmConfig{});
  if (a.hx)
    cfg.hx = *a.hx;
  if (a.hy)
    cfg.hy = *a.hy;
  if (a.dt)
    cfg.dt = *a.dt;
  if (a.sigma)
    cfg.sigma = *a.sigma;
  if (a.t_end)
    cfg.t_end = *a.t_end;
  if (a.store_every)
    cfg.store_every = *a.store_every;
  check_fdm_config(s, cfg);
  c.grid = fdm_grid(s, cfg);
  c.parameters = {{"hx", cfg.hx},         {"hy", cfg.hy},       {"dt", cfg.dt}, {"sigma", cfg.smoothing()},
                  {"t_end", cfg.t_end}, {"store_every", cfg.store_every}};

  auto const started = std::chrono::steady_clock::now();
  auto const fdm = solve_fdm(s, cfg);
  auto const fdm_done = std::chrono::steady_clock::now();
  auto const series =
      project_gaussian_source_series(s, cfg.smoothing(), c.grid, cfg.t_end, c.modes_x, c.modes_y, c.quad, c.par);
  auto const series_done = std::chrono::steady_clock::now();

  std::vector<std::string> outputs;
  for (std::size_t i = 0; i + 1 < fdm.fields.size(); ++i)
  {
    std::string const name = "fdm_t" + tag(fdm.fields[i].time) + ".csv";
    write_field_csv(c.out / name, fdm.fields[i]);
    outputs.push_back(name);
  }
  write_field_csv(c.out / "fdm_field.csv", fdm.fields.back());
  write_field_csv(c.out / "series_field.csv", series);
  outputs.insert(outputs.end(), {"fdm_field.csv", "series_field.csv", "deviation.json"});

  auto const d = compare_fields(fdm.fields.back(), series, s.ambient);
  json report = {{"rms_relative", d.rms_relative},
                 {"max_abs", d.max_abs},
                 {"max_relative", d.max_relative},
                 {"steps", fdm.steps},
                 {"fdm_seconds", std::chrono::duration<double>(fdm_done - started).count()},
                 {"series_seconds", std::chrono::duration<double>(series_done - fdm_done).count()}};
  write_text(c.out / "deviation.json", report.dump(2) + "\n");
  write_manifest(c, outputs);
  std::cout << "oracle: rms relative deviation " << format_double(d.rms_relative) << ", max abs "
            << format_double(d.max_abs) << ", " << fdm.steps << " steps\n";
  return exit_ok;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs
{
  CommonOptions common;
  double t = 0;
  std::string tau_q, tau_t, w;
  std::string profile = "auto";
  std::optional<double> y0;
  int samples = 201;
  int angles = 360;
};

int cmd_sweep(SweepArgs const &a)
{
  auto c = make_context("sweep", a.common);
  PlateScenario const &base = c.scenario();
  auto values_or = [](std::string const &text, double fallback) {
    auto v = parse_list(text);
    return v.empty() ? std::vector<double>{fallback} : v;
  };
  auto const qs = values_or(a.tau_q, base.lag_q);
  auto const ts = values_or(a.tau_t, base.lag_t);
  auto const ws = values_or(a.w, base.trajectory.w);

  bool const closed = base.trajectory.kind == TrajectoryKind::circle || base.trajectory.kind == TrajectoryKind::ellipse;
  std::string kind = a.profile == "auto" ? (closed ? "trajectory" : "line-y") : a.profile;
  if (kind != "trajectory" && kind != "line-y" && kind != "none")
    throw ConfigError("--profile must be auto, trajectory, line-y or none");
  check_profile_kind(base, kind);
  double const y0 = a.y0.value_or(base.height / 2);
  c.parameters = {{"t", a.t}, {"tau_q", qs}, {"tau_T", ts}, {"w", ws}, {"profile", kind}, {"y0", y0},
                  {"samples", a.samples}, {"angles", a.angles}};

  std::vector<std::vector<double>> summary;
  std::vector<std::string> outputs, titles;
  for (double q : qs)
    for (double tt : ts)
      for (double w : ws)
      {
        PlateScenario s = base;
        s.lag_q = q;
        s.lag_t = tt;
        s.trajectory.w = w;
        s = validated(s);
        auto const series = make_series(s, a.t, c.modes_x, c.modes_y, c.quad, c.par);
        double where = std::numeric_limits<double>::quiet_NaN();
        double peak = 0;
        if (kind == "none")
        {
          auto const field = series.field(c.grid);
          peak = field.values.maxCoeff();
        }
        else
        {
          auto const profile = profile_of(series, kind, y0, a.samples, a.angles);
          std::tie(where, peak) = profile.peak();
          std::string const name = "sweep_q" + tag(q) + "_T" + tag(tt) + "_w" + tag(w) + ".csv";
          write_profile_csv(c.out / name, profile);
          outputs.push_back(name);
          titles.push_back("tau_q=" + tag(q) + " tau_T=" + tag(tt) + " w=" + tag(w));
        }
        summary.push_back({q, tt, w, where, peak});
        std::cout << "tau_q=" << format_double(q) << " tau_T=" << format_double(tt) << " w=" << format_double(w)
                  << ": peak " << format_double(peak) << "\n";
      }
  if (kind != "none")
  {
    write_text(c.out / "sweep.gp", profile_plot_script(outputs, titles, kind == "line-y" ? "x" : "central angle"));
    outputs.push_back("sweep.gp");
  }
  write_csv(c.out / "sweep.csv", {"tau_q", "tau_T", "w", "param_peak", "T_peak"}, summary);
  outputs.push_back("sweep.csv");
  write_manifest(c, outputs);
  return exit_ok;
}

template <typename Fn>
int guarded(Fn &&fn)
{
  try
  {
    return fn();
  }
  catch (ConfigError const &e)
  {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }
  catch (NegativeElapsed const &e)
  {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }
  catch (QuadratureNotConverged const &e)
  {
    std::cerr << "quadrature failure: " << e.what() << "\n";
    return exit_numeric;
  }
  catch (UnstableConfig const &e)
  {
    std::cerr << "unstable configuration: " << e.what() << "\n";
    return exit_numeric;
  }
  catch (PeakOnBoundary const &e)
  {
    std::cerr << "peak search failed: " << e.what() << "\n";
    return exit_numeric;
  }
  catch (IoError const &e)
  {
    std::cerr << "i/o error: " << e.what() << "\n";
    return exit_io;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Temperature fields of a plate heated by a moving point source (dual-phase-lag conduction)"};
  app.set_version_flag("--version", HEATLAB_VERSION);
  app.require_subcommand(1);

  FieldArgs field;
  auto *field_cmd = app.add_subcommand("field", "temperature field on a grid");
  add_common(*field_cmd, field.common);
  field_cmd->add_option("--t", field.t, "time")->required();

  ProfileArgs profile;
  auto *profile_cmd = app.add_subcommand("profile", "temperature along y = y0 or along a closed path");
  add_common(*profile_cmd, profile.common);
  profile_cmd->add_option("--t", profile.times, "time or comma-separated times")->required();
  profile_cmd->add_option("--kind", profile.kind, "line-y or trajectory")
      ->required()
      ->check(CLI::IsMember({"line-y", "trajectory"}));
  profile_cmd->add_option("--y0", profile.y0, "line height (default H/2)");
  profile_cmd->add_option("--samples", profile.samples, "samples along the line")->capture_default_str();
  profile_cmd->add_option("--angles", profile.angles, "central-angle samples")->capture_default_str();

  PeakSweepArgs peaks;
  auto *peaks_cmd = app.add_subcommand("peak-sweep", "source-to-peak distance against truncation");
  add_common(*peaks_cmd, peaks.common);
  peaks_cmd->add_option("--t", peaks.t, "time")->required();
  peaks_cmd->add_option("--truncations", peaks.truncations, "comma-separated M or MxN")->capture_default_str();
  peaks_cmd->add_option("--alphas", peaks.alphas, "comma-separated diffusivities (default: scenario)");
  peaks_cmd->add_option("--search", peaks.search, "global or concomitant")->capture_default_str();
  peaks_cmd->add_flag("--no-refine", peaks.no_refine, "report the grid sample only");

  OracleArgs oracle;
  auto *oracle_cmd = app.add_subcommand("oracle", "finite-difference cross-check against the smoothed-source series");
  add_common(*oracle_cmd, oracle.common);
  oracle_cmd->add_option("--hx", oracle.hx);
  oracle_cmd->add_option("--hy", oracle.hy);
  oracle_cmd->add_option("--dt", oracle.dt);
  oracle_cmd->add_option("--sigma", oracle.sigma);
  oracle_cmd->add_option("--t-end", oracle.t_end);
  oracle_cmd->add_option("--store-every", oracle.store_every);

  SweepArgs sweep;
  auto *sweep_cmd = app.add_subcommand("sweep", "profiles over the product of tau_q, tau_T and w lists");
  add_common(*sweep_cmd, sweep.common);
  sweep_cmd->add_option("--t", sweep.t, "time")->required();
  sweep_cmd->add_option("--tau-q", sweep.tau_q, "comma-separated tau_q values");
  sweep_cmd->add_option("--tau-T", sweep.tau_t, "comma-separated tau_T values");
  sweep_cmd->add_option("--w", sweep.w, "comma-separated angular velocities (pi suffix allowed)");
  sweep_cmd->add_option("--profile", sweep.profile, "auto, trajectory, line-y or none")->capture_default_str();
  sweep_cmd->add_option("--y0", sweep.y0);
  sweep_cmd->add_option("--samples", sweep.samples)->capture_default_str();
  sweep_cmd->add_option("--angles", sweep.angles)->capture_default_str();

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  if (*field_cmd)
    return guarded([&] { return cmd_field(field); });
  if (*profile_cmd)
    return guarded([&] { return cmd_profile(profile); });
  if (*peaks_cmd)
    return guarded([&] { return cmd_peak_sweep(peaks); });
  if (*oracle_cmd)
    return guarded([&] { return cmd_oracle(oracle); });
  return guarded([&] { return cmd_sweep(sweep); });
}
