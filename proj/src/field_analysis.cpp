#include "heatlab/field_analysis.hpp"

#include "heatlab/csv.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace heatlab
{

namespace
{

bool on_edge(TemperatureField const &f, Eigen::Index i, Eigen::Index j)
{
  return i == 0 || j == 0 || i == f.grid.nx - 1 || j == f.grid.ny - 1;
}

std::pair<Eigen::Index, Eigen::Index> global_argmax(TemperatureField const &f)
{
  Eigen::Index bi = 0, bj = 0;
  f.values.maxCoeff(&bi, &bj);
  return {bi, bj};
}

std::pair<Eigen::Index, Eigen::Index> ascend_from(TemperatureField const &f, Vec2<double> const &source)
{
  auto const &g = f.grid;
  Eigen::Index i = std::clamp<Eigen::Index>(Eigen::Index(std::lround(source.x() / g.dx())), 0, g.nx - 1);
  Eigen::Index j = std::clamp<Eigen::Index>(Eigen::Index(std::lround(source.y() / g.dy())), 0, g.ny - 1);
  for (;;)
  {
    Eigen::Index ni = i, nj = j;
    for (Eigen::Index di = -1; di <= 1; ++di)
      for (Eigen::Index dj = -1; dj <= 1; ++dj)
      {
        Eigen::Index const a = i + di, b = j + dj;
        if (a < 0 || b < 0 || a >= g.nx || b >= g.ny)
          continue;
        if (f.values(a, b) > f.values(ni, nj))
        {
          ni = a;
          nj = b;
        }
      }
    if (ni == i && nj == j)
      return {i, j};
    i = ni;
    j = nj;
  }
}

} // namespace

PeakReport locate_peak(TemperatureField const &field, Vec2<double> const &source, PeakOptions const &options)
{
  auto const [i, j] = options.search == PeakSearch::global ? global_argmax(field) : ascend_from(field, source);
  if (on_edge(field, i, j))
    throw PeakOnBoundary();

  auto const &g = field.grid;
  auto const &v = field.values;
  PeakReport report;
  report.peak_position = {g.x(i), g.y(j)};
  report.sample_value = v(i, j);
  report.peak_value = v(i, j);
  report.source_position = source;

  if (options.refine)
  {
    double const hx = g.dx();
    double const hy = g.dy();
    double const c = v(i, j);
    Eigen::Vector2d grad((v(i + 1, j) - v(i - 1, j)) / (2 * hx), (v(i, j + 1) - v(i, j - 1)) / (2 * hy));
    double const fxx = (v(i + 1, j) - 2 * c + v(i - 1, j)) / (hx * hx);
    double const fyy = (v(i, j + 1) - 2 * c + v(i, j - 1)) / (hy * hy);
    double const fxy = (v(i + 1, j + 1) - v(i + 1, j - 1) - v(i - 1, j + 1) + v(i - 1, j - 1)) / (4 * hx * hy);
    Eigen::Matrix2d hess;
    hess << fxx, fxy, fxy, fyy;
    if (fxx < 0 && hess.determinant() > 0)
    {
      Eigen::Vector2d step = -hess.ldlt().solve(grad);
      double scale = 1;
      if (std::abs(step.x()) > hx)
        scale = std::min(scale, hx / std::abs(step.x()));
      if (std::abs(step.y()) > hy)
        scale = std::min(scale, hy / std::abs(step.y()));
      step *= scale;
      report.peak_position += step;
      // Along a ray towards the vertex a concave quadratic is increasing.
      report.peak_value = std::max(c, c + grad.dot(step) + 0.5 * step.dot(hess * step));
    }
  }
  report.distance = (report.peak_position - source).norm();
  return report;
}

PeakReport locate_peak(TemperatureSeries<double> const &series, GridSpec const &grid, PeakOptions const &options)
{
  auto report = locate_peak(series.field(grid), position(series.scenario.trajectory, series.time), options);
  report.modes_x = series.modes_x();
  report.modes_y = series.modes_y();
  return report;
}

PeakReport locate_peak(PlateScenario const &s, double t, int modes_x, int modes_y, GridSpec const &grid,
                       PeakOptions const &options, QuadratureSpec const &quad, Parallelism par)
{
  return locate_peak(make_series(s, t, modes_x, modes_y, quad, par), grid, options);
}

std::vector<PeakReport> source_peak_distance_sweep(PlateScenario const &s, double t,
                                                   std::vector<std::pair<int, int>> const &truncations,
                                                   GridSpec const &grid, PeakOptions const &options,
                                                   QuadratureSpec const &quad, Parallelism par)
{
  if (truncations.empty())
    throw ConfigError("peak sweep needs at least one truncation");
  int max_x = 0, max_y = 0;
  for (auto const &[m, n] : truncations)
  {
    if (m < 1 || n < 1)
      throw ConfigError("truncation M, N must be at least 1");
    max_x = std::max(max_x, m);
    max_y = std::max(max_y, n);
  }
  auto const full = make_series(s, t, max_x, max_y, quad, par);
  std::vector<PeakReport> reports;
  reports.reserve(truncations.size());
  for (auto const &[m, n] : truncations)
    reports.push_back(locate_peak(full.truncated(m, n), grid, options));
  return reports;
}

std::pair<double, double> LineProfile::peak() const
{
  auto const it = std::max_element(values.begin(), values.end());
  auto const k = std::size_t(it - values.begin());
  return {parameter.at(k), values.at(k)};
}

LineProfile line_profile_y(TemperatureSeries<double> const &series, double y0, int samples)
{
  double const height = series.scenario.height;
  double const length = series.scenario.length;
  if (!(y0 > 0 && y0 < height))
    throw ConfigError("profile line y0 must lie strictly inside (0, H)");
  if (samples < 2)
    throw ConfigError("a profile needs at least two samples");
  LineProfile profile;
  profile.time = series.time;
  profile.parameter.resize(std::size_t(samples));
  profile.values.resize(std::size_t(samples));
  for (int i = 0; i < samples; ++i)
  {
    double const x = i == samples - 1 ? length : length * (double(i) / double(samples - 1));
    profile.parameter[std::size_t(i)] = x;
    profile.values[std::size_t(i)] = series.at(x, y0);
  }
  return profile;
}

LineProfile line_profile_y(PlateScenario const &s, double t, double y0, int modes_x, int modes_y, int samples,
                           QuadratureSpec const &quad, Parallelism par)
{
  if (!(y0 > 0 && y0 < s.height))
    throw ConfigError("profile line y0 must lie strictly inside (0, H)");
  return line_profile_y(make_series(s, t, modes_x, modes_y, quad, par), y0, samples);
}

LineProfile trajectory_profile(TemperatureSeries<double> const &series, int angles)
{
  auto const &tr = series.scenario.trajectory;
  if (tr.kind != TrajectoryKind::circle && tr.kind != TrajectoryKind::ellipse)
    throw TrajectoryNotClosed();
  if (angles < 2)
    throw ConfigError("a profile needs at least two samples");
  LineProfile profile;
  profile.time = series.time;
  for (int i = 0; i < angles; ++i)
  {
    double const phi = 2 * pi<double> * double(i) / double(angles);
    profile.parameter.push_back(phi);
    profile.values.push_back(
        series.at(tr.center.x() + tr.a * std::cos(phi), tr.center.y() + tr.b * std::sin(phi)));
  }
  return profile;
}

LineProfile trajectory_profile(PlateScenario const &s, double t, int modes_x, int modes_y, int angles,
                               QuadratureSpec const &quad, Parallelism par)
{
  if (s.trajectory.kind != TrajectoryKind::circle && s.trajectory.kind != TrajectoryKind::ellipse)
    throw TrajectoryNotClosed();
  return trajectory_profile(make_series(s, t, modes_x, modes_y, quad, par), angles);
}

void write_profile_csv(std::filesystem::path const &path, LineProfile const &profile)
{
  std::vector<std::vector<double>> rows;
  rows.reserve(profile.values.size());
  for (std::size_t i = 0; i < profile.values.size(); ++i)
    rows.push_back({profile.parameter[i], profile.values[i]});
  write_csv(path, {"param", "value"}, rows);
}

void write_peak_csv(std::filesystem::path const &path, std::vector<PeakReport> const &reports)
{
  std::vector<std::vector<double>> rows;
  for (auto const &r : reports)
    rows.push_back({double(r.modes_x), double(r.modes_y), r.peak_position.x(), r.peak_position.y(), r.peak_value,
                    r.source_position.x(), r.source_position.y(), r.distance});
  write_csv(path, {"M", "N", "x_peak", "y_peak", "T_peak", "x_src", "y_src", "distance"}, rows);
}

} // namespace heatlab
