#ifndef HEATLAB_FIELD_ANALYSIS_HPP
#define HEATLAB_FIELD_ANALYSIS_HPP

#include "quadrature.hpp"
#include "scenario.hpp"
#include "spectral.hpp"

#include <filesystem>
#include <utility>
#include <vector>

namespace heatlab
{

enum class PeakSearch
{
  global,     // argmax over the whole grid
  concomitant // local maximum reached by steepest ascent from the source node
};

struct PeakOptions
{
  bool refine = true;
  PeakSearch search = PeakSearch::global;
};

struct PeakReport
{
  Vec2<double> peak_position = Vec2<double>::Zero();
  double peak_value = 0;   // fitted maximum when refined, else the grid sample
  double sample_value = 0; // grid sample at the stencil centre
  Vec2<double> source_position = Vec2<double>::Zero();
  double distance = 0;
  int modes_x = 0;
  int modes_y = 0;
};

/// Peak of a sampled field. With refine, one Newton step on the quadratic
/// fitted to the 3x3 stencil around the grid peak; the step is shortened to
/// stay inside the stencil cell and skipped unless the fit is concave.
PeakReport locate_peak(TemperatureField const &field, Vec2<double> const &source, PeakOptions const &options);

PeakReport locate_peak(TemperatureSeries<double> const &series, GridSpec const &grid, PeakOptions const &options);

PeakReport locate_peak(PlateScenario const &s, double t, int modes_x, int modes_y, GridSpec const &grid,
                       PeakOptions const &options, QuadratureSpec const &quad = {}, Parallelism par = {});

/// One report per truncation; the coefficients are computed once at the
/// largest M and N and truncated.
std::vector<PeakReport> source_peak_distance_sweep(PlateScenario const &s, double t,
                                                   std::vector<std::pair<int, int>> const &truncations,
                                                   GridSpec const &grid, PeakOptions const &options,
                                                   QuadratureSpec const &quad = {}, Parallelism par = {});

struct LineProfile
{
  std::vector<double> parameter; // x along y = y0, or central angle phi
  std::vector<double> values;
  double time = 0;

  /// (parameter, value) of the largest sample.
  std::pair<double, double> peak() const;
};

LineProfile line_profile_y(TemperatureSeries<double> const &series, double y0, int samples);
LineProfile line_profile_y(PlateScenario const &s, double t, double y0, int modes_x, int modes_y, int samples,
                           QuadratureSpec const &quad = {}, Parallelism par = {});

/// Temperatures along a closed trajectory at central angles phi_i = 2 pi i / n,
/// counterclockwise from the +x semi-axis.
LineProfile trajectory_profile(TemperatureSeries<double> const &series, int angles);
LineProfile trajectory_profile(PlateScenario const &s, double t, int modes_x, int modes_y, int angles,
                               QuadratureSpec const &quad = {}, Parallelism par = {});

void write_profile_csv(std::filesystem::path const &path, LineProfile const &profile);
void write_peak_csv(std::filesystem::path const &path, std::vector<PeakReport> const &reports);

} // namespace heatlab

#endif // HEATLAB_FIELD_ANALYSIS_HPP
