#include "support.hpp"

#include "heatlab/errors.hpp"
#include "heatlab/field_analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace heatlab;

namespace
{

TemperatureField synthetic(GridSpec const &g, auto &&fn)
{
  TemperatureField f{g, 0, Eigen::MatrixXd(g.nx, g.ny)};
  for (Eigen::Index i = 0; i < g.nx; ++i)
    for (Eigen::Index j = 0; j < g.ny; ++j)
      f.values(i, j) = fn(g.x(i), g.y(j));
  return f;
}

} // namespace

TEST_SUITE("field-analysis")
{
  TEST_CASE("stationary central source peaks at the centre")
  {
    auto s = heatlab::testing::ct_fast(0, 0);
    s.trajectory.a = s.trajectory.b = 0.1;
    s.trajectory.center = {0.4, 0.5};
    s.trajectory.w = 0;
    auto const grid = GridSpec::covering(s, 101, 101);
    auto const r = locate_peak(s, 500.0, 40, 40, grid, PeakOptions{});
    CHECK(r.peak_position.x() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.peak_position.y() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.distance < 1e-9);
  }

  TEST_CASE("refinement finds the vertex of a quadratic")
  {
    GridSpec const g(51, 41, 1, 1);
    auto const f = synthetic(g, [](double x, double y) { return 5 - (x - 0.313) * (x - 0.313) - 2 * (y - 0.4711) * (y - 0.4711); });
    auto const r = locate_peak(f, Vec2<double>(0.3, 0.5), PeakOptions{});
    CHECK(r.peak_position.x() == doctest::Approx(0.313).epsilon(1e-10));
    CHECK(r.peak_position.y() == doctest::Approx(0.4711).epsilon(1e-10));
    CHECK(r.peak_value == doctest::Approx(5).epsilon(1e-12));
    CHECK(r.peak_value >= r.sample_value);
    CHECK(r.distance == doctest::Approx(std::hypot(0.013, 0.0289)).epsilon(1e-8));
  }

  TEST_CASE("unrefined peak is a grid sample and dominates the grid")
  {
    auto const s = heatlab::testing::lst();
    auto const grid = GridSpec::covering(s, 101, 81);
    auto const series = make_series(s, 367.5, 30, 30, QuadratureSpec{});
    auto const field = series.field(grid);
    PeakOptions raw;
    raw.refine = false;
    auto const r = locate_peak(series, grid, raw);
    CHECK(r.peak_value == field.values.maxCoeff());
    CHECK(r.peak_value == r.sample_value);
    double const fx = r.peak_position.x() / grid.dx();
    CHECK(fx == doctest::Approx(std::round(fx)).epsilon(1e-12));
    auto const refined = locate_peak(series, grid, PeakOptions{});
    CHECK(refined.peak_value >= refined.sample_value - 1e-12);
    CHECK(refined.modes_x == 30);
  }

  TEST_CASE("concomitant search follows the hill at the source")
  {
    GridSpec const g(101, 101, 1, 1);
    // Two bumps: the taller one far from the source.
    auto const f = synthetic(g, [](double x, double y) {
      return std::exp(-50 * ((x - 0.3) * (x - 0.3) + (y - 0.3) * (y - 0.3))) +
             2 * std::exp(-50 * ((x - 0.7) * (x - 0.7) + (y - 0.7) * (y - 0.7)));
    });
    PeakOptions near;
    near.search = PeakSearch::concomitant;
    auto const a = locate_peak(f, Vec2<double>(0.32, 0.29), near);
    CHECK(a.peak_position.x() == doctest::Approx(0.3).epsilon(1e-3));
    auto const b = locate_peak(f, Vec2<double>(0.32, 0.29), PeakOptions{});
    CHECK(b.peak_position.x() == doctest::Approx(0.7).epsilon(1e-3));
  }

  TEST_CASE("peak on the boundary is an error")
  {
    GridSpec const g(21, 21, 1, 1);
    auto const f = synthetic(g, [](double x, double) { return x; });
    CHECK_THROWS_AS(locate_peak(f, Vec2<double>(0.5, 0.5), PeakOptions{}), PeakOnBoundary);
  }

  TEST_CASE("distance sweep")
  {
    auto const s = heatlab::testing::lst();
    auto const grid = GridSpec::covering(s, 101, 81);
    CHECK_THROWS_AS(source_peak_distance_sweep(s, 367.5, {}, grid, PeakOptions{}), ConfigError);
    auto const one = source_peak_distance_sweep(s, 367.5, {{20, 20}}, grid, PeakOptions{});
    CHECK(one.size() == 1);
    CHECK(one[0].distance >= 0);
  }

  TEST_CASE("line profile")
  {
    auto const s = heatlab::testing::lst(1, 1);
    auto const series = make_series(s, 365.0, 20, 20, QuadratureSpec{});
    auto const p = line_profile_y(series, 0.2, 101);
    CHECK(p.values.front() == 0);
    CHECK(p.values.back() == 0);
    CHECK(p.parameter.back() == 0.5);
    for (std::size_t i = 1; i < p.parameter.size(); ++i)
      CHECK(p.parameter[i] > p.parameter[i - 1]);
    auto const fine = line_profile_y(series, 0.2, 201);
    for (std::size_t i = 0; i < p.values.size(); ++i)
      CHECK(fine.values[2 * i] == p.values[i]);
    CHECK_THROWS_AS(line_profile_y(series, 0.4, 10), ConfigError);
    CHECK_THROWS_AS(line_profile_y(series, 0.2, 1), ConfigError);
  }

  TEST_CASE("trajectory profile")
  {
    auto const s = heatlab::testing::ct_fast(1, 1);
    auto const series = make_series(s, 25.0, 20, 20, QuadratureSpec{});
    auto const p = trajectory_profile(series, 90);
    CHECK(p.parameter.size() == 90);
    CHECK(p.parameter[0] == 0);
    CHECK(p.parameter.back() < 2 * pi<double>);
    CHECK(p.values[0] == series.at(0.75, 0.5));
    auto const lst = make_series(heatlab::testing::lst(), 1.0, 4, 4, QuadratureSpec{});
    CHECK_THROWS_AS(trajectory_profile(lst, 10), TrajectoryNotClosed);
  }

  TEST_CASE("csv writers")
  {
    auto const dir = std::filesystem::temp_directory_path() / "heatlab_fa_csv";
    std::filesystem::create_directories(dir);
    LineProfile p{{0, 0.5}, {1.25, 2}, 0};
    write_profile_csv(dir / "p.csv", p);
    std::ifstream in(dir / "p.csv");
    std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text == "param,value\n0,1.25\n0.5,2\n");
    PeakReport r;
    r.modes_x = r.modes_y = 10;
    r.distance = 0.125;
    write_peak_csv(dir / "r.csv", {r});
    std::ifstream in2(dir / "r.csv");
    std::string header;
    std::getline(in2, header);
    CHECK(header == "M,N,x_peak,y_peak,T_peak,x_src,y_src,distance");
  }
}
