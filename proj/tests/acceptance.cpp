// Acceptance suite: one PASS/FAIL line per criterion, each at its stated
// tolerance. Exit status is the number of failed criteria.

#include "support.hpp"

#include "heatlab/errors.hpp"
#include "heatlab/fdm.hpp"
#include "heatlab/field_analysis.hpp"
#include "heatlab/modes.hpp"
#include "heatlab/spectral.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace heatlab;
namespace fs = std::filesystem;
namespace ht = heatlab::testing;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

std::string fmt(char const *format, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// ---------------------------------------------------------------- 1

Outcome classical_equivalence()
{
  auto const dpl = ht::lst(1, 1);
  auto const classical = ht::lst();
  double worst = 0;
  std::string detail;
  for (double t : {362.5, 365.0, 370.0})
  {
    auto const a = line_profile_y(dpl, t, 0.2, 60, 60, 201);
    auto const b = line_profile_y(classical, t, 0.2, 60, 60, 201);
    double const peak = b.peak().second;
    double dev = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
      dev = std::max(dev, std::abs(a.values[i] - b.values[i]));
    worst = std::max(worst, dev / peak);
    detail += fmt("t=%g: %.3e; ", t, dev / peak);
  }
  return {worst <= 1e-4, detail + fmt("max deviation / peak %.3e (limit 1e-4)", worst)};
}

// ---------------------------------------------------------------- 2

Outcome peak_distance_convergence()
{
  std::vector<std::pair<int, int>> const truncations{{10, 10}, {20, 20}, {40, 40}, {80, 80}};
  PeakOptions options;
  options.search = PeakSearch::concomitant;
  bool pass = true;
  std::string detail;
  struct Case
  {
    char const *name;
    PlateScenario s;
    double t;
  };
  for (auto const &c : {Case{"LST", ht::lst(), 367.5}, Case{"CT", ht::ct(), 360.0}})
  {
    auto const grid = GridSpec::covering(c.s, 201, 1 + std::lround(200 * c.s.height / c.s.length));
    std::vector<std::vector<double>> d;
    for (double alpha : {1.29e-5, 1.29e-4})
    {
      auto s = c.s;
      s.diffusivity = alpha;
      std::vector<double> row;
      for (auto const &r : source_peak_distance_sweep(s, c.t, truncations, grid, options))
        row.push_back(r.distance);
      for (std::size_t k = 1; k < row.size(); ++k)
        if (!(row[k] < row[k - 1]))
        {
          pass = false;
          detail += fmt("%s alpha=%g not decreasing at M=%d; ", c.name, alpha, truncations[k].first);
        }
      d.push_back(row);
    }
    for (std::size_t k = 0; k < truncations.size(); ++k)
      if (!(d[1][k] <= d[0][k]))
      {
        pass = false;
        detail += fmt("%s M=%d: d(1.29e-4)=%.4f > d(1.29e-5)=%.4f; ", c.name, truncations[k].first, d[1][k], d[0][k]);
      }
    for (std::size_t a = 0; a < 2; ++a)
    {
      detail += fmt("%s alpha=%s d=", c.name, a ? "1.29e-4" : "1.29e-5");
      for (double v : d[a])
        detail += fmt("%.4f ", v);
      detail += "; ";
    }
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- 3

Outcome boundary_and_initial()
{
  std::mt19937_64 rng(2024);
  double worst_edge = 0, worst_start = 0;
  for (int k = 0; k < 5; ++k)
  {
    auto const s = ht::random_scenario(rng);
    auto const grid = GridSpec::covering(s, 61, 47);
    auto const f = temperature(s, grid, 50.0 + 10 * k, 30, 30, QuadratureSpec{});
    for (Eigen::Index i = 0; i < grid.nx; ++i)
      for (Eigen::Index j = 0; j < grid.ny; ++j)
        if (i == 0 || j == 0 || i == grid.nx - 1 || j == grid.ny - 1)
          worst_edge = std::max(worst_edge, std::abs(f.values(i, j) - s.ambient));
    auto const start = temperature(s, grid, 0.0, 30, 30, QuadratureSpec{});
    worst_start = std::max(worst_start, (start.values.array() - s.ambient).abs().maxCoeff());
  }
  return {worst_edge <= 1e-12 && worst_start <= 1e-12,
          fmt("max boundary defect %.3e, max t=0 defect %.3e (limit 1e-12)", worst_edge, worst_start)};
}

// ---------------------------------------------------------------- 4, 5

double trajectory_peak(PlateScenario const &s, double t)
{
  return trajectory_profile(s, t, 40, 40, 720).peak().second;
}

// values[k] must exceed values[k+1] by margin, or stay within slack when `loose`.
bool strictly_ordered(std::vector<double> const &values, double margin)
{
  for (std::size_t k = 1; k < values.size(); ++k)
    if (!(values[k - 1] - values[k] >= margin))
      return false;
  return true;
}

Outcome phase_lag_orderings()
{
  std::vector<double> by_tau_t, by_tau_q;
  for (double tt : {1.0, 2.0, 5.0, 10.0})
    by_tau_t.push_back(trajectory_peak(ht::ct_fast(1, tt), 25));
  for (double tq : {10.0, 5.0, 2.0, 1.0})
    by_tau_q.push_back(trajectory_peak(ht::ct_fast(tq, 1), 25));
  double largest = 0;
  for (double v : by_tau_t)
    largest = std::max(largest, v);
  for (double v : by_tau_q)
    largest = std::max(largest, v);
  double const margin = 0.01 * largest;
  bool const pass = strictly_ordered(by_tau_t, margin) && strictly_ordered(by_tau_q, margin);
  return {pass, fmt("tau_T=1,2,5,10: %.3f %.3f %.3f %.3f; tau_q=10,5,2,1: %.3f %.3f %.3f %.3f; margin %.3f",
                    by_tau_t[0], by_tau_t[1], by_tau_t[2], by_tau_t[3], by_tau_q[0], by_tau_q[1], by_tau_q[2],
                    by_tau_q[3], margin)};
}

Outcome angular_velocity_orderings()
{
  bool pass = true;
  std::string detail;
  for (auto const &[tq, tt] : {std::pair{1.0, 5.0}, std::pair{5.0, 1.0}})
  {
    double const slow = trajectory_peak(ht::ct_fast(tq, tt, 0.1 * pi<double>), 70);
    double const mid = trajectory_peak(ht::ct_fast(tq, tt, 0.2 * pi<double>), 70);
    double const fast = trajectory_peak(ht::ct_fast(tq, tt, 0.4 * pi<double>), 70);
    bool const first = slow > mid;
    bool const second = tq == 1.0 ? mid >= fast * (1 - 0.005) : mid >= fast;
    pass = pass && first && second;
    detail += fmt("(%g,%g): w=0.1pi %.3f, 0.2pi %.3f, 0.4pi %.3f; ", tq, tt, slow, mid, fast);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- 6

Outcome periodic_symmetry()
{
  auto const s = ht::lst(1, 1);
  auto const grid = GridSpec::covering(s, 101, 81);
  auto const a = temperature(s, grid, 365.0, 60, 60, QuadratureSpec{});
  auto const b = temperature(s, grid, 370.0, 60, 60, QuadratureSpec{});
  double const peak = std::max(a.values.maxCoeff(), b.values.maxCoeff());
  double dev = 0;
  for (Eigen::Index i = 0; i < grid.nx; ++i)
    dev = std::max(dev, (a.values.row(i) - b.values.row(grid.nx - 1 - i)).cwiseAbs().maxCoeff());
  return {dev <= 1e-3 * peak, fmt("max |T(x,y,365) - T(L-x,y,370)| / peak = %.3e (limit 1e-3)", dev / peak)};
}

// ---------------------------------------------------------------- 7

Outcome oracle_cross_check()
{
  auto const root = fs::temp_directory_path() / "heatlab_acceptance_oracle";
  bool pass = true;
  std::string detail;
  auto const started = std::chrono::steady_clock::now();
  for (auto const &[name, limit] : {std::pair{"q1_T1", 0.05}, std::pair{"q1_T5", 0.08}, std::pair{"q5_T1", 0.08}})
  {
    auto const out = root / name;
    fs::remove_all(out);
    std::string const cmd = std::string(HEATLAB_CLI) + " oracle --scenario " + HEATLAB_SCENARIO_DIR +
                            "/ct_alpha2_" + name + ".cfg --hx 0.025 --hy 0.025 --dt 0.025 --t-end 25 --out " +
                            out.string() + " > /dev/null";
    if (std::system(cmd.c_str()) != 0)
    {
      pass = false;
      detail += fmt("%s: oracle run failed; ", name);
      continue;
    }
    std::ifstream in(out / "deviation.json");
    auto const report = nlohmann::json::parse(in);
    double const rms = report["rms_relative"].get<double>();
    pass = pass && rms <= limit;
    detail += fmt("%s: rms %.4f (limit %.2f); ", name, rms, limit);
  }
  double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  pass = pass && seconds <= 600;
  return {pass, detail + fmt("%.1f s", seconds)};
}

// ---------------------------------------------------------------- 8

Outcome kernel_properties()
{
  double jump = 0;
  for (double b1 : {0.05, 0.7, 3.0})
    for (double delta : {0.1, 2.0, 40.0})
      for (double e = 1e-16; e > 1e-40; e /= 10)
        jump = std::max(jump, std::abs(kernel(ModeKernel<double>::from_roots(b1, e), delta) -
                                       kernel(ModeKernel<double>::from_roots(b1, -e), delta)));
  double const big = kernel(ModeKernel<double>::from_roots(50, 2500), 1e4);
  bool const finite = std::isfinite(big);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  QuadratureSpec tight;
  tight.abs_tol = 1e-12;
  tight.rel_tol = 1e-10;
  QuadratureSpec direct = tight;
  direct.method = CoefficientMethod::direct;
  double worst = 0;
  for (int k = 0; k < 100; ++k)
  {
    auto s = ht::random_scenario(rng);
    if (s.classical())
      s.lag_q = 0.5;
    auto const table = build_mode_table(s, 40, 40);
    int const i = int(40 * u(rng)), j = int(40 * u(rng));
    double const t = 1 + 399 * u(rng);
    double const a = coefficient_Pmn(table, i, j, s, t, tight);
    double const b = coefficient_Pmn(table, i, j, s, t, direct);
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
  }
  return {jump <= 1e-10 && finite && worst <= 1e-8,
          fmt("jump %.2e (limit 1e-10), K(1e4) = %g, recurrence vs direct max rel %.2e (limit 1e-8)", jump, big, worst)};
}

// ---------------------------------------------------------------- 9

Outcome trajectory_kinematics()
{
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_ratio = 1e300;
  for (int k = 0; k < 50; ++k)
  {
    auto const s = ht::random_scenario(rng);
    double const t = 500 * u(rng);
    double errors[3];
    double const hs[3] = {1e-2, 5e-3, 2.5e-3};
    for (int h = 0; h < 3; ++h)
    {
      Vec2<double> const fd =
          (position(s.trajectory, t + hs[h]) - position(s.trajectory, t - hs[h])) / (2 * hs[h]);
      errors[h] = (fd - velocity(s.trajectory, t)).norm();
    }
    worst_ratio = std::min({worst_ratio, errors[0] / errors[1], errors[1] / errors[2]});
  }
  return {worst_ratio >= 3.5, fmt("smallest error ratio per halving %.3f (limit 3.5)", worst_ratio)};
}

// ---------------------------------------------------------------- 10

Outcome linearity()
{
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (int k = 0; k < 10; ++k)
  {
    auto s = ht::random_scenario(rng);
    s.ambient = 0;
    auto doubled = s;
    doubled.strength *= 2;
    double const t = 1 + 200 * u(rng);
    auto const one = make_series(s, t, 20, 20, QuadratureSpec{});
    auto const two = make_series(doubled, t, 20, 20, QuadratureSpec{});
    for (int p = 0; p < 10; ++p)
    {
      double const x = s.length * u(rng), y = s.height * u(rng);
      double const a = one.at(x, y), b = two.at(x, y);
      worst = std::max(worst, std::abs(b - 2 * a) / std::abs(b));
    }
  }
  return {worst <= 1e-12, fmt("max relative defect %.2e over 100 samples (limit 1e-12)", worst)};
}

} // namespace

int main()
{
  struct Criterion
  {
    int id;
    char const *name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {1, "classical equivalence of equal lags", classical_equivalence},
      {2, "source-peak distance convergence", peak_distance_convergence},
      {3, "boundary and initial exactness", boundary_and_initial},
      {4, "phase-lag peak orderings", phase_lag_orderings},
      {5, "angular-velocity peak orderings", angular_velocity_orderings},
      {6, "periodic mirror symmetry", periodic_symmetry},
      {7, "finite-difference cross-check", oracle_cross_check},
      {8, "kernel regime properties", kernel_properties},
      {9, "trajectory kinematics", trajectory_kinematics},
      {10, "linearity in source strength", linearity},
  };
  int failed = 0;
  for (auto const &c : criteria)
  {
    auto const started = std::chrono::steady_clock::now();
    Outcome outcome;
    try
    {
      outcome = c.run();
    }
    catch (std::exception const &e)
    {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    failed += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " [" << fmt("%.1f", seconds)
              << " s]: " << outcome.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed;
}
