#ifndef HEATLAB_TESTS_SUPPORT_HPP
#define HEATLAB_TESTS_SUPPORT_HPP

#include "heatlab/scenario.hpp"

#include <random>

namespace heatlab::testing
{

inline PlateScenario table1(TrajectoryKind kind, double tau_q = 0, double tau_t = 0)
{
  PlateScenario s;
  s.strength = 2.5e4;
  s.conductivity = 51.4;
  s.diffusivity = 1.29e-5;
  s.lag_q = tau_q;
  s.lag_t = tau_t;
  s.trajectory.kind = kind;
  s.trajectory.w = 0.2 * pi<double>;
  switch (kind)
  {
  case TrajectoryKind::line_segment:
    s.length = 0.5, s.height = 0.4, s.trajectory.a = 0.2, s.trajectory.b = 0;
    break;
  case TrajectoryKind::circle:
    s.length = 1, s.height = 1, s.trajectory.a = 0.25, s.trajectory.b = 0.25;
    break;
  default:
    s.length = 1, s.height = 0.5, s.trajectory.a = 0.3, s.trajectory.b = 0.2;
    break;
  }
  s.trajectory.center = {s.length / 2, s.height / 2};
  return s;
}

inline PlateScenario lst(double tau_q = 0, double tau_t = 0) { return table1(TrajectoryKind::line_segment, tau_q, tau_t); }
inline PlateScenario ct(double tau_q = 0, double tau_t = 0) { return table1(TrajectoryKind::circle, tau_q, tau_t); }
inline PlateScenario et(double tau_q = 0, double tau_t = 0) { return table1(TrajectoryKind::ellipse, tau_q, tau_t); }

// Circular path with the faster diffusivity used for the phase-lag studies.
inline PlateScenario ct_fast(double tau_q, double tau_t, double w = 0.2 * pi<double>)
{
  auto s = ct(tau_q, tau_t);
  s.diffusivity = 1.29e-2;
  s.trajectory.w = w;
  return s;
}

// A random valid scenario: plate, lags, path and ambient all drawn.
inline PlateScenario random_scenario(std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> u(0, 1);
  PlateScenario s;
  s.length = 0.5 + u(rng);
  s.height = 0.5 + u(rng);
  s.strength = 1 + 1e4 * u(rng);
  s.conductivity = 1 + 50 * u(rng);
  s.diffusivity = std::pow(10.0, -4 + 2 * u(rng));
  s.lag_q = u(rng) < 0.25 ? 0 : 3 * u(rng);
  s.lag_t = 3 * u(rng);
  s.ambient = 100 * u(rng) - 50;
  int const kind = int(3 * u(rng));
  auto &tr = s.trajectory;
  tr.kind = kind == 0 ? TrajectoryKind::line_segment : kind == 1 ? TrajectoryKind::circle : TrajectoryKind::ellipse;
  double const room = 0.4 * std::min(s.length, s.height);
  tr.a = room * (0.2 + 0.8 * u(rng));
  tr.b = tr.kind == TrajectoryKind::line_segment ? 0 : tr.kind == TrajectoryKind::circle ? tr.a : room * (0.2 + 0.7 * u(rng));
  if (tr.kind == TrajectoryKind::ellipse && tr.b == tr.a)
    tr.b *= 0.5;
  tr.w = (u(rng) < 0.5 ? -1 : 1) * (0.05 + u(rng)) * pi<double>;
  tr.center = {s.length / 2, s.height / 2};
  return s;
}

} // namespace heatlab::testing

#endif
