#ifndef HEATLAB_SCENARIO_HPP
#define HEATLAB_SCENARIO_HPP

#include "errors.hpp"
#include "trajectory.hpp"

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace heatlab
{

/// Rectangular plate [0,L]x[0,H] with a moving point source; every quantity
/// is dimensionless. Temperatures are computed as T - T0 and shifted on output.
template <typename Scalar>
struct BasicPlateScenario
{
  Scalar length = 1;       // L
  Scalar height = 1;       // H
  Scalar strength = 1;     // source strength Theta
  Scalar conductivity = 1; // k
  Scalar diffusivity = 1;  // alpha
  Scalar lag_q = 0;        // tau_q, heat-flux lag
  Scalar lag_t = 0;        // tau_T, temperature-gradient lag
  Scalar ambient = 0;      // T0
  Trajectory<Scalar> trajectory;

  /// Fourier branch: tau_q == 0 selects the first-order mode equation.
  bool classical() const { return lag_q == 0; }

  template <typename Other>
  BasicPlateScenario<Other> cast() const
  {
    BasicPlateScenario<Other> out;
    out.length = Other(length);
    out.height = Other(height);
    out.strength = Other(strength);
    out.conductivity = Other(conductivity);
    out.diffusivity = Other(diffusivity);
    out.lag_q = Other(lag_q);
    out.lag_t = Other(lag_t);
    out.ambient = Other(ambient);
    out.trajectory = trajectory.template cast<Other>();
    return out;
  }
};

using PlateScenario = BasicPlateScenario<double>;

enum class IssueCode
{
  non_finite,
  non_positive_geometry,
  non_positive_parameter,
  negative_lag,
  inconsistent_trajectory,
  trajectory_escapes_plate
};

struct ValidationIssue
{
  IssueCode code;
  std::string message;
  std::optional<double> time; // earliest offending time, escape issues only
};

template <typename Scalar>
struct ValidationResult
{
  std::optional<BasicPlateScenario<Scalar>> scenario;
  std::vector<ValidationIssue> issues;

  explicit operator bool() const { return scenario.has_value(); }

  bool has(IssueCode code) const
  {
    for (auto const &issue : issues)
      if (issue.code == code)
        return true;
    return false;
  }

  std::string describe() const
  {
    std::ostringstream os;
    for (auto const &issue : issues)
      os << issue.message << '\n';
    return os.str();
  }
};

namespace detail
{

template <typename Scalar>
bool strictly_inside(BasicPlateScenario<Scalar> const &s, Vec2<Scalar> const &p)
{
  return p.x() > 0 && p.x() < s.length && p.y() > 0 && p.y() < s.height;
}

// Earliest t >= 0 at which an analytic path touches or leaves the open plate.
template <typename Scalar>
std::optional<Scalar> analytic_escape_time(BasicPlateScenario<Scalar> const &s)
{
  using std::abs;
  using std::acos;
  using std::asin;
  auto const &tr = s.trajectory;
  Scalar const cx = tr.center.x();
  Scalar const cy = tr.center.y();
  if (tr.w == 0)
  {
    if (strictly_inside(s, position(tr, Scalar(0))))
      return std::nullopt;
    return Scalar(0);
  }

  Scalar const speed = abs(tr.w);
  bool const ccw = tr.w > 0;
  std::optional<Scalar> earliest;
  auto consider = [&](Scalar angle) {
    Scalar const t = angle / speed;
    if (!earliest || t < *earliest)
      earliest = t;
  };
  auto clamp1 = [](Scalar v) { return std::clamp(v, Scalar(-1), Scalar(1)); };

  // x-walls: cos(wt) is even in w, so the direction does not matter.
  if (cx + tr.a >= s.length)
    consider(0);
  if (cx - tr.a <= 0)
    consider(tr.a > 0 ? acos(clamp1(-cx / tr.a)) : Scalar(0));

  // y-walls: the source first heads up (ccw) or down (cw).
  if (tr.b == 0)
  {
    if (cy <= 0 || cy >= s.height)
      consider(0);
  }
  else
  {
    if (cy + tr.b >= s.height)
    {
      Scalar const a = asin(clamp1((s.height - cy) / tr.b));
      consider(ccw ? a : pi<Scalar> + a);
    }
    if (cy - tr.b <= 0)
    {
      Scalar const a = asin(clamp1(cy / tr.b));
      consider(ccw ? pi<Scalar> + a : a);
    }
  }
  return earliest;
}

// Custom paths: scan the sample span, then bisect the first crossing.
template <typename Scalar>
std::optional<Scalar> sampled_escape_time(BasicPlateScenario<Scalar> const &s)
{
  auto const &tr = s.trajectory;
  Scalar const t0 = tr.samples->x.front();
  Scalar const t1 = tr.samples->x.back();
  auto outside = [&](Scalar t) { return !strictly_inside(s, position(tr, t)); };
  if (outside(Scalar(0)))
    return Scalar(0);
  if (t0 > 0 && outside(t0))
    return Scalar(0);
  int const steps = 8192;
  Scalar prev = t0;
  for (int i = 1; i <= steps; ++i)
  {
    Scalar const t = t0 + (t1 - t0) * Scalar(i) / Scalar(steps);
    if (outside(t))
    {
      Scalar lo = prev, hi = t;
      for (int k = 0; k < 80; ++k)
      {
        Scalar const mid = (lo + hi) / 2;
        (outside(mid) ? hi : lo) = mid;
      }
      return hi;
    }
    prev = t;
  }
  return std::nullopt;
}

} // namespace detail

/// Checks every scenario invariant and reports all violations at once.
///
/// Theta = 0 is accepted: the homogeneous problem is a useful check of the
/// finite-difference oracle.
template <typename Scalar>
ValidationResult<Scalar> validate_scenario(BasicPlateScenario<Scalar> const &s)
{
  using std::isfinite;
  ValidationResult<Scalar> result;
  auto issue = [&](IssueCode code, std::string message) {
    result.issues.push_back({code, std::move(message), std::nullopt});
  };
  auto const &tr = s.trajectory;

  Scalar const values[] = {s.length,  s.height, s.strength, s.conductivity, s.diffusivity,
                           s.lag_q,   s.lag_t,  s.ambient,  tr.a,           tr.b,
                           tr.w,      tr.center.x(), tr.center.y()};
  for (Scalar v : values)
    if (!isfinite(v))
    {
      issue(IssueCode::non_finite, "scenario contains a non-finite value");
      return result;
    }

  if (!(s.length > 0))
    issue(IssueCode::non_positive_geometry, "plate length L must be positive");
  if (!(s.height > 0))
    issue(IssueCode::non_positive_geometry, "plate height H must be positive");
  if (s.strength < 0)
    issue(IssueCode::non_positive_parameter, "source strength theta must be non-negative");
  if (!(s.conductivity > 0))
    issue(IssueCode::non_positive_parameter, "conductivity k must be positive");
  if (!(s.diffusivity > 0))
    issue(IssueCode::non_positive_parameter, "diffusivity alpha must be positive");
  if (s.lag_q < 0)
    issue(IssueCode::negative_lag, "phase lag tau_q must be non-negative");
  if (s.lag_t < 0)
    issue(IssueCode::negative_lag, "phase lag tau_T must be non-negative");

  switch (tr.kind)
  {
  case TrajectoryKind::line_segment:
    if (!(tr.b == 0 && tr.a > 0))
      issue(IssueCode::inconsistent_trajectory, "LST trajectory requires B = 0 and A > 0");
    break;
  case TrajectoryKind::circle:
    if (!(tr.a == tr.b && tr.a > 0))
      issue(IssueCode::inconsistent_trajectory, "CT trajectory requires A = B > 0");
    break;
  case TrajectoryKind::ellipse:
    if (!(tr.a != tr.b && tr.a > 0 && tr.b > 0))
      issue(IssueCode::inconsistent_trajectory, "ET trajectory requires A != B, both positive");
    break;
  case TrajectoryKind::custom:
    if (!tr.samples)
      issue(IssueCode::inconsistent_trajectory, "custom trajectory requires samples");
    break;
  }

  bool const geometry_ok = !result.has(IssueCode::non_positive_geometry) &&
                           !result.has(IssueCode::inconsistent_trajectory);
  if (geometry_ok)
  {
    auto const escape = tr.kind == TrajectoryKind::custom ? detail::sampled_escape_time(s)
                                                          : detail::analytic_escape_time(s);
    if (escape)
    {
      std::ostringstream os;
      os.precision(17);
      os << "source leaves the open plate at t = " << double(*escape);
      result.issues.push_back({IssueCode::trajectory_escapes_plate, os.str(), double(*escape)});
    }
  }

  if (result.issues.empty())
    result.scenario = s;
  return result;
}

/// Returns the scenario or throws ConfigError listing every violation.
template <typename Scalar>
BasicPlateScenario<Scalar> validated(BasicPlateScenario<Scalar> const &s)
{
  auto result = validate_scenario(s);
  if (!result)
    throw ConfigError("invalid scenario:\n" + result.describe());
  return *result.scenario;
}

/// Uniform sampling of [0,L]x[0,H], boundaries included.
struct GridSpec
{
  Eigen::Index nx = 2;
  Eigen::Index ny = 2;
  double length = 1;
  double height = 1;

  GridSpec() = default;
  GridSpec(Eigen::Index nx_, Eigen::Index ny_, double length_, double height_)
      : nx(nx_), ny(ny_), length(length_), height(height_)
  {
    if (nx < 2 || ny < 2)
      throw ConfigError("grid needs at least two samples per direction");
  }

  template <typename Scalar>
  static GridSpec covering(BasicPlateScenario<Scalar> const &s, Eigen::Index nx, Eigen::Index ny)
  {
    return GridSpec(nx, ny, double(s.length), double(s.height));
  }

  // Fractions i/(nx-1); exact 0 and 1 at the ends.
  double fraction_x(Eigen::Index i) const { return double(i) / double(nx - 1); }
  double fraction_y(Eigen::Index j) const { return double(j) / double(ny - 1); }

  double x(Eigen::Index i) const { return i == nx - 1 ? length : length * fraction_x(i); }
  double y(Eigen::Index j) const { return j == ny - 1 ? height : height * fraction_y(j); }

  double dx() const { return length / double(nx - 1); }
  double dy() const { return height / double(ny - 1); }
};

/// Temperatures on a GridSpec at one instant; values(i, j) sits at (x_i, y_j).
struct TemperatureField
{
  GridSpec grid;
  double time = 0;
  Eigen::MatrixXd values;
};

} // namespace heatlab

#endif // HEATLAB_SCENARIO_HPP
