#ifndef HEATLAB_TRAJECTORY_HPP
#define HEATLAB_TRAJECTORY_HPP

#include "errors.hpp"
#include "numerics.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string_view>
#include <vector>

namespace heatlab
{

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

enum class TrajectoryKind
{
  line_segment, // LST, B = 0
  circle,       // CT, A = B
  ellipse,      // ET, A != B
  custom        // user-sampled path
};

std::string_view to_string(TrajectoryKind kind);
TrajectoryKind trajectory_kind_from_string(std::string_view name);

/// Natural cubic spline through (t_i, v_i) with strictly increasing t_i.
/// Outside the sample span the value is held at the end sample and the
/// derivative is zero.
template <typename Scalar>
class CubicSpline
{
public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  CubicSpline(Vector knots, Vector values) : t_(std::move(knots)), v_(std::move(values))
  {
    Eigen::Index const n = t_.size();
    if (n < 2 || v_.size() != n)
      throw ConfigError("cubic spline needs at least two samples of matching length");
    for (Eigen::Index i = 1; i < n; ++i)
      if (!(t_[i] > t_[i - 1]))
        throw ConfigError("cubic spline sample times must be strictly increasing");

    // Second derivatives from the tridiagonal system (Thomas algorithm),
    // natural end conditions.
    d2_ = Vector::Zero(n);
    if (n == 2)
      return;
    Vector diag(n - 2), upper(n - 2), rhs(n - 2);
    for (Eigen::Index i = 1; i + 1 < n; ++i)
    {
      Scalar const h0 = t_[i] - t_[i - 1];
      Scalar const h1 = t_[i + 1] - t_[i];
      diag[i - 1] = 2 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6 * ((v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0);
    }
    for (Eigen::Index i = 1; i < n - 2; ++i)
    {
      Scalar const lower = t_[i + 1] - t_[i];
      Scalar const factor = lower / diag[i - 1];
      diag[i] -= factor * upper[i - 1];
      rhs[i] -= factor * rhs[i - 1];
    }
    Vector m(n - 2);
    m[n - 3] = rhs[n - 3] / diag[n - 3];
    for (Eigen::Index i = n - 4; i >= 0; --i)
      m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    d2_.segment(1, n - 2) = m;
  }

  Scalar front() const { return t_[0]; }
  Scalar back() const { return t_[t_.size() - 1]; }

  Scalar value(Scalar t) const
  {
    if (t <= front())
      return v_[0];
    if (t >= back())
      return v_[v_.size() - 1];
    auto const [i, a, b, h] = locate(t);
    return a * v_[i] + b * v_[i + 1] +
           ((a * a * a - a) * d2_[i] + (b * b * b - b) * d2_[i + 1]) * h * h / 6;
  }

  Scalar derivative(Scalar t) const
  {
    if (t <= front() || t >= back())
      return Scalar(0);
    auto const [i, a, b, h] = locate(t);
    return (v_[i + 1] - v_[i]) / h +
           (-(3 * a * a - 1) * d2_[i] + (3 * b * b - 1) * d2_[i + 1]) * h / 6;
  }

private:
  struct Segment
  {
    Eigen::Index i;
    Scalar a, b, h;
  };

  Segment locate(Scalar t) const
  {
    auto const *first = t_.data();
    auto const *last = t_.data() + t_.size();
    Eigen::Index i = std::upper_bound(first, last, t) - first - 1;
    i = std::clamp<Eigen::Index>(i, 0, t_.size() - 2);
    Scalar const h = t_[i + 1] - t_[i];
    Scalar const b = (t - t_[i]) / h;
    return {i, 1 - b, b, h};
  }

  Vector t_;
  Vector v_;
  Vector d2_;
};

/// Sampled source path for TrajectoryKind::custom.
template <typename Scalar>
struct SampledPath
{
  CubicSpline<Scalar> x;
  CubicSpline<Scalar> y;
};

/// Parametric source path x(t) = c_x + A cos(wt), y(t) = c_y + B sin(wt),
/// or a spline through user samples when kind == custom.
template <typename Scalar>
struct Trajectory
{
  TrajectoryKind kind = TrajectoryKind::line_segment;
  Scalar a = 0; // semi-axis along x
  Scalar b = 0; // semi-axis along y
  Scalar w = 0; // angular velocity, rad per unit time
  Vec2<Scalar> center = Vec2<Scalar>::Zero();
  std::shared_ptr<SampledPath<Scalar> const> samples;

  template <typename Other>
  Trajectory<Other> cast() const
  {
    Trajectory<Other> out;
    out.kind = kind;
    out.a = Other(a);
    out.b = Other(b);
    out.w = Other(w);
    out.center = center.template cast<Other>();
    if (samples)
      throw ConfigError("custom trajectories cannot change scalar type");
    return out;
  }
};

template <typename Scalar>
struct SourceState
{
  Scalar t;
  Vec2<Scalar> position;
  Vec2<Scalar> velocity;
};

template <typename Scalar>
Vec2<Scalar> position(Trajectory<Scalar> const &traj, Scalar t)
{
  if (traj.kind == TrajectoryKind::custom)
    return {traj.samples->x.value(t), traj.samples->y.value(t)};
  using std::cos;
  using std::sin;
  Scalar const phase = traj.w * t;
  return {traj.center.x() + traj.a * cos(phase), traj.center.y() + traj.b * sin(phase)};
}

template <typename Scalar>
Vec2<Scalar> velocity(Trajectory<Scalar> const &traj, Scalar t)
{
  if (traj.kind == TrajectoryKind::custom)
    return {traj.samples->x.derivative(t), traj.samples->y.derivative(t)};
  using std::cos;
  using std::sin;
  Scalar const phase = traj.w * t;
  return {-traj.a * traj.w * sin(phase), traj.b * traj.w * cos(phase)};
}

template <typename Scalar>
SourceState<Scalar> source_state(Trajectory<Scalar> const &traj, Scalar t)
{
  return {t, position(traj, t), velocity(traj, t)};
}

/// True when the path repeats with period 2*pi/|w|.
template <typename Scalar>
bool is_periodic(Trajectory<Scalar> const &traj)
{
  return traj.kind != TrajectoryKind::custom && traj.w != 0;
}

/// 2*pi/w. Negative w (clockwise motion) gives the positive period 2*pi/|w|.
template <typename Scalar>
Scalar period(Trajectory<Scalar> const &traj)
{
  using std::abs;
  if (traj.kind == TrajectoryKind::custom)
    throw ConfigError("custom trajectories have no period");
  if (traj.w == 0)
    throw ZeroAngularVelocity();
  return 2 * pi<Scalar> / abs(traj.w);
}

} // namespace heatlab

#endif // HEATLAB_TRAJECTORY_HPP
