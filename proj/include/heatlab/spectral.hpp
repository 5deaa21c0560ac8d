#ifndef HEATLAB_SPECTRAL_HPP
#define HEATLAB_SPECTRAL_HPP

#include "errors.hpp"
#include "modes.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "scenario.hpp"
#include "trajectory.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <vector>

namespace heatlab
{

template <typename Scalar>
using CoefficientMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Projection of the effective source Q + tau_q dQ/dt onto mode (i, j) at
/// time tau, without the temporal kernel:
///
///   sin(mu x) sin(gamma y) + tau_q [mu x' cos(mu x) sin(gamma y) + gamma y' sin(mu x) cos(gamma y)]
///
/// evaluated at the source position (x, y) and velocity (x', y'). The
/// classical branch keeps only the first product.
template <typename Scalar>
Scalar integrand(ModeTable<Scalar> const &table, int i, int j, BasicPlateScenario<Scalar> const &s,
                 Scalar tau)
{
  auto const state = source_state(s.trajectory, tau);
  Scalar const rx = Scalar(i + 1) * (state.position.x() / s.length);
  Scalar const ry = Scalar(j + 1) * (state.position.y() / s.height);
  Scalar const sx = sin_pi(rx);
  Scalar const sy = sin_pi(ry);
  if (s.classical())
    return sx * sy;
  Scalar const cx = cos_pi(rx);
  Scalar const cy = cos_pi(ry);
  return sx * sy + s.lag_q * (table.mu[i] * state.velocity.x() * cx * sy +
                              table.gamma[j] * state.velocity.y() * sx * cy);
}

namespace detail
{

// Rate beyond which the kernel is negligible (5 e-foldings).
template <typename Scalar>
Scalar kernel_knee(ModeKernel<Scalar> const &k)
{
  Scalar const rate = k.regime == ModeRegime::classical ? k.stiffness : k.beta1;
  return rate > 0 ? Scalar(5) / rate : Scalar(-1);
}

// Breakpoints on [a, b]: quarter periods of the source motion (measured from
// phase_origin) and the kernel knee at b - 5/rate.
template <typename Scalar>
std::vector<Scalar> breakpoints(BasicPlateScenario<Scalar> const &s, ModeKernel<Scalar> const &k,
                                Scalar a, Scalar b, Scalar phase_origin)
{
  using std::ceil;
  std::vector<Scalar> pts{a, b};
  if (is_periodic(s.trajectory))
  {
    Scalar const quarter = period(s.trajectory) / 4;
    long first = long(ceil((a - phase_origin) / quarter));
    for (long q = first;; ++q)
    {
      Scalar const tq = phase_origin + Scalar(q) * quarter;
      if (tq >= b)
        break;
      if (tq > a)
        pts.push_back(tq);
    }
  }
  Scalar const knee = kernel_knee(k);
  if (knee > 0 && b - knee > a)
    pts.push_back(b - knee);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Local contribution to the state (P, P') over [a, b]:
//   integral_a^b (K(b - tau), K'(b - tau)) f(tau + shift) dtau.
template <typename Scalar>
Vec2<Scalar> local_state_integral(ModeTable<Scalar> const &table, int i, int j,
                                  BasicPlateScenario<Scalar> const &s, Scalar a, Scalar b,
                                  Scalar shift, QuadratureSpec const &quad)
{
  if (!(b > a))
    return Vec2<Scalar>::Zero();
  auto const &k = table.kernel(i, j);
  bool const classical = k.regime == ModeRegime::classical;
  auto f = [&](Scalar tau) {
    Scalar const delta = std::max(Scalar(0), b - tau);
    Scalar const src = integrand(table, i, j, s, tau + shift);
    Eigen::Array<Scalar, 2, 1> v;
    v[0] = k.value(delta) * src;
    v[1] = classical ? Scalar(0) : k.derivative(delta) * src;
    return v;
  };
  auto const pts = breakpoints(s, k, a, b, -shift);
  auto const r = integrate_adaptive<Scalar, 2>(f, std::span<Scalar const>(pts), quad);
  return r.value.matrix();
}

} // namespace detail

/// P_mn(t) by a single adaptive G7-K15 quadrature of integrand x kernel over
/// [0, t], pre-split at quarter periods and at the kernel knee.
template <typename Scalar>
Scalar coefficient_direct(ModeTable<Scalar> const &table, int i, int j,
                          BasicPlateScenario<Scalar> const &s, Scalar t, QuadratureSpec const &quad)
{
  if (t < 0)
    throw NegativeElapsed(double(t));
  if (t == 0)
    return Scalar(0);
  auto const &k = table.kernel(i, j);
  auto f = [&](Scalar tau) {
    return k.value(std::max(Scalar(0), t - tau)) * integrand(table, i, j, s, tau);
  };
  auto const pts = detail::breakpoints(s, k, Scalar(0), t, Scalar(0));
  return integrate_adaptive_scalar<Scalar>(f, std::span<Scalar const>(pts), quad).value[0];
}

/// Advances the mode state (P, P') from t0 to t1:
///   state(t1) = Phi(t1 - t0) state(t0) + local integral over [t0, t1].
template <typename Scalar>
Vec2<Scalar> advance_mode_state(ModeTable<Scalar> const &table, int i, int j,
                                BasicPlateScenario<Scalar> const &s, Vec2<Scalar> const &state,
                                Scalar t0, Scalar t1, QuadratureSpec const &quad)
{
  if (t1 < t0)
    throw NegativeElapsed(double(t1 - t0));
  if (t1 == t0)
    return state;
  auto const phi = table.kernel(i, j).transition(t1 - t0);
  return phi * state + detail::local_state_integral(table, i, j, s, t0, t1, Scalar(0), quad);
}

/// Mode state (P, P') at time t from rest at t = 0.
///
/// For periodic trajectories the local integral over one period is the same
/// for every period, so it is computed once and propagated with the
/// transition matrix; only the final partial period is integrated anew.
template <typename Scalar>
Vec2<Scalar> mode_state(ModeTable<Scalar> const &table, int i, int j, BasicPlateScenario<Scalar> const &s,
                        Scalar t, QuadratureSpec const &quad)
{
  using std::floor;
  if (t < 0)
    throw NegativeElapsed(double(t));
  if (t == 0)
    return Vec2<Scalar>::Zero();
  if (quad.method == CoefficientMethod::direct || !is_periodic(s.trajectory))
    return detail::local_state_integral(table, i, j, s, Scalar(0), t, Scalar(0), quad);

  Scalar const tp = period(s.trajectory);
  long const whole = long(floor(t / tp));
  Vec2<Scalar> state = Vec2<Scalar>::Zero();
  if (whole > 0)
  {
    auto const &k = table.kernel(i, j);
    Vec2<Scalar> const once = detail::local_state_integral(table, i, j, s, Scalar(0), tp, Scalar(0), quad);
    auto const phi = k.transition(tp);
    for (long p = 0; p < whole; ++p)
      state = phi * state + once;
  }
  Scalar const rest = t - Scalar(whole) * tp;
  if (rest > 0)
  {
    auto const phi = table.kernel(i, j).transition(rest);
    state = phi * state + detail::local_state_integral(table, i, j, s, Scalar(0), rest, Scalar(0), quad);
  }
  return state;
}

/// P_mn(t) = integral_0^t integrand(tau) K(t - tau) dtau, with K already
/// divided by b2. quad.method selects the direct or the recurrence route.
template <typename Scalar>
Scalar coefficient_Pmn(ModeTable<Scalar> const &table, int i, int j, BasicPlateScenario<Scalar> const &s,
                       Scalar t, QuadratureSpec const &quad)
{
  if (quad.method == CoefficientMethod::direct)
    return coefficient_direct(table, i, j, s, t, quad);
  return mode_state(table, i, j, s, t, quad)[0];
}

/// All P_mn(t) of a table; parallel over modes.
template <typename Scalar>
CoefficientMatrix<Scalar> compute_coefficients(ModeTable<Scalar> const &table,
                                               BasicPlateScenario<Scalar> const &s, Scalar t,
                                               QuadratureSpec const &quad, Parallelism par = {})
{
  CoefficientMatrix<Scalar> p(table.modes_x, table.modes_y);
  std::size_t const count = std::size_t(table.modes_x) * table.modes_y;
  parallel_for(count, par, [&](std::size_t idx) {
    int const i = int(idx % table.modes_x);
    int const j = int(idx / table.modes_x);
    p(i, j) = coefficient_Pmn(table, i, j, s, t, quad);
  });
  return p;
}

/// 4 alpha Theta / (L H k), divided by tau_q off the classical branch.
template <typename Scalar>
Scalar series_prefactor(BasicPlateScenario<Scalar> const &s)
{
  Scalar const base = 4 * s.diffusivity * s.strength / (s.length * s.height * s.conductivity);
  return s.classical() ? base : base / s.lag_q;
}

/// Truncated double sine series with fixed coefficients at one instant.
///
/// Sums run over n first, then m, in increasing mode order with compensated
/// accumulation; the separable form costs O(MN(nx + ny)) per grid.
template <typename Scalar>
struct TemperatureSeries
{
  BasicPlateScenario<Scalar> scenario;
  Scalar time = 0;
  CoefficientMatrix<Scalar> coefficients; // P_mn, M x N

  int modes_x() const { return int(coefficients.rows()); }
  int modes_y() const { return int(coefficients.cols()); }

  /// Keeps the leading M x N block; P_mn does not depend on the truncation.
  TemperatureSeries truncated(int modes_x_, int modes_y_) const
  {
    if (modes_x_ > modes_x() || modes_y_ > modes_y() || modes_x_ < 1 || modes_y_ < 1)
      throw ConfigError("cannot truncate series beyond its computed modes");
    return {scenario, time, coefficients.topLeftCorner(modes_x_, modes_y_)};
  }

  Scalar at(Scalar x, Scalar y) const
  {
    Scalar const fx = x / scenario.length;
    Scalar const fy = y / scenario.height;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sy(modes_y());
    for (int j = 0; j < modes_y(); ++j)
      sy[j] = sin_pi(Scalar(j + 1) * fy);
    CompensatedSum<Scalar> total;
    for (int i = 0; i < modes_x(); ++i)
    {
      CompensatedSum<Scalar> row;
      for (int j = 0; j < modes_y(); ++j)
        row += coefficients(i, j) * sy[j];
      total += sin_pi(Scalar(i + 1) * fx) * row.value();
    }
    return scenario.ambient + series_prefactor(scenario) * total.value();
  }

  TemperatureField field(GridSpec const &grid) const
  {
    int const mx = modes_x();
    int const my = modes_y();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sx(grid.nx, mx), sy(grid.ny, my);
    for (Eigen::Index a = 0; a < grid.nx; ++a)
      for (int i = 0; i < mx; ++i)
        sx(a, i) = sin_pi(Scalar(i + 1) * Scalar(grid.fraction_x(a)));
    for (Eigen::Index b = 0; b < grid.ny; ++b)
      for (int j = 0; j < my; ++j)
        sy(b, j) = sin_pi(Scalar(j + 1) * Scalar(grid.fraction_y(b)));

    // rows(i, b) = sum_n P(i, n) sin(gamma_n y_b)
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rows(mx, grid.ny);
    for (Eigen::Index b = 0; b < grid.ny; ++b)
      for (int i = 0; i < mx; ++i)
      {
        CompensatedSum<Scalar> acc;
        for (int j = 0; j < my; ++j)
          acc += coefficients(i, j) * sy(b, j);
        rows(i, b) = acc.value();
      }

    Scalar const pref = series_prefactor(scenario);
    TemperatureField out{grid, double(time), Eigen::MatrixXd(grid.nx, grid.ny)};
    for (Eigen::Index b = 0; b < grid.ny; ++b)
      for (Eigen::Index a = 0; a < grid.nx; ++a)
      {
        CompensatedSum<Scalar> acc;
        for (int i = 0; i < mx; ++i)
          acc += sx(a, i) * rows(i, b);
        out.values(a, b) = double(scenario.ambient + pref * acc.value());
      }
    return out;
  }
};

/// Truncation used when none is requested: slow diffusion keeps the field
/// sharp around the source and needs more modes.
inline int default_truncation(double alpha) { return alpha < 1e-3 ? 80 : 40; }

template <typename Scalar>
TemperatureSeries<Scalar> make_series(BasicPlateScenario<Scalar> const &s, Scalar t, int modes_x, int modes_y,
                                      QuadratureSpec const &quad, Parallelism par = {})
{
  auto const table = build_mode_table(s, modes_x, modes_y);
  return {s, t, compute_coefficients(table, s, t, quad, par)};
}

/// T(x, y, t) on a grid from the truncated series.
template <typename Scalar>
TemperatureField temperature(BasicPlateScenario<Scalar> const &s, GridSpec const &grid, Scalar t,
                             int modes_x, int modes_y, QuadratureSpec const &quad, Parallelism par = {})
{
  if (t < 0)
    throw NegativeElapsed(double(t));
  return make_series(s, t, modes_x, modes_y, quad, par).field(grid);
}

template <typename Scalar>
Scalar temperature_at_point(BasicPlateScenario<Scalar> const &s, Scalar x, Scalar y, Scalar t, int modes_x,
                            int modes_y, QuadratureSpec const &quad, Parallelism par = {})
{
  if (t < 0)
    throw NegativeElapsed(double(t));
  return make_series(s, t, modes_x, modes_y, quad, par).at(x, y);
}

/// Per-mode states carried forward in time for increasing-time queries.
/// The first step from rest uses the periodic fast path; later steps only
/// integrate the elapsed interval.
template <typename Scalar>
class CoefficientHistory
{
public:
  CoefficientHistory(BasicPlateScenario<Scalar> scenario, int modes_x, int modes_y, QuadratureSpec quad,
                     Parallelism par = {})
      : scenario_(std::move(scenario)), table_(build_mode_table(scenario_, modes_x, modes_y)), quad_(quad),
        par_(par), values_(CoefficientMatrix<Scalar>::Zero(modes_x, modes_y)),
        rates_(CoefficientMatrix<Scalar>::Zero(modes_x, modes_y))
  {
  }

  Scalar time() const { return time_; }
  ModeTable<Scalar> const &table() const { return table_; }
  CoefficientMatrix<Scalar> const &coefficients() const { return values_; }

  void advance_to(Scalar t)
  {
    if (t < time_)
      throw NegativeElapsed(double(t - time_));
    if (t == time_)
      return;
    std::size_t const count = std::size_t(table_.modes_x) * table_.modes_y;
    bool const from_rest = time_ == 0;
    parallel_for(count, par_, [&](std::size_t idx) {
      int const i = int(idx % table_.modes_x);
      int const j = int(idx / table_.modes_x);
      Vec2<Scalar> state;
      if (from_rest)
        state = mode_state(table_, i, j, scenario_, t, quad_);
      else
        state = advance_mode_state(table_, i, j, scenario_, Vec2<Scalar>(values_(i, j), rates_(i, j)), time_, t,
                                   quad_);
      values_(i, j) = state[0];
      rates_(i, j) = state[1];
    });
    time_ = t;
  }

  TemperatureSeries<Scalar> series() const { return {scenario_, time_, values_}; }

private:
  BasicPlateScenario<Scalar> scenario_;
  ModeTable<Scalar> table_;
  QuadratureSpec quad_;
  Parallelism par_;
  Scalar time_ = 0;
  CoefficientMatrix<Scalar> values_;
  CoefficientMatrix<Scalar> rates_;
};

} // namespace heatlab

#endif // HEATLAB_SPECTRAL_HPP
