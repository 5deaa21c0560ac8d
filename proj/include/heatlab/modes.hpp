#ifndef HEATLAB_MODES_HPP
#define HEATLAB_MODES_HPP

#include "errors.hpp"
#include "numerics.hpp"
#include "scenario.hpp"

#include <Eigen/Core>

#include <cmath>
#include <vector>

namespace heatlab
{

/// Temporal behaviour of one spatial mode.
///
/// With tau_q > 0 the mode amplitude obeys P'' + 2 b1 P' + (b1^2 - b2^2) P = f,
/// whose discriminant sign picks one of three closed forms for the impulse
/// response. tau_q = 0 leaves the first-order equation P' + alpha lambda^2 P = f.
enum class ModeRegime
{
  real,        // b2^2 > 0: two real decay rates b1 -+ b2
  oscillatory, // b2^2 < 0: damped oscillation at |b2|
  degenerate,  // b2 = 0: critically damped
  classical    // tau_q = 0
};

/// Impulse response K of one mode and its derivative.
///
/// K(d) = exp(-b1 d) sinh(b2 d) / b2, continued analytically to
/// exp(-b1 d) sin(|b2| d) / |b2| and d exp(-b1 d); classical modes use
/// K(d) = exp(-rate d). Exponentials are only ever taken of non-positive
/// arguments.
template <typename Scalar>
struct ModeKernel
{
  ModeRegime regime = ModeRegime::classical;
  Scalar beta1 = 0;     // decay rate b1
  Scalar beta2 = 0;     // |b2|
  Scalar stiffness = 0; // b1^2 - b2^2 (signed b2^2), or the classical rate

  static ModeKernel classical(Scalar rate) { return {ModeRegime::classical, 0, 0, rate}; }

  /// Classifies by the sign of b2^2, exactly.
  static ModeKernel from_roots(Scalar beta1, Scalar beta2_squared)
  {
    using std::sqrt;
    ModeKernel k;
    k.beta1 = beta1;
    k.beta2 = sqrt(beta2_squared < 0 ? -beta2_squared : beta2_squared);
    k.regime = beta2_squared > 0   ? ModeRegime::real
               : beta2_squared < 0 ? ModeRegime::oscillatory
                                   : ModeRegime::degenerate;
    k.stiffness = beta1 * beta1 - beta2_squared;
    return k;
  }

  // Slower of the two real decay rates, b1 - b2, without cancellation.
  Scalar slow_rate() const
  {
    Scalar const sum = beta1 + beta2;
    return sum > 0 ? stiffness / sum : Scalar(0);
  }

  Scalar value(Scalar delta) const
  {
    using std::exp;
    using std::expm1;
    using std::sin;
    if (delta < 0)
      throw NegativeElapsed(double(delta));
    switch (regime)
    {
    case ModeRegime::classical:
      return exp(-stiffness * delta);
    case ModeRegime::real:
      return exp(-slow_rate() * delta) * (-expm1(-2 * beta2 * delta)) / (2 * beta2);
    case ModeRegime::oscillatory:
      return exp(-beta1 * delta) * sin(beta2 * delta) / beta2;
    case ModeRegime::degenerate:
      return delta * exp(-beta1 * delta);
    }
    return Scalar(0);
  }

  Scalar derivative(Scalar delta) const
  {
    using std::cos;
    using std::exp;
    using std::expm1;
    using std::sin;
    if (delta < 0)
      throw NegativeElapsed(double(delta));
    switch (regime)
    {
    case ModeRegime::classical:
      return -stiffness * exp(-stiffness * delta);
    case ModeRegime::real: {
      Scalar const slow = slow_rate();
      Scalar const fast = beta1 + beta2;
      if (2 * beta2 * delta > Scalar(0.5))
        return (fast * exp(-fast * delta) - slow * exp(-slow * delta)) / (2 * beta2);
      return exp(-slow * delta) * (1 - fast * (-expm1(-2 * beta2 * delta)) / (2 * beta2));
    }
    case ModeRegime::oscillatory:
      return exp(-beta1 * delta) * (cos(beta2 * delta) - beta1 * sin(beta2 * delta) / beta2);
    case ModeRegime::degenerate:
      return exp(-beta1 * delta) * (1 - beta1 * delta);
    }
    return Scalar(0);
  }

  /// Propagator of the state (P, P') over an elapsed time delta. Classical
  /// modes only carry P; their second row and column are zero.
  Eigen::Matrix<Scalar, 2, 2> transition(Scalar delta) const
  {
    Eigen::Matrix<Scalar, 2, 2> phi;
    if (regime == ModeRegime::classical)
    {
      phi << value(delta), 0, 0, 0;
      return phi;
    }
    Scalar const k = value(delta);
    Scalar const dk = derivative(delta);
    phi << dk + 2 * beta1 * k, k, -stiffness * k, dk;
    return phi;
  }
};

template <typename Scalar>
Scalar kernel(ModeKernel<Scalar> const &mode, Scalar delta)
{
  return mode.value(delta);
}

/// Per-mode data of a truncated expansion, m in [1, M], n in [1, N].
/// Storage is zero-based: index (i, j) holds mode (i + 1, j + 1).
template <typename Scalar>
struct ModeTable
{
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int modes_x = 0; // M
  int modes_y = 0; // N
  Array mu;        // m pi / L
  Array gamma;     // n pi / H
  Grid lambda2;    // mu^2 + gamma^2
  std::vector<ModeKernel<Scalar>> kernels;

  bool classical = false;

  ModeKernel<Scalar> const &kernel(int i, int j) const { return kernels[std::size_t(j) * modes_x + i]; }
  ModeRegime regime(int i, int j) const { return kernel(i, j).regime; }
};

template <typename Scalar>
ModeTable<Scalar> build_mode_table(BasicPlateScenario<Scalar> const &s, int modes_x, int modes_y)
{
  if (modes_x < 1 || modes_y < 1)
    throw ConfigError("truncation M, N must be at least 1");

  ModeTable<Scalar> table;
  table.modes_x = modes_x;
  table.modes_y = modes_y;
  table.classical = s.classical();
  table.mu.resize(modes_x);
  table.gamma.resize(modes_y);
  for (int i = 0; i < modes_x; ++i)
    table.mu[i] = Scalar(i + 1) * pi<Scalar> / s.length;
  for (int j = 0; j < modes_y; ++j)
    table.gamma[j] = Scalar(j + 1) * pi<Scalar> / s.height;

  table.lambda2.resize(modes_x, modes_y);
  table.kernels.resize(std::size_t(modes_x) * modes_y);
  Scalar const alpha = s.diffusivity;
  for (int j = 0; j < modes_y; ++j)
    for (int i = 0; i < modes_x; ++i)
    {
      Scalar const l2 = table.mu[i] * table.mu[i] + table.gamma[j] * table.gamma[j];
      table.lambda2(i, j) = l2;
      auto &k = table.kernels[std::size_t(j) * modes_x + i];
      if (s.classical())
      {
        k = ModeKernel<Scalar>::classical(alpha * l2);
        continue;
      }
      Scalar const tq = s.lag_q;
      Scalar const damping = 1 + alpha * s.lag_t * l2;
      Scalar const discriminant = damping * damping - 4 * alpha * tq * l2;
      Scalar const beta1 = damping / (2 * tq);
      k = ModeKernel<Scalar>::from_roots(beta1, discriminant / (4 * tq * tq));
      // b1^2 - b2^2 = alpha lambda^2 / tau_q exactly; prefer it to the difference.
      k.stiffness = alpha * l2 / tq;
    }
  return table;
}

} // namespace heatlab

#endif // HEATLAB_MODES_HPP
