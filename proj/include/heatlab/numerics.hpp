#ifndef HEATLAB_NUMERICS_HPP
#define HEATLAB_NUMERICS_HPP

#include <cmath>
#include <numbers>

namespace heatlab
{

template <typename Scalar>
inline constexpr Scalar pi = std::numbers::pi_v<Scalar>;

/// sin(pi * r) with exact zeros at every integer r.
///
/// The eigenfunctions sin(m*pi*x/L) are evaluated through this so that
/// boundary samples (x/L in {0, 1}) vanish identically rather than to
/// within m * 1e-16.
template <typename Scalar>
Scalar sin_pi(Scalar r)
{
  using std::fmod;
  using std::sin;
  r = fmod(r, Scalar(2));
  if (r < 0)
    r += Scalar(2);
  if (r == 0 || r == 1 || r == 2)
    return Scalar(0);
  Scalar sign = 1;
  if (r > 1)
  {
    r -= 1;
    sign = -1;
  }
  if (r > Scalar(0.5))
    r = 1 - r;
  return sign * sin(pi<Scalar> * r);
}

/// cos(pi * r) with exact zeros at half-integers.
template <typename Scalar>
Scalar cos_pi(Scalar r)
{
  using std::cos;
  using std::fmod;
  r = fmod(r, Scalar(2));
  if (r < 0)
    r += Scalar(2);
  if (r > 1)
    r = 2 - r;
  if (r == Scalar(0.5))
    return Scalar(0);
  if (r < Scalar(0.25))
    return cos(pi<Scalar> * r);
  return sin_pi(Scalar(0.5) - r);
}

// Neumaier's variant of Kahan compensated summation.
template <typename Scalar>
class CompensatedSum
{
public:
  void add(Scalar x) noexcept
  {
    using std::abs;
    Scalar const t = sum_ + x;
    if (abs(sum_) >= abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }

  CompensatedSum &operator+=(Scalar x) noexcept
  {
    add(x);
    return *this;
  }

  Scalar value() const noexcept { return sum_ + carry_; }

private:
  Scalar sum_{0};
  Scalar carry_{0};
};

} // namespace heatlab

#endif // HEATLAB_NUMERICS_HPP
