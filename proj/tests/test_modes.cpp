#include "support.hpp"

#include "heatlab/errors.hpp"
#include "heatlab/modes.hpp"

#include <doctest.h>

#include <cmath>

using namespace heatlab;

TEST_SUITE("modes")
{
  TEST_CASE("unit plate first mode")
  {
    auto s = heatlab::testing::ct();
    auto const t = build_mode_table(s, 3, 3);
    CHECK(t.lambda2(0, 0) == doctest::Approx(2 * pi<double> * pi<double>).epsilon(1e-15));
    CHECK(t.classical);
    CHECK(t.regime(0, 0) == ModeRegime::classical);
    CHECK(t.kernel(0, 0).stiffness == doctest::Approx(s.diffusivity * 2 * pi<double> * pi<double>));
    for (int i = 1; i < 3; ++i)
    {
      CHECK(t.mu[i] > t.mu[i - 1]);
      CHECK(t.gamma[i] > t.gamma[i - 1]);
    }
  }

  TEST_CASE("beta constants against extended precision")
  {
    auto const s = heatlab::testing::ct(1, 1);
    auto const t = build_mode_table(s, 1, 1);
    long double const a = 1.29e-5L;
    long double const l2 = 2 * std::acos(-1.0L) * std::acos(-1.0L);
    long double const damping = 1 + a * l2;
    long double const b1 = damping / 2;
    long double const b2 = std::sqrt(damping * damping - 4 * a * l2) / 2;
    auto const &k = t.kernel(0, 0);
    CHECK(k.regime == ModeRegime::real);
    CHECK(double(k.beta1) == doctest::Approx(double(b1)).epsilon(1e-15));
    CHECK(double(k.beta2) == doctest::Approx(double(b2)).epsilon(1e-12));
    CHECK(k.beta1 == doctest::Approx(0.5001273).epsilon(1e-7));
    CHECK(k.beta2 == doctest::Approx(0.4998727).epsilon(1e-7));
  }

  TEST_CASE("regime follows the sign of the discriminant")
  {
    auto s = heatlab::testing::ct(5, 1);
    s.diffusivity = 1.29e-2;
    auto const t = build_mode_table(s, 20, 20);
    int oscillatory = 0;
    for (int j = 0; j < 20; ++j)
      for (int i = 0; i < 20; ++i)
      {
        long double const l2 = t.lambda2(i, j);
        long double const d = std::pow(1 + 1.29e-2L * l2, 2) - 4 * 1.29e-2L * 5 * l2;
        auto const r = t.regime(i, j);
        CHECK(r == (d > 0 ? ModeRegime::real : ModeRegime::oscillatory));
        oscillatory += r == ModeRegime::oscillatory;
      }
    CHECK(oscillatory > 0);
  }

  TEST_CASE("exact zero discriminant is degenerate")
  {
    // alpha = 1/4, tau_T = 0 and tau_q = 1/lambda^2 give D = 1 - (1/l2) l2.
    bool found = false;
    for (int n = 1; n < 40 && !found; ++n)
    {
      PlateScenario s = heatlab::testing::ct();
      s.diffusivity = 0.25;
      s.length = s.height = 1 + 0.01 * n;
      s.trajectory.center = {s.length / 2, s.height / 2};
      double const mu = pi<double> / s.length;
      double const l2 = mu * mu + mu * mu;
      s.lag_q = 1 / l2;
      if (4 * s.diffusivity * s.lag_q * l2 != 1)
        continue;
      found = true;
      auto const t = build_mode_table(s, 1, 1);
      CHECK(t.regime(0, 0) == ModeRegime::degenerate);
      CHECK(kernel(t.kernel(0, 0), 2.0) == doctest::Approx(2 * std::exp(-2 * t.kernel(0, 0).beta1)));
    }
    CHECK(found);
  }

  TEST_CASE("kernel values")
  {
    auto const real = ModeKernel<double>::from_roots(0.5, 0.0625);
    CHECK(kernel(real, 0.0) == 0);
    CHECK(kernel(real, 2.0) == doctest::Approx(std::exp(-1.0) * std::sinh(0.5) / 0.25).epsilon(1e-15));
    CHECK(kernel(ModeKernel<double>::from_roots(0.5, -0.0625), 0.0) == 0);
    CHECK(kernel(ModeKernel<double>::from_roots(0.5, 0.0), 0.0) == 0);
    CHECK(kernel(ModeKernel<double>::classical(0.3), 0.0) == 1);
    auto const osc = ModeKernel<double>::from_roots(0.5, -0.0625);
    CHECK(kernel(osc, 2.0) == doctest::Approx(std::exp(-1.0) * std::sin(0.5) / 0.25).epsilon(1e-15));
    CHECK_THROWS_AS(kernel(real, -1.0), NegativeElapsed);
  }

  TEST_CASE("degenerate kernel is the limit of the real regime")
  {
    double const b1 = 0.8;
    double const delta = 3;
    double const limit = kernel(ModeKernel<double>::from_roots(b1, 0.0), delta);
    double previous = 1;
    for (double b2 = 0.1; b2 > 1e-4; b2 /= 2)
    {
      double const err = std::abs(kernel(ModeKernel<double>::from_roots(b1, b2 * b2), delta) - limit) / limit;
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous < 1e-7);
  }

  TEST_CASE("kernel is continuous across the degenerate point")
  {
    for (double b1 : {0.05, 0.7, 3.0})
      for (double delta : {0.1, 2.0, 40.0})
      {
        double const k0 = kernel(ModeKernel<double>::from_roots(b1, 0.0), delta);
        for (double e = 1e-16; e > 1e-40; e /= 10)
        {
          double const up = kernel(ModeKernel<double>::from_roots(b1, e), delta);
          double const down = kernel(ModeKernel<double>::from_roots(b1, -e), delta);
          CHECK(std::abs(up - k0) <= 1e-10);
          CHECK(std::abs(down - k0) <= 1e-10);
        }
      }
  }

  TEST_CASE("no overflow for large arguments")
  {
    auto const k = ModeKernel<double>::from_roots(50, 2500);
    double const v = kernel(k, 1e4);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(0.01));
    CHECK(std::isfinite(k.derivative(1e4)));
    auto const stiff = ModeKernel<double>::from_roots(1e3, 1e6 - 1);
    CHECK(std::isfinite(kernel(stiff, 1e6)));
    CHECK(kernel(stiff, 1e6) >= 0);
  }

  TEST_CASE("derivative matches finite differences in every regime")
  {
    for (auto const &k : {ModeKernel<double>::from_roots(0.5, 0.0625), ModeKernel<double>::from_roots(0.5, 0.01),
                          ModeKernel<double>::from_roots(0.5, -0.3), ModeKernel<double>::from_roots(0.5, 0.0),
                          ModeKernel<double>::classical(0.4)})
      for (double d : {0.3, 1.0, 7.0})
      {
        double const h = 1e-5;
        double const fd = (k.value(d + h) - k.value(d - h)) / (2 * h);
        CHECK(k.derivative(d) == doctest::Approx(fd).epsilon(1e-8).scale(1e-3));
      }
  }

  TEST_CASE("transition matrix composes")
  {
    for (auto const &k : {ModeKernel<double>::from_roots(0.5, 0.0625), ModeKernel<double>::from_roots(0.5, -0.3),
                          ModeKernel<double>::from_roots(0.5, 0.0)})
    {
      Eigen::Matrix2d const ab = k.transition(1.3) * k.transition(0.4);
      Eigen::Matrix2d const direct = k.transition(1.7);
      CHECK((ab - direct).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}
