#ifndef HEATLAB_QUADRATURE_HPP
#define HEATLAB_QUADRATURE_HPP

#include "errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace heatlab
{

/// How convolution coefficients are integrated over [0, t].
enum class CoefficientMethod
{
  direct,    // one adaptive quadrature over [0, t]
  recurrence // state transition over whole trajectory periods plus a remainder
};

struct QuadratureSpec
{
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subintervals = 20000;
  CoefficientMethod method = CoefficientMethod::recurrence;
};

template <typename Scalar, int Dim>
struct QuadratureResult
{
  Eigen::Array<Scalar, Dim, 1> value;
  Eigen::Array<Scalar, Dim, 1> error;
  std::size_t intervals = 0;
  std::size_t evaluations = 0;
};

namespace detail
{

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
template <typename Scalar>
struct KronrodRule15
{
  static constexpr long double xgk[8] = {
      0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
      0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
      0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
      0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
  static constexpr long double wgk[8] = {
      0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
      0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
      0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
      0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
  static constexpr long double wg[4] = {
      0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
      0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};
};

template <typename Scalar, int Dim>
struct Panel
{
  Scalar a, b;
  Eigen::Array<Scalar, Dim, 1> value;
  Eigen::Array<Scalar, Dim, 1> error;
  Scalar priority;

  bool operator<(Panel const &other) const { return priority < other.priority; }
};

template <typename Scalar, int Dim, typename F>
Panel<Scalar, Dim> kronrod15(F &f, Scalar a, Scalar b)
{
  using Value = Eigen::Array<Scalar, Dim, 1>;
  using Rule = KronrodRule15<Scalar>;
  using std::abs;
  using std::pow;

  Scalar const center = (a + b) / 2;
  Scalar const half = (b - a) / 2;

  Value fv[15];
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j)
  {
    Scalar const dx = half * Scalar(Rule::xgk[j]);
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }

  Value resk = Scalar(Rule::wgk[7]) * fv[7];
  Value resg = Scalar(Rule::wg[3]) * fv[7];
  Value resabs = resk.abs();
  for (int j = 0; j < 7; ++j)
  {
    Value const pair = fv[j] + fv[14 - j];
    resk += Scalar(Rule::wgk[j]) * pair;
    resabs += Scalar(Rule::wgk[j]) * (fv[j].abs() + fv[14 - j].abs());
    if (j % 2 == 1)
      resg += Scalar(Rule::wg[j / 2]) * pair;
  }
  Value const mean = resk / 2;
  Value resasc = Scalar(Rule::wgk[7]) * (fv[7] - mean).abs();
  for (int j = 0; j < 7; ++j)
    resasc += Scalar(Rule::wgk[j]) * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());

  Scalar const scale = abs(half);
  Value err = ((resk - resg) * half).abs();
  resasc *= scale;
  resabs *= scale;

  Scalar const eps = std::numeric_limits<Scalar>::epsilon();
  Scalar const tiny = std::numeric_limits<Scalar>::min();
  for (int c = 0; c < err.size(); ++c)
  {
    if (resasc[c] != 0 && err[c] != 0)
      err[c] = resasc[c] * std::min(Scalar(1), pow(Scalar(200) * err[c] / resasc[c], Scalar(1.5)));
    if (resabs[c] > tiny / (50 * eps))
      err[c] = std::max(50 * eps * resabs[c], err[c]);
  }
  return {a, b, resk * half, err, err.maxCoeff()};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (G7-K15) quadrature of a Dim-valued
/// integrand over consecutive breakpoints b[0] < b[1] < ... .
///
/// The worst panel is bisected until every component satisfies
/// err <= max(abs_tol, rel_tol * |I|). Panels from the breakpoints count
/// towards max_subintervals.
template <typename Scalar, int Dim, typename F>
QuadratureResult<Scalar, Dim> integrate_adaptive(F &&f, std::span<Scalar const> breakpoints,
                                                 QuadratureSpec const &spec)
{
  using Value = Eigen::Array<Scalar, Dim, 1>;
  using Panel = detail::Panel<Scalar, Dim>;

  QuadratureResult<Scalar, Dim> out;
  out.value = Value::Zero(Dim);
  out.error = Value::Zero(Dim);
  if (breakpoints.size() < 2)
    return out;

  std::priority_queue<Panel> panels;
  Value total = Value::Zero(Dim);
  Value total_err = Value::Zero(Dim);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
  {
    if (!(breakpoints[i + 1] > breakpoints[i]))
      continue;
    Panel p = detail::kronrod15<Scalar, Dim>(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    panels.push(std::move(p));
  }

  auto converged = [&]() {
    Value const tol = (total.abs() * Scalar(spec.rel_tol)).max(Scalar(spec.abs_tol));
    return (total_err <= tol).all();
  };

  Scalar const eps = std::numeric_limits<Scalar>::epsilon();
  while (!panels.empty() && !converged())
  {
    if (panels.size() >= spec.max_subintervals)
    {
      Value const tol = (total.abs() * Scalar(spec.rel_tol)).max(Scalar(spec.abs_tol));
      throw QuadratureNotConverged(double(total_err.maxCoeff()), double(tol.minCoeff()));
    }
    Panel worst = panels.top();
    using std::abs;
    Scalar const mid = (worst.a + worst.b) / 2;
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 100 * eps * std::max(abs(worst.a), abs(worst.b)))
    {
      // Roundoff floor: the panel cannot be split further.
      Value const tol = (total.abs() * Scalar(spec.rel_tol)).max(Scalar(spec.abs_tol));
      throw QuadratureNotConverged(double(total_err.maxCoeff()), double(tol.minCoeff()));
    }
    panels.pop();
    Panel left = detail::kronrod15<Scalar, Dim>(f, worst.a, mid);
    Panel right = detail::kronrod15<Scalar, Dim>(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_err = total_err.max(Scalar(0));
    panels.push(std::move(left));
    panels.push(std::move(right));
  }

  // Re-sum from the panel list to shed the drift of the running totals.
  out.intervals = panels.size();
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty())
  {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](Panel const &l, Panel const &r) { return l.a < r.a; });
  for (auto const &p : all)
  {
    out.value += p.value;
    out.error += p.error;
  }
  return out;
}

/// Scalar convenience wrapper over integrate_adaptive.
template <typename Scalar, typename F>
QuadratureResult<Scalar, 1> integrate_adaptive_scalar(F &&f, std::span<Scalar const> breakpoints,
                                                      QuadratureSpec const &spec)
{
  auto wrapped = [&f](Scalar x) {
    Eigen::Array<Scalar, 1, 1> v;
    v[0] = f(x);
    return v;
  };
  return integrate_adaptive<Scalar, 1>(wrapped, breakpoints, spec);
}

} // namespace heatlab

#endif // HEATLAB_QUADRATURE_HPP
