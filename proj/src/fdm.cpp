#include "heatlab/fdm.hpp"

#include "heatlab/errors.hpp"
#include "heatlab/numerics.hpp"
#include "heatlab/spectral.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <string>

namespace heatlab
{

double FdmConfig::smoothing() const { return sigma.value_or(3 * std::max(hx, hy)); }

namespace
{

int node_count(double extent, double h, char const *name)
{
  double const cells = extent / h;
  long const rounded = std::lround(cells);
  if (rounded < 2 || std::abs(cells - double(rounded)) > 1e-6 * cells)
    throw UnstableConfig(std::string("fdm.") + name + " must divide the plate into at least two equal cells");
  return int(rounded) + 1;
}

double max_source_speed(Trajectory<double> const &tr)
{
  if (tr.kind != TrajectoryKind::custom)
    return std::abs(tr.w) * std::max(tr.a, tr.b);
  double const t0 = tr.samples->x.front();
  double const t1 = tr.samples->x.back();
  double best = 0;
  for (int i = 0; i <= 4096; ++i)
    best = std::max(best, velocity(tr, t0 + (t1 - t0) * i / 4096.0).norm());
  return best;
}

constexpr double sqrt_pi = 1.7724538509055160273;

double gauss(double u, double sigma) { return std::exp(-(u * u) / (sigma * sigma)) / (sqrt_pi * sigma); }

int image_count(double sigma, double extent) { return 1 + int(std::ceil(10 * sigma / (2 * extent))); }

// Second-order 5-point Laplacian on interior nodes, homogeneous Dirichlet data.
Eigen::SparseMatrix<double> laplacian(int inner_x, int inner_y, double hx, double hy)
{
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(std::size_t(5) * inner_x * inner_y);
  double const cx = 1 / (hx * hx);
  double const cy = 1 / (hy * hy);
  for (int j = 0; j < inner_y; ++j)
    for (int i = 0; i < inner_x; ++i)
    {
      int const k = i + inner_x * j;
      entries.emplace_back(k, k, -2 * cx - 2 * cy);
      if (i > 0)
        entries.emplace_back(k, k - 1, cx);
      if (i + 1 < inner_x)
        entries.emplace_back(k, k + 1, cx);
      if (j > 0)
        entries.emplace_back(k, k - inner_x, cy);
      if (j + 1 < inner_y)
        entries.emplace_back(k, k + inner_x, cy);
    }
  Eigen::SparseMatrix<double> lap(inner_x * inner_y, inner_x * inner_y);
  lap.setFromTriplets(entries.begin(), entries.end());
  return lap;
}

class SourceSampler
{
public:
  SourceSampler(PlateScenario const &s, double sigma, int inner_x, int inner_y, double hx, double hy)
      : s_(s), sigma_(sigma), xs_(inner_x), ys_(inner_y)
  {
    for (int i = 0; i < inner_x; ++i)
      xs_[i] = hx * (i + 1);
    for (int j = 0; j < inner_y; ++j)
      ys_[j] = hy * (j + 1);
  }

  // (Q + tau_q Q_t) / k at the interior nodes, column-major in (i, j).
  Eigen::VectorXd operator()(double t) const
  {
    auto const state = source_state(s_.trajectory, t);
    Eigen::VectorXd gx(xs_.size()), gy(ys_.size()), dgx(xs_.size()), dgy(ys_.size());
    for (Eigen::Index i = 0; i < xs_.size(); ++i)
    {
      gx[i] = image_gaussian(xs_[i], state.position.x(), sigma_, s_.length);
      dgx[i] = image_gaussian_dcenter(xs_[i], state.position.x(), sigma_, s_.length);
    }
    for (Eigen::Index j = 0; j < ys_.size(); ++j)
    {
      gy[j] = image_gaussian(ys_[j], state.position.y(), sigma_, s_.height);
      dgy[j] = image_gaussian_dcenter(ys_[j], state.position.y(), sigma_, s_.height);
    }
    double const scale = s_.strength / s_.conductivity;
    Eigen::MatrixXd q = gx * gy.transpose();
    if (s_.lag_q != 0)
      q += s_.lag_q * (state.velocity.x() * dgx * gy.transpose() + state.velocity.y() * gx * dgy.transpose());
    q *= scale;
    return Eigen::Map<Eigen::VectorXd>(q.data(), q.size());
  }

private:
  PlateScenario s_;
  double sigma_;
  Eigen::VectorXd xs_, ys_;
};

TemperatureField to_field(GridSpec const &grid, double t, double ambient, Eigen::VectorXd const &u)
{
  TemperatureField f{grid, t, Eigen::MatrixXd::Constant(grid.nx, grid.ny, ambient)};
  Eigen::Index const ix = grid.nx - 2;
  for (Eigen::Index j = 0; j < grid.ny - 2; ++j)
    for (Eigen::Index i = 0; i < ix; ++i)
      f.values(i + 1, j + 1) = ambient + u[i + ix * j];
  return f;
}

template <typename Solver>
void factorize(Solver &solver, Eigen::SparseMatrix<double> const &a)
{
  solver.compute(a);
  if (solver.info() != Eigen::Success)
    throw UnstableConfig("finite-difference system matrix could not be factorized");
}

} // namespace

double image_gaussian(double x, double center, double sigma, double extent)
{
  int const k_max = image_count(sigma, extent);
  double sum = 0;
  for (int k = -k_max; k <= k_max; ++k)
  {
    double const shift = 2 * k * extent;
    sum += gauss(x - center - shift, sigma) - gauss(x + center - shift, sigma);
  }
  return sum;
}

double image_gaussian_dcenter(double x, double center, double sigma, double extent)
{
  int const k_max = image_count(sigma, extent);
  double const s2 = sigma * sigma;
  double sum = 0;
  for (int k = -k_max; k <= k_max; ++k)
  {
    double const shift = 2 * k * extent;
    double const u = x - center - shift;
    double const v = x + center - shift;
    sum += 2 * u / s2 * gauss(u, sigma) + 2 * v / s2 * gauss(v, sigma);
  }
  return sum;
}

double gaussian_mode_attenuation(double lambda2, double sigma) { return std::exp(-lambda2 * sigma * sigma / 4); }

GridSpec fdm_grid(PlateScenario const &s, FdmConfig const &cfg)
{
  return GridSpec(node_count(s.length, cfg.hx, "hx"), node_count(s.height, cfg.hy, "hy"), s.length, s.height);
}

void check_fdm_config(PlateScenario const &s, FdmConfig const &cfg)
{
  if (!(cfg.hx > 0 && cfg.hy > 0 && cfg.dt > 0 && cfg.t_end > 0))
    throw UnstableConfig("fdm.hx, fdm.hy, fdm.dt and fdm.t_end must be positive");
  if (cfg.store_every < 0)
    throw UnstableConfig("fdm.store_every must be non-negative");
  (void)fdm_grid(s, cfg);
  double const sigma = cfg.smoothing();
  if (!(sigma >= 2 * std::max(cfg.hx, cfg.hy)))
    throw UnstableConfig("fdm.sigma must be at least twice the grid spacing");
  if (cfg.dt > cfg.t_end)
    throw UnstableConfig("fdm.dt exceeds fdm.t_end");
  // The time-stepping is unconditionally stable for the linear operator; the
  // binding limit is the forcing: the smoothed source may advance at most
  // half its radius per step.
  double const travel = max_source_speed(s.trajectory) * cfg.dt;
  if (travel > sigma / 2)
    throw UnstableConfig("fdm.dt too large: source moves " + std::to_string(travel) + " per step, limit sigma/2 = " +
                         std::to_string(sigma / 2));
}

FdmResult solve_fdm(PlateScenario const &s, FdmConfig const &cfg, std::optional<Eigen::MatrixXd> const &initial)
{
  check_fdm_config(s, cfg);
  GridSpec const grid = fdm_grid(s, cfg);
  int const inner_x = int(grid.nx) - 2;
  int const inner_y = int(grid.ny) - 2;
  double const hx = grid.dx();
  double const hy = grid.dy();
  int const steps = int(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  double const dt = cfg.t_end / steps;

  auto const lap = laplacian(inner_x, inner_y, hx, hy);
  Eigen::SparseMatrix<double> identity(lap.rows(), lap.cols());
  identity.setIdentity();
  SourceSampler const source(s, cfg.smoothing(), inner_x, inner_y, hx, hy);

  Eigen::VectorXd u = Eigen::VectorXd::Zero(lap.rows());
  if (initial)
  {
    if (initial->rows() != grid.nx || initial->cols() != grid.ny)
      throw ConfigError("initial field does not match the finite-difference grid");
    for (int j = 0; j < inner_y; ++j)
      for (int i = 0; i < inner_x; ++i)
        u[i + inner_x * j] = (*initial)(i + 1, j + 1) - s.ambient;
  }

  FdmResult result;
  result.steps = steps;
  auto store = [&](int step, Eigen::VectorXd const &state) {
    bool const last = step == steps;
    bool const periodic = cfg.store_every > 0 && step % cfg.store_every == 0;
    if (last || periodic)
      result.fields.push_back(to_field(grid, step == steps ? cfg.t_end : step * dt, s.ambient, state));
  };
  auto guard = [&](Eigen::VectorXd const &state, int step) {
    if (!state.allFinite() || state.cwiseAbs().maxCoeff() > 1e12)
      throw UnstableConfig("finite-difference solution blew up at step " + std::to_string(step));
  };
  store(0, u);

  double const alpha = s.diffusivity;
  double const tq = s.lag_q;
  double const tt = s.lag_t;

  if (tq == 0)
  {
    // Two-level Crank-Nicolson step of T_t / alpha = lap T + tau_T lap T_t + Q / k.
    double const a = 1 / (alpha * dt);
    double const b = 0.5 + tt / dt;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    factorize(solver, Eigen::SparseMatrix<double>(a * identity - b * lap));
    for (int n = 0; n < steps; ++n)
    {
      Eigen::VectorXd rhs = a * u + (0.5 - tt / dt) * (lap * u) + source((n + 0.5) * dt);
      u = solver.solve(rhs);
      guard(u, n + 1);
      store(n + 1, u);
    }
    return result;
  }

  // Three-level scheme centred at t_n: T_t and T_tt by central differences,
  // lap T averaged with weights (1/4, 1/2, 1/4) and d/dt lap T centred.
  double const a = (1 / alpha) * (1 / (2 * dt) + tq / (dt * dt));
  double const b = 0.25 + tt / (2 * dt);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  factorize(solver, Eigen::SparseMatrix<double>(a * identity - b * lap));

  // First step with the ghost level u^{-1} = u^{1} from T_t(0) = 0.
  double const a0 = 2 * tq / (alpha * dt * dt);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> starter;
  factorize(starter, Eigen::SparseMatrix<double>(a0 * identity - 0.5 * lap));
  Eigen::VectorXd previous = u;
  u = starter.solve(a0 * previous + 0.5 * (lap * previous) + source(0.0));
  guard(u, 1);
  store(1, u);

  double const c_prev = (1 / alpha) * (1 / (2 * dt) - tq / (dt * dt));
  double const c_now = 2 * tq / (alpha * dt * dt);
  double const l_prev = 0.25 - tt / (2 * dt);
  for (int n = 1; n < steps; ++n)
  {
    Eigen::VectorXd rhs = c_prev * previous + c_now * u + lap * (0.5 * u + l_prev * previous) + source(n * dt);
    Eigen::VectorXd next = solver.solve(rhs);
    previous = std::move(u);
    u = std::move(next);
    guard(u, n + 1);
    store(n + 1, u);
  }
  return result;
}

TemperatureField project_gaussian_source_series(PlateScenario const &s, double sigma, GridSpec const &grid, double t,
                                                int modes_x, int modes_y, QuadratureSpec const &quad, Parallelism par)
{
  if (!(sigma > 0))
    throw ConfigError("smoothing radius sigma must be positive");
  auto const table = build_mode_table(s, modes_x, modes_y);
  TemperatureSeries<double> series{s, t, compute_coefficients(table, s, t, quad, par)};
  for (int j = 0; j < modes_y; ++j)
    for (int i = 0; i < modes_x; ++i)
      series.coefficients(i, j) *= gaussian_mode_attenuation(table.lambda2(i, j), sigma);
  return series.field(grid);
}

FieldDeviation compare_fields(TemperatureField const &candidate, TemperatureField const &reference, double baseline)
{
  if (candidate.values.rows() != reference.values.rows() || candidate.values.cols() != reference.values.cols())
    throw ConfigError("fields sampled on different grids");
  Eigen::MatrixXd const diff = candidate.values - reference.values;
  FieldDeviation d;
  Eigen::MatrixXd const rise = reference.values.array() - baseline;
  double const ref_norm = rise.norm();
  double const ref_max = rise.cwiseAbs().maxCoeff();
  d.max_abs = diff.cwiseAbs().maxCoeff();
  d.rms_relative = ref_norm > 0 ? diff.norm() / ref_norm : diff.norm();
  d.max_relative = ref_max > 0 ? d.max_abs / ref_max : d.max_abs;
  return d;
}

} // namespace heatlab
