#ifndef HEATLAB_FDM_HPP
#define HEATLAB_FDM_HPP

#include "parallel.hpp"
#include "quadrature.hpp"
#include "scenario.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace heatlab
{

/// Finite-difference oracle settings. sigma is the radius of the Gaussian
/// that stands in for the point source, g(r) = exp(-r^2/sigma^2) / (pi sigma^2).
struct FdmConfig
{
  double hx = 0.025;
  double hy = 0.025;
  double dt = 0.01;
  std::optional<double> sigma; // default 3 max(hx, hy)
  double t_end = 1;
  int store_every = 0; // 0: store only the final step

  double smoothing() const;
};

/// Throws UnstableConfig when the settings cannot produce a usable run.
void check_fdm_config(PlateScenario const &s, FdmConfig const &cfg);

struct FdmResult
{
  std::vector<TemperatureField> fields; // stored steps, final step last
  int steps = 0;
};

/// Integrates the lagged heat equation
///   (T_t + tau_q T_tt) / alpha = lap T + tau_T d/dt lap T + (Q + tau_q Q_t) / k
/// on the node grid with T = T0 on the boundary and T = T0, T_t = 0 at t = 0.
/// `initial`, when given, replaces the uniform initial field (interior nodes).
FdmResult solve_fdm(PlateScenario const &s, FdmConfig const &cfg,
                    std::optional<Eigen::MatrixXd> const &initial = std::nullopt);

/// Grid matching the FDM node layout for a scenario.
GridSpec fdm_grid(PlateScenario const &s, FdmConfig const &cfg);

/// Fourier factor exp(-lambda^2 sigma^2 / 4) of the smoothed source for a
/// mode with lambda^2 = mu^2 + gamma^2. Exact for the odd-image Gaussian used
/// by the oracle.
double gaussian_mode_attenuation(double lambda2, double sigma);

/// Series field for the Gaussian-smoothed source used by solve_fdm.
TemperatureField project_gaussian_source_series(PlateScenario const &s, double sigma, GridSpec const &grid,
                                                double t, int modes_x, int modes_y,
                                                QuadratureSpec const &quad = {}, Parallelism par = {});

/// Odd-image periodisation of the 1-D Gaussian factor about [0, extent]:
/// sum_k g(x - c - 2k extent) - g(x + c - 2k extent). It vanishes at 0 and
/// extent and its sine coefficients are exactly exp(-mu^2 sigma^2/4) sin(mu c).
double image_gaussian(double x, double center, double sigma, double extent);
double image_gaussian_dcenter(double x, double center, double sigma, double extent);

/// Deviations of the rise above `baseline` (normally T0).
struct FieldDeviation
{
  double rms_relative = 0; // ||a - b||_2 / ||b - baseline||_2 over all samples
  double max_abs = 0;
  double max_relative = 0; // max |a - b| / max |b - baseline|
};

FieldDeviation compare_fields(TemperatureField const &candidate, TemperatureField const &reference,
                              double baseline = 0);

} // namespace heatlab

#endif // HEATLAB_FDM_HPP
