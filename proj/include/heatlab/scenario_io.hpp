#ifndef HEATLAB_SCENARIO_IO_HPP
#define HEATLAB_SCENARIO_IO_HPP

#include "fdm.hpp"
#include "scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace heatlab
{

/// Contents of a scenario file: `key = value` lines, `#` comments.
///
/// Scenario keys: L, H, theta, k, alpha, tau_q, tau_T, T0, traj.kind, traj.A,
/// traj.B, traj.w, traj.cx, traj.cy, and traj.samples (custom paths only;
/// a `t,x,y` CSV resolved against the file's directory). Optional oracle
/// keys: fdm.hx, fdm.hy, fdm.dt, fdm.sigma, fdm.t_end, fdm.store_every.
struct ScenarioFile
{
  PlateScenario scenario;
  std::optional<FdmConfig> fdm;
  std::string samples_path; // as written in the file, empty if none
};

/// Parses and validates. Throws ConfigError with every problem found.
ScenarioFile parse_scenario(std::string const &text, std::filesystem::path const &base_dir = {});
ScenarioFile load_scenario(std::filesystem::path const &path);

/// Emits every key with shortest round-trip numbers, so parsing the output
/// reproduces the scenario bit for bit.
std::string format_scenario(ScenarioFile const &file);

} // namespace heatlab

#endif // HEATLAB_SCENARIO_IO_HPP
