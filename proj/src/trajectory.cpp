#include "heatlab/trajectory.hpp"

#include <string>

namespace heatlab
{

std::string_view to_string(TrajectoryKind kind)
{
  switch (kind)
  {
  case TrajectoryKind::line_segment:
    return "LST";
  case TrajectoryKind::circle:
    return "CT";
  case TrajectoryKind::ellipse:
    return "ET";
  case TrajectoryKind::custom:
    return "custom";
  }
  return "unknown";
}

TrajectoryKind trajectory_kind_from_string(std::string_view name)
{
  if (name == "LST")
    return TrajectoryKind::line_segment;
  if (name == "CT")
    return TrajectoryKind::circle;
  if (name == "ET")
    return TrajectoryKind::ellipse;
  if (name == "custom")
    return TrajectoryKind::custom;
  throw ConfigError("unknown trajectory kind '" + std::string(name) + "' (expected LST, CT, ET or custom)");
}

} // namespace heatlab
