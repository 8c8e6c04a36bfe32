#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hanstream/chart_spec.hpp"
#include "hanstream/dataset.hpp"
#include "hanstream/geometry.hpp"

namespace hanstream {

inline constexpr double kBubbleMinRadius = 0.01;
inline constexpr double kBubbleMaxRadius = 0.06;
inline constexpr double kBubbleDefaultRadius = 0.02;
/// Bubble centers are placed inside this inset of the [0,1] plot area.
inline constexpr double kDimpInsetMin = 0.1;
inline constexpr double kDimpInsetMax = 0.9;

struct Trajectory {
  std::string entity;
  std::vector<Vec2> positions;    // world coordinates, one per time index
  std::vector<double> sizes;      // radii, one per time index
  std::vector<std::size_t> rows;  // source dataset row per time index
};

struct TrajectorySet {
  std::vector<Trajectory> trajectories;  // entity first-appearance order
  std::vector<std::string> time_labels;  // ascending time order

  std::size_t steps() const noexcept { return time_labels.size(); }
  std::optional<std::size_t> find(const std::string& entity) const noexcept;
};

/// Long-format rows (entity, time, x, y, size?) to per-entity trajectories.
/// Errors: SpecError for missing/non-numeric fields or duplicate
/// observations, IncompleteSeries, DegenerateTime (fewer than two times).
TrajectorySet build_trajectories(const Dataset& data, const DimpVisSpec& spec);

/// Position along the trajectory polyline at fractional time t.
Vec2 polyline_at(const Trajectory& traj, double t) noexcept;

/// Projects a drag point onto the trajectory segments within +-window steps
/// of current_t and returns the time of the nearest point.
double project_drag(const Trajectory& traj, Vec2 drag_point, double current_t, int window = 1);

struct EntityPose {
  Vec2 position;
  double size = 0.0;
};

/// Linear interpolation of every entity at global time t in [0, T-1].
std::vector<EntityPose> positions_at(const TrajectorySet& set, double t);

struct TimeCursor {
  double t = 0.0;
  std::vector<std::string> time_labels;

  /// Label of the nearest integer time index.
  const std::string& label() const;
};

struct DimpState {
  TimeCursor cursor;
  std::optional<std::size_t> grabbed;  // trajectory index
  int window = 1;
};

}  // namespace hanstream
