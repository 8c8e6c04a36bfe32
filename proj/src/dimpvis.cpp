#include "hanstream/dimpvis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hanstream/error.hpp"
#include "hanstream/scales.hpp"

namespace hanstream {

std::optional<std::size_t> TrajectorySet::find(const std::string& entity) const noexcept {
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    if (trajectories[i].entity == entity) return i;
  }
  return std::nullopt;
}

namespace {

std::size_t require_column(const Dataset& data, const std::string& field) {
  const auto idx = data.column_index(field);
  if (!idx) throw Error(Errc::SpecError, "field '" + field + "' not found in dataset");
  return *idx;
}

double require_number(const Dataset& data, std::size_t row, std::size_t col) {
  const auto* v = std::get_if<double>(&data.rows[row][col]);
  if (!v) {
    throw Error(Errc::SpecError, "field '" + data.columns[col].name + "' needs a number in row " +
                                     std::to_string(row + 1));
  }
  return *v;
}

LinearScale fitted(double lo, double hi, double r0, double r1) {
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  return LinearScale(lo, hi, r0, r1);
}

}  // namespace

TrajectorySet build_trajectories(const Dataset& data, const DimpVisSpec& spec) {
  const std::size_t entity_col = require_column(data, spec.entity_field);
  const std::size_t time_col = require_column(data, spec.time_field);
  const std::size_t x_col = require_column(data, spec.x_field);
  const std::size_t y_col = require_column(data, spec.y_field);
  std::optional<std::size_t> size_col;
  if (spec.size_field) size_col = require_column(data, *spec.size_field);

  auto cell_less_fn = [](const Cell& a, const Cell& b) { return cell_less(a, b); };
  std::map<Cell, std::size_t, decltype(cell_less_fn)> time_index(cell_less_fn);
  std::vector<std::string> entities;
  std::map<std::string, std::size_t> entity_index;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    const Cell& time = data.rows[r][time_col];
    if (std::holds_alternative<std::monostate>(time)) {
      throw Error(Errc::SpecError, "field '" + spec.time_field + "' missing in row " + std::to_string(r + 1));
    }
    time_index.emplace(time, 0);
    const std::string entity = format_cell(data.rows[r][entity_col]);
    if (entity_index.emplace(entity, entities.size()).second) entities.push_back(entity);
  }
  if (time_index.size() < 2) throw Error(Errc::DegenerateTime, "need at least two time values");

  TrajectorySet set;
  std::size_t k = 0;
  for (auto& [cell, index] : time_index) {
    index = k++;
    set.time_labels.push_back(format_cell(cell));
  }
  const std::size_t steps = set.time_labels.size();

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> grid(entities.size(), std::vector<std::size_t>(steps, kUnset));
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo, s_lo = x_lo, s_hi = -x_lo;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    const std::size_t e = entity_index.at(format_cell(data.rows[r][entity_col]));
    const std::size_t t = time_index.at(data.rows[r][time_col]);
    if (grid[e][t] != kUnset) {
      throw Error(Errc::SpecError, "duplicate observation for entity '" + entities[e] + "' at time " +
                                       set.time_labels[t]);
    }
    grid[e][t] = r;
    const double x = require_number(data, r, x_col);
    const double y = require_number(data, r, y_col);
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
    if (size_col) {
      const double s = require_number(data, r, *size_col);
      s_lo = std::min(s_lo, s);
      s_hi = std::max(s_hi, s);
    }
  }
  for (std::size_t e = 0; e < entities.size(); ++e) {
    for (std::size_t t = 0; t < steps; ++t) {
      if (grid[e][t] == kUnset) {
        throw Error(Errc::IncompleteSeries, "entity '" + entities[e] + "' has no value at time " + set.time_labels[t]);
      }
    }
  }

  const LinearScale xs = fitted(x_lo, x_hi, kDimpInsetMin, kDimpInsetMax);
  const LinearScale ys = fitted(y_lo, y_hi, kDimpInsetMax, kDimpInsetMin);
  std::optional<LinearScale> ss;
  if (size_col && s_lo < s_hi) ss.emplace(s_lo, s_hi, kBubbleMinRadius, kBubbleMaxRadius);

  set.trajectories.reserve(entities.size());
  for (std::size_t e = 0; e < entities.size(); ++e) {
    Trajectory traj{entities[e], {}, {}, grid[e]};
    for (std::size_t r : grid[e]) {
      traj.positions.push_back({xs(require_number(data, r, x_col)), ys(require_number(data, r, y_col))});
      traj.sizes.push_back(ss ? (*ss)(require_number(data, r, *size_col)) : kBubbleDefaultRadius);
    }
    set.trajectories.push_back(std::move(traj));
  }
  return set;
}

Vec2 polyline_at(const Trajectory& traj, double t) noexcept {
  const std::size_t last = traj.positions.size() - 1;
  t = std::clamp(t, 0.0, static_cast<double>(last));
  const auto k = static_cast<std::size_t>(std::floor(t));
  if (k >= last) return traj.positions[last];
  const double u = t - static_cast<double>(k);
  return traj.positions[k] * (1.0 - u) + traj.positions[k + 1] * u;
}

double project_drag(const Trajectory& traj, Vec2 drag_point, double current_t, int window) {
  const auto last_segment = static_cast<long>(traj.positions.size()) - 2;
  if (last_segment < 0) throw Error(Errc::DegenerateTime, "trajectory needs at least two points");
  current_t = std::clamp(current_t, 0.0, static_cast<double>(last_segment + 1));
  const long first = std::max(0L, static_cast<long>(std::floor(current_t)) - window);
  const long final = std::min(last_segment, static_cast<long>(std::ceil(current_t)) + window - 1);

  double best_t = current_t;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (long k = first; k <= final; ++k) {
    const Vec2 a = traj.positions[static_cast<std::size_t>(k)];
    const Vec2 b = traj.positions[static_cast<std::size_t>(k) + 1];
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    const double u = len2 > 0.0 ? std::clamp(dot(drag_point - a, ab) / len2, 0.0, 1.0) : 0.0;
    const Vec2 foot = a + ab * u;
    const Vec2 off = drag_point - foot;
    const double d2 = dot(off, off);
    const double t = static_cast<double>(k) + u;
    // Ties go to the candidate nearer the current time.
    if (d2 < best_d2 || (d2 == best_d2 && std::fabs(t - current_t) < std::fabs(best_t - current_t))) {
      best_d2 = d2;
      best_t = t;
    }
  }
  return std::clamp(best_t, 0.0, static_cast<double>(last_segment + 1));
}

std::vector<EntityPose> positions_at(const TrajectorySet& set, double t) {
  const std::size_t last = set.steps() - 1;
  t = std::clamp(t, 0.0, static_cast<double>(last));
  const auto k = static_cast<std::size_t>(std::floor(t));
  const double u = t - static_cast<double>(k);
  std::vector<EntityPose> poses;
  poses.reserve(set.trajectories.size());
  for (const auto& traj : set.trajectories) {
    if (k >= last || u == 0.0) {
      const std::size_t i = std::min(k, last);
      poses.push_back({traj.positions[i], traj.sizes[i]});
    } else {
      poses.push_back({traj.positions[k] * (1.0 - u) + traj.positions[k + 1] * u,
                       traj.sizes[k] * (1.0 - u) + traj.sizes[k + 1] * u});
    }
  }
  return poses;
}

const std::string& TimeCursor::label() const {
  if (time_labels.empty()) throw Error(Errc::DegenerateTime, "cursor has no labels");
  const auto last = static_cast<double>(time_labels.size() - 1);
  const auto i = static_cast<std::size_t>(std::lround(std::clamp(t, 0.0, last)));
  return time_labels[i];
}

}  // namespace hanstream
