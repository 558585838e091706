#include "oran/agent/action_space.hpp"

#include <stdexcept>
#include <string>

namespace oran::agent {

namespace {

std::vector<PrbPartition> all_partitions() {
  std::vector<PrbPartition> out;
  for (int e = 1; e <= 8; ++e)
    for (int m = 1; e + m <= 9; ++m) out.push_back({{e * kPrbGranularity, m * kPrbGranularity,
                                                     (10 - e - m) * kPrbGranularity}});
  return out;
}

std::vector<SchedulerAssignment> all_assignments() {
  std::vector<SchedulerAssignment> out;
  for (int i = 0; i < 27; ++i)
    out.push_back({{static_cast<SchedulerKind>(i / 9), static_cast<SchedulerKind>((i / 3) % 3),
                    static_cast<SchedulerKind>(i % 3)}});
  return out;
}

}  // namespace

std::string_view to_string(ActionSpaceKind k) {
  switch (k) {
    case ActionSpaceKind::SlicingOnly: return "slicing";
    case ActionSpaceKind::SchedulingOnly: return "scheduling";
    case ActionSpaceKind::Joint: return "joint";
  }
  return "?";
}

ActionSpaceKind action_space_from_string(std::string_view s) {
  if (s == "slicing") return ActionSpaceKind::SlicingOnly;
  if (s == "scheduling") return ActionSpaceKind::SchedulingOnly;
  if (s == "joint") return ActionSpaceKind::Joint;
  throw std::invalid_argument("unknown action space '" + std::string(s) + "'");
}

std::size_t slicing_index(const PrbPartition& p) {
  if (!partition_violation(p).empty()) throw std::out_of_range("partition is not in the catalog");
  const int e = p.prbs_per_slice[0] / kPrbGranularity;
  const int m = p.prbs_per_slice[1] / kPrbGranularity;
  // rows e' < e contribute (9 - e') entries each
  std::size_t idx = 0;
  for (int k = 1; k < e; ++k) idx += static_cast<std::size_t>(9 - k);
  return idx + static_cast<std::size_t>(m - 1);
}

std::size_t scheduling_index(const SchedulerAssignment& a) {
  const auto& k = a.scheduler_per_slice;
  return static_cast<std::size_t>(k[0]) * 9 + static_cast<std::size_t>(k[1]) * 3 +
         static_cast<std::size_t>(k[2]);
}

ActionSpace::ActionSpace(ActionSpaceKind kind) : kind_(kind) {
  switch (kind) {
    case ActionSpaceKind::SlicingOnly:
      for (const auto& p : all_partitions()) catalog_.push_back({p, std::nullopt});
      break;
    case ActionSpaceKind::SchedulingOnly:
      for (const auto& a : all_assignments()) catalog_.push_back({std::nullopt, a});
      break;
    case ActionSpaceKind::Joint: {
      const auto assignments = all_assignments();
      for (const auto& p : all_partitions())
        for (const auto& a : assignments) catalog_.push_back({p, a});
      break;
    }
  }
}

std::size_t ActionSpace::index_of(const ControlAction& action) const {
  const bool want_p = controls_partition(), want_a = controls_scheduling();
  if (action.partition.has_value() != want_p || action.assignment.has_value() != want_a)
    throw std::out_of_range("action does not match the " + std::string(to_string(kind_)) + " space");
  switch (kind_) {
    case ActionSpaceKind::SlicingOnly: return slicing_index(*action.partition);
    case ActionSpaceKind::SchedulingOnly: return scheduling_index(*action.assignment);
    case ActionSpaceKind::Joint:
      return slicing_index(*action.partition) * kSchedulingActions + scheduling_index(*action.assignment);
  }
  throw std::out_of_range("unknown action space");
}

}  // namespace oran::agent
