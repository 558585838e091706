#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "oran/types.hpp"

namespace oran::agent {

enum class ActionSpaceKind : std::uint8_t { SlicingOnly, SchedulingOnly, Joint };

std::string_view to_string(ActionSpaceKind k);
/// "slicing" | "scheduling" | "joint". Throws std::invalid_argument.
ActionSpaceKind action_space_from_string(std::string_view s);

/// Discrete catalog of control actions with an index <-> action bijection.
///
/// Slicing: the 36 partitions of 50 PRBs into multiples of 5 with at least 5
/// per slice, ordered by (eMBB, mMTC) share ascending. Scheduling: the 27
/// scheduler triples in base-3 order, eMBB most significant. Joint: the 972
/// pairs, index = slicing_index * 27 + scheduling_index.
class ActionSpace {
 public:
  static constexpr std::size_t kSlicingActions = 36;
  static constexpr std::size_t kSchedulingActions = 27;

  explicit ActionSpace(ActionSpaceKind kind);

  ActionSpaceKind kind() const { return kind_; }
  std::size_t size() const { return catalog_.size(); }
  const ControlAction& action(std::size_t index) const { return catalog_.at(index); }
  const std::vector<ControlAction>& catalog() const { return catalog_; }

  /// Throws std::out_of_range when the action is not in this catalog.
  std::size_t index_of(const ControlAction& action) const;

  bool controls_partition() const { return kind_ != ActionSpaceKind::SchedulingOnly; }
  bool controls_scheduling() const { return kind_ != ActionSpaceKind::SlicingOnly; }

 private:
  ActionSpaceKind kind_;
  std::vector<ControlAction> catalog_;
};

std::size_t slicing_index(const PrbPartition& p);
std::size_t scheduling_index(const SchedulerAssignment& a);

}  // namespace oran::agent
