#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "oran/agent/action_space.hpp"
#include "oran/agent/checkpoint.hpp"
#include "oran/ric/wire.hpp"

namespace oran::ric {

enum class ControlledParameter : std::uint8_t { Slicing, Scheduling, Both };

std::string_view to_string(ControlledParameter p);
/// "slicing" | "scheduling" | "both". Throws std::invalid_argument.
ControlledParameter controlled_from_string(std::string_view s);
ControlledParameter controlled_by(agent::ActionSpaceKind kind);
bool overlaps(ControlledParameter a, ControlledParameter b);

/// Drops whatever part of the action lies outside the declared parameter set.
ControlAction restrict_to(const ControlAction& action, ControlledParameter p);

struct Subscription {
  std::string xapp_id;
  std::int64_t period_ms = 1000;
  std::vector<std::string> metrics{"thr", "buf", "pkt"};
  std::vector<std::string> slices{"eMBB", "mMTC", "URLLC"};

  /// Throws InvalidPeriod, or InvalidConfig when the metric or slice list
  /// does not cover all three of each (hosted policies consume the full state).
  void validate() const;
};

struct XappDescriptor {
  std::string xapp_id;
  std::string checkpoint_ref;
  ControlledParameter controlled = ControlledParameter::Both;
  Subscription subscription;
};

/// A control application invoked once per indication.
class Xapp {
 public:
  virtual ~Xapp() = default;
  virtual const XappDescriptor& descriptor() const = 0;
  virtual ControlAction on_indication(const IndicationMsg& indication) = 0;

  const std::string& id() const { return descriptor().xapp_id; }
};

enum class DecisionMode : std::uint8_t { Argmax, Sample };

/// Hosts a trained policy: encode windows, run the actor, pick an action.
class PolicyXapp : public Xapp {
 public:
  /// Without a checkpoint every indication raises PolicyNotLoaded.
  PolicyXapp(XappDescriptor descriptor, std::optional<agent::PolicyCheckpoint> checkpoint,
             DecisionMode mode = DecisionMode::Argmax, std::uint64_t seed = 0);

  /// Descriptor derived from the checkpoint (controlled parameter from its
  /// action space, period from its training period unless overridden).
  static std::unique_ptr<PolicyXapp> from_checkpoint(std::string xapp_id, agent::PolicyCheckpoint checkpoint,
                                                     std::optional<std::int64_t> period_ms = std::nullopt,
                                                     std::string checkpoint_ref = {});

  const XappDescriptor& descriptor() const override { return descriptor_; }
  ControlAction on_indication(const IndicationMsg& indication) override;

 private:
  XappDescriptor descriptor_;
  std::optional<agent::PolicyCheckpoint> checkpoint_;
  std::optional<agent::ActionSpace> space_;
  DecisionMode mode_;
  Rng rng_;
};

/// Uniformly random catalog entry each time; a baseline.
class RandomXapp : public Xapp {
 public:
  RandomXapp(XappDescriptor descriptor, agent::ActionSpaceKind kind, std::uint64_t seed);
  const XappDescriptor& descriptor() const override { return descriptor_; }
  ControlAction on_indication(const IndicationMsg& indication) override;

 private:
  XappDescriptor descriptor_;
  agent::ActionSpace space_;
  Rng rng_;
};

/// Always the same action.
class FixedXapp : public Xapp {
 public:
  FixedXapp(XappDescriptor descriptor, ControlAction action);
  const XappDescriptor& descriptor() const override { return descriptor_; }
  ControlAction on_indication(const IndicationMsg&) override { return action_; }

 private:
  XappDescriptor descriptor_;
  ControlAction action_;
};

/// Two single-parameter xApps at different reporting periods.
struct HierarchicalSetup {
  int setup_id = 1;
  std::int64_t slicing_period_ms = 1000;
  std::int64_t sched_period_ms = 10000;

  /// 1: (1 s, 10 s), 2: (1 s, 5 s), 3: (10 s, 1 s), 4: (5 s, 1 s). Throws InvalidConfig.
  static HierarchicalSetup from_id(int id);
};

}  // namespace oran::ric
