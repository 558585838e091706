#include "oran/ric/xapp.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "oran/agent/env.hpp"
#include "oran/agent/policy.hpp"
#include "oran/errors.hpp"
#include "oran/kpm/sampler.hpp"

namespace oran::ric {

std::string_view to_string(ControlledParameter p) {
  switch (p) {
    case ControlledParameter::Slicing: return "slicing";
    case ControlledParameter::Scheduling: return "scheduling";
    case ControlledParameter::Both: return "both";
  }
  return "?";
}

ControlledParameter controlled_from_string(std::string_view s) {
  if (s == "slicing") return ControlledParameter::Slicing;
  if (s == "scheduling") return ControlledParameter::Scheduling;
  if (s == "both") return ControlledParameter::Both;
  throw std::invalid_argument("unknown controlled parameter '" + std::string(s) + "'");
}

ControlledParameter controlled_by(agent::ActionSpaceKind kind) {
  switch (kind) {
    case agent::ActionSpaceKind::SlicingOnly: return ControlledParameter::Slicing;
    case agent::ActionSpaceKind::SchedulingOnly: return ControlledParameter::Scheduling;
    case agent::ActionSpaceKind::Joint: return ControlledParameter::Both;
  }
  return ControlledParameter::Both;
}

bool overlaps(ControlledParameter a, ControlledParameter b) {
  return a == ControlledParameter::Both || b == ControlledParameter::Both || a == b;
}

ControlAction restrict_to(const ControlAction& action, ControlledParameter p) {
  ControlAction out;
  if (p != ControlledParameter::Scheduling) out.partition = action.partition;
  if (p != ControlledParameter::Slicing) out.assignment = action.assignment;
  return out;
}

void Subscription::validate() const {
  kpm::validate_period(period_ms);
  for (const char* m : {"thr", "buf", "pkt"})
    if (std::find(metrics.begin(), metrics.end(), m) == metrics.end())
      throw InvalidConfig("subscription " + xapp_id + " must request metric '" + m + "'");
  for (SliceKind s : kAllSlices)
    if (std::find(slices.begin(), slices.end(), std::string(to_string(s))) == slices.end())
      throw InvalidConfig("subscription " + xapp_id + " must cover slice " + std::string(to_string(s)));
}

PolicyXapp::PolicyXapp(XappDescriptor descriptor, std::optional<agent::PolicyCheckpoint> checkpoint,
                       DecisionMode mode, std::uint64_t seed)
    : descriptor_(std::move(descriptor)), checkpoint_(std::move(checkpoint)), mode_(mode), rng_(seed) {
  if (checkpoint_) {
    if (controlled_by(checkpoint_->kind) != descriptor_.controlled)
      throw InvalidConfig("xApp " + descriptor_.xapp_id + " declares '" +
                          std::string(to_string(descriptor_.controlled)) + "' but its checkpoint controls '" +
                          std::string(to_string(controlled_by(checkpoint_->kind))) + "'");
    space_.emplace(checkpoint_->kind);
  }
}

std::unique_ptr<PolicyXapp> PolicyXapp::from_checkpoint(std::string xapp_id, agent::PolicyCheckpoint checkpoint,
                                                        std::optional<std::int64_t> period_ms,
                                                        std::string checkpoint_ref) {
  XappDescriptor d;
  d.xapp_id = std::move(xapp_id);
  d.checkpoint_ref = std::move(checkpoint_ref);
  d.controlled = controlled_by(checkpoint.kind);
  d.subscription.xapp_id = d.xapp_id;
  d.subscription.period_ms = period_ms.value_or(checkpoint.period_ms);
  return std::make_unique<PolicyXapp>(std::move(d), std::move(checkpoint));
}

ControlAction PolicyXapp::on_indication(const IndicationMsg& indication) {
  if (!checkpoint_) throw PolicyNotLoaded("xApp " + descriptor_.xapp_id + " has no policy");
  const agent::State state = agent::to_state(indication.windows, checkpoint_->encoder);
  const agent::Categorical dist = agent::actor_forward(checkpoint_->params, state);
  const agent::SampledAction pick =
      mode_ == DecisionMode::Argmax ? agent::argmax_action(dist) : agent::sample_action(dist, rng_);
  return restrict_to(space_->action(pick.index), descriptor_.controlled);
}

RandomXapp::RandomXapp(XappDescriptor descriptor, agent::ActionSpaceKind kind, std::uint64_t seed)
    : descriptor_(std::move(descriptor)), space_(kind), rng_(seed) {
  descriptor_.controlled = controlled_by(kind);
}

ControlAction RandomXapp::on_indication(const IndicationMsg&) {
  return space_.action(rng_.below(space_.size()));
}

FixedXapp::FixedXapp(XappDescriptor descriptor, ControlAction action)
    : descriptor_(std::move(descriptor)), action_(std::move(action)) {
  action_ = restrict_to(action_, descriptor_.controlled);
}

HierarchicalSetup HierarchicalSetup::from_id(int id) {
  switch (id) {
    case 1: return {1, 1000, 10000};
    case 2: return {2, 1000, 5000};
    case 3: return {3, 10000, 1000};
    case 4: return {4, 5000, 1000};
    default: throw InvalidConfig("hierarchical setup must be 1..4, got " + std::to_string(id));
  }
}

}  // namespace oran::ric
