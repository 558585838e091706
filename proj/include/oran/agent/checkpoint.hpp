#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "oran/agent/action_space.hpp"
#include "oran/agent/policy.hpp"
#include "oran/agent/reward.hpp"
#include "oran/kpm/encoder.hpp"

namespace oran::agent {

/// Everything an xApp needs to act: the trained networks, the encoder that
/// produced their input, and the training context.
struct PolicyCheckpoint {
  ActionSpaceKind kind = ActionSpaceKind::SlicingOnly;
  double gamma = 0.99;
  RewardWeights weights;
  std::int64_t period_ms = 1000;  // reporting period used in training
  std::string encoder_ref;        // where the encoder came from; informational
  kpm::EncoderParams encoder;
  PolicyParams params;

  bool operator==(const PolicyCheckpoint&) const = default;
};

inline constexpr const char* kCheckpointFormat = "oran-policy-checkpoint";
inline constexpr int kCheckpointVersion = 1;

nlohmann::json to_json(const PolicyCheckpoint& c);
/// Throws FormatError on a wrong tag, version or inconsistent shapes.
PolicyCheckpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const PolicyCheckpoint& c, const std::filesystem::path& path);
/// Throws MissingCheckpoint when the file does not exist.
PolicyCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace oran::agent
