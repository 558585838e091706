#include "oran/types.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace oran {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(SliceKind s) {
  switch (s) {
    case SliceKind::Embb: return "eMBB";
    case SliceKind::Mmtc: return "mMTC";
    case SliceKind::Urllc: return "URLLC";
  }
  return "?";
}

SliceKind slice_from_string(std::string_view name) {
  const auto n = lower(name);
  if (n == "embb") return SliceKind::Embb;
  if (n == "mmtc") return SliceKind::Mmtc;
  if (n == "urllc") return SliceKind::Urllc;
  throw std::invalid_argument("unknown slice '" + std::string(name) + "'");
}

std::string_view to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::RoundRobin: return "RR";
    case SchedulerKind::Waterfilling: return "WF";
    case SchedulerKind::ProportionalFair: return "PF";
  }
  return "?";
}

SchedulerKind scheduler_from_string(std::string_view name) {
  const auto n = lower(name);
  if (n == "rr") return SchedulerKind::RoundRobin;
  if (n == "wf") return SchedulerKind::Waterfilling;
  if (n == "pf") return SchedulerKind::ProportionalFair;
  throw std::invalid_argument("unknown scheduler '" + std::string(name) + "'");
}

std::string partition_violation(const PrbPartition& p) {
  int sum = 0;
  for (int share : p.prbs_per_slice) {
    if (share < kMinSlicePrbs)
      return "slice share " + std::to_string(share) + " below minimum " + std::to_string(kMinSlicePrbs);
    if (share % kPrbGranularity != 0)
      return "slice share " + std::to_string(share) + " is not a multiple of " +
             std::to_string(kPrbGranularity);
    sum += share;
  }
  if (sum != kTotalPrbs)
    return "shares sum to " + std::to_string(sum) + ", expected " + std::to_string(kTotalPrbs);
  return {};
}

}  // namespace oran
