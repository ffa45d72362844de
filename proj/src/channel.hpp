// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "packet.hpp"

namespace voippipe {

/// Impairment parameters for the simulated channel. Identical seed + config
/// + input always produce identical output.
struct ChannelConfig {
  double loss_prob = 0.0;     // in [0, 1]
  double base_delay_ms = 0.0;
  double jitter_ms = 0.0;     // extra delay drawn from Uniform(0, jitter_ms)
  uint64_t seed = 0;
};

struct DeliveredPacket {
  VoipPacket packet;
  double send_time_ms = 0.0;
  double arrival_time_ms = 0.0;
};

struct ChannelResult {
  std::vector<DeliveredPacket> delivered;  // sorted by arrival time
  uint64_t sent_count = 0;
  uint64_t dropped_count = 0;
};

/// Runs packets through the impaired channel. Packet i is sent at
/// i * pacing_ms, dropped independently with probability loss_prob, and
/// survivors arrive at send + base_delay_ms + Uniform(0, jitter_ms).
/// Output is sorted by arrival time (ties keep send order), so reordering
/// emerges from jitter alone.
ChannelResult simulate_channel(const std::vector<VoipPacket>& packets,
                               const ChannelConfig& cfg, double pacing_ms);

}  // namespace voippipe
