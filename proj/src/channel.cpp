// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace voippipe {

namespace {

// 53-bit uniform draw in [0, 1); pinned here rather than through
// std::uniform_real_distribution so channel traces are reproducible
// across standard libraries.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ChannelResult simulate_channel(const std::vector<VoipPacket>& packets,
                               const ChannelConfig& cfg, double pacing_ms) {
  if (cfg.loss_prob < 0.0 || cfg.loss_prob > 1.0 || !std::isfinite(cfg.loss_prob)) {
    throw Error(ErrorKind::InvalidArgument,
                "transport: loss probability must lie in [0, 1]");
  }
  if (cfg.base_delay_ms < 0.0 || cfg.jitter_ms < 0.0 || pacing_ms < 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "transport: delays must be non-negative");
  }

  std::mt19937_64 rng(cfg.seed);
  ChannelResult result;
  result.sent_count = packets.size();
  result.delivered.reserve(packets.size());

  for (size_t i = 0; i < packets.size(); ++i) {
    if (next_unit(rng) < cfg.loss_prob) {
      ++result.dropped_count;
      continue;
    }
    DeliveredPacket dp;
    dp.packet = packets[i];
    dp.send_time_ms = static_cast<double>(i) * pacing_ms;
    dp.arrival_time_ms =
        dp.send_time_ms + cfg.base_delay_ms + next_unit(rng) * cfg.jitter_ms;
    result.delivered.push_back(std::move(dp));
  }

  // Stable sort: equal arrivals keep send (sequence) order.
  std::stable_sort(result.delivered.begin(), result.delivered.end(),
                   [](const DeliveredPacket& a, const DeliveredPacket& b) {
                     return a.arrival_time_ms < b.arrival_time_ms;
                   });
  return result;
}

}  // namespace voippipe
