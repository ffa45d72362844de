// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "channel.hpp"
#include "g711.hpp"

namespace voippipe {

enum class Concealment : uint8_t { SilenceFill, RepeatLast };

struct PlayoutConfig {
  double playout_delay_ms = 60.0;
  Concealment concealment = Concealment::RepeatLast;
};

enum class FrameOrigin : uint8_t { Received, Concealed };

struct PlayoutFrame {
  std::vector<uint8_t> payload;
  FrameOrigin origin = FrameOrigin::Received;
};

// Fixed-delay playout buffer. One context pushes, one pops; instances are
// movable between contexts but not concurrently mutable.
//
// Sequence comparisons are wrap-aware over a 2^15 window. A packet whose
// sequence lies behind the playout position is counted late and discarded;
// duplicates are counted and ignored. pop_frame() is total: a missing frame
// is concealed (silence codewords or a repeat of the last played payload)
// and the expected sequence always advances by one.
class JitterBuffer {
public:
  JitterBuffer(int frame_samples, CompandingLaw law, PlayoutConfig config);

  /// Optionally pin the first sequence to play before any push.
  void prime(uint16_t first_sequence);

  void push(const DeliveredPacket& dp);

  PlayoutFrame pop_frame(double playout_time_ms);

  struct Stats {
    uint64_t received = 0;   // accepted pushes
    uint64_t duplicates = 0;
    uint64_t late = 0;
    uint64_t played_received = 0;
    uint64_t concealed = 0;
  };
  const Stats& stats() const { return stats_; }

  size_t pending() const { return store_.size(); }

private:
  struct Entry {
    std::vector<uint8_t> payload;
    double arrival_time_ms = 0.0;
  };

  // a strictly behind b in wrap-aware order
  static bool seq_behind(uint16_t a, uint16_t b) {
    return static_cast<int16_t>(static_cast<uint16_t>(a - b)) < 0;
  }

  std::vector<uint8_t> conceal();
  void purge_late();

  int frame_samples_;
  CompandingLaw law_;
  PlayoutConfig config_;
  std::unordered_map<uint16_t, Entry> store_;
  std::optional<uint16_t> expected_seq_;
  std::optional<uint32_t> stream_id_;
  std::vector<uint8_t> last_played_;
  Stats stats_;
};

}  // namespace voippipe
