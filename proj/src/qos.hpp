// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "audio.hpp"
#include "channel.hpp"

namespace voippipe {

struct DelayStats {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double p95 = 0.0;  // nearest-rank
};

/// Measured counterparts of the transport QoS factors for a completed run.
/// snr_db is empty while unknown; snr_infinite marks exactly zero error
/// energy.
struct QosReport {
  uint64_t sent_count = 0;
  uint64_t received_count = 0;
  uint64_t late_count = 0;
  uint64_t concealed_count = 0;
  double loss_rate = 0.0;
  std::optional<DelayStats> delay_ms;
  std::optional<double> interarrival_jitter_ms;
  std::optional<double> snr_db;
  bool snr_infinite = false;
  std::vector<double> jitter_raw_ms;  // per-packet |D(i-1,i)| series

  std::string to_json() const;
};

double loss_rate(uint64_t sent_count,
                 const std::vector<DeliveredPacket>& delivered);

/// RFC 3550 smoothed interarrival jitter, J += (|D| - J)/16, where D
/// compares arrival spacing against timestamp spacing at the codec clock.
/// Needs at least two packets. raw_out, when given, receives the |D| series.
double interarrival_jitter(const std::vector<DeliveredPacket>& delivered,
                           int sample_rate_hz,
                           std::vector<double>* raw_out = nullptr);

DelayStats delay_stats(const std::vector<DeliveredPacket>& delivered);

struct SnrResult {
  double snr_db = 0.0;
  bool infinite = false;
};

/// 10*log10(sum s^2 / sum (s-r)^2) over the aligned overlap;
/// original[i] is compared against received[i + alignment_offset].
/// The overlap must cover at least one second of audio.
SnrResult reconstruction_snr(const AudioSignal& original,
                             const AudioSignal& received,
                             long alignment_offset);

}  // namespace voippipe
