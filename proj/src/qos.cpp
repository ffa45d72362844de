// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "qos.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "json.hpp"

namespace voippipe {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, "qos: " + msg);
}

}  // namespace

double loss_rate(uint64_t sent_count,
                 const std::vector<DeliveredPacket>& delivered) {
  if (sent_count == 0) fail("sent count must be positive");
  if (delivered.size() > sent_count) {
    fail("delivered count exceeds sent count");
  }
  // computed as (sent - received)/sent so the result is bit-identical to a
  // drop-counter-derived rate
  return static_cast<double>(sent_count - delivered.size()) /
         static_cast<double>(sent_count);
}

double interarrival_jitter(const std::vector<DeliveredPacket>& delivered,
                           int sample_rate_hz, std::vector<double>* raw_out) {
  if (delivered.size() < 2) fail("jitter needs at least two packets");
  if (sample_rate_hz <= 0) fail("invalid sample rate");

  const double ms_per_sample = 1000.0 / sample_rate_hz;
  double j = 0.0;
  for (size_t i = 1; i < delivered.size(); ++i) {
    const double arrival_spacing =
        delivered[i].arrival_time_ms - delivered[i - 1].arrival_time_ms;
    const double ts_spacing =
        (static_cast<double>(delivered[i].packet.header.timestamp) -
         static_cast<double>(delivered[i - 1].packet.header.timestamp)) *
        ms_per_sample;
    const double d = std::abs(arrival_spacing - ts_spacing);
    if (raw_out) raw_out->push_back(d);
    j += (d - j) / 16.0;
  }
  return j;
}

DelayStats delay_stats(const std::vector<DeliveredPacket>& delivered) {
  if (delivered.empty()) fail("delay stats need at least one packet");

  std::vector<double> delays;
  delays.reserve(delivered.size());
  double sum = 0.0;
  for (const auto& dp : delivered) {
    const double d = dp.arrival_time_ms - dp.send_time_ms;
    delays.push_back(d);
    sum += d;
  }
  std::sort(delays.begin(), delays.end());

  DelayStats stats;
  stats.min = delays.front();
  stats.max = delays.back();
  stats.mean = sum / static_cast<double>(delays.size());
  // nearest-rank: rank ceil(0.95 n), computed in integers
  const size_t n = delays.size();
  const size_t rank = (n * 95 + 99) / 100;
  stats.p95 = delays[rank - 1];
  return stats;
}

SnrResult reconstruction_snr(const AudioSignal& original,
                             const AudioSignal& received,
                             long alignment_offset) {
  if (original.sample_rate_hz != received.sample_rate_hz) {
    fail("sample rate mismatch");
  }

  // original[i] pairs with received[i + offset]
  long begin = std::max(0L, -alignment_offset);
  long end = std::min(static_cast<long>(original.samples.size()),
                      static_cast<long>(received.samples.size()) -
                          alignment_offset);
  const long overlap = end - begin;
  if (overlap < original.sample_rate_hz) {
    fail("insufficient overlap: need at least one second of audio");
  }

  double signal_energy = 0.0;
  double error_energy = 0.0;
  for (long i = begin; i < end; ++i) {
    const double s = original.samples[static_cast<size_t>(i)];
    const double r =
        received.samples[static_cast<size_t>(i + alignment_offset)];
    signal_energy += s * s;
    error_energy += (s - r) * (s - r);
  }

  SnrResult result;
  if (error_energy == 0.0) {
    result.infinite = true;
    return result;
  }
  result.snr_db = 10.0 * std::log10(signal_energy / error_energy);
  return result;
}

std::string QosReport::to_json() const {
  nlohmann::ordered_json j;
  j["sent_count"] = sent_count;
  j["received_count"] = received_count;
  j["late_count"] = late_count;
  j["concealed_count"] = concealed_count;
  j["loss_rate"] = loss_rate;
  if (delay_ms) {
    j["delay_ms"] = {{"min", delay_ms->min},
                     {"mean", delay_ms->mean},
                     {"max", delay_ms->max},
                     {"p95", delay_ms->p95}};
  } else {
    j["delay_ms"] = nullptr;
  }
  if (interarrival_jitter_ms) {
    j["interarrival_jitter_ms"] = *interarrival_jitter_ms;
  } else {
    j["interarrival_jitter_ms"] = nullptr;
  }
  if (snr_infinite) {
    j["snr_db"] = "infinite";
  } else if (snr_db) {
    j["snr_db"] = *snr_db;
  } else {
    j["snr_db"] = nullptr;
  }
  if (!jitter_raw_ms.empty()) j["jitter_raw_ms"] = jitter_raw_ms;
  return j.dump(2) + "\n";
}

}  // namespace voippipe
