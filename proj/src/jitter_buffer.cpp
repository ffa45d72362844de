// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "jitter_buffer.hpp"

#include <string>

#include "errors.hpp"

namespace voippipe {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, "jitter_buffer: " + msg);
}

}  // namespace

JitterBuffer::JitterBuffer(int frame_samples, CompandingLaw law,
                           PlayoutConfig config)
    : frame_samples_(frame_samples), law_(law), config_(config) {
  if (frame_samples <= 0) {
    fail(ErrorKind::InvalidArgument, "frame size must be positive");
  }
  if (config.playout_delay_ms < 0.0) {
    fail(ErrorKind::InvalidArgument, "playout delay must be non-negative");
  }
}

void JitterBuffer::prime(uint16_t first_sequence) {
  expected_seq_ = first_sequence;
}

void JitterBuffer::push(const DeliveredPacket& dp) {
  if (stream_id_ && dp.packet.header.stream_id != *stream_id_) {
    fail(ErrorKind::InvalidArgument,
         "stream_id mismatch: expected " + std::to_string(*stream_id_) +
             ", got " + std::to_string(dp.packet.header.stream_id));
  }
  if (dp.packet.header.payload_type != payload_type(law_)) {
    fail(ErrorKind::InvalidArgument, "payload type does not match buffer law");
  }
  if (dp.packet.payload.size() != static_cast<size_t>(frame_samples_)) {
    fail(ErrorKind::InvalidArgument,
         "payload size " + std::to_string(dp.packet.payload.size()) +
             " does not match frame size " + std::to_string(frame_samples_));
  }
  if (!stream_id_) stream_id_ = dp.packet.header.stream_id;

  const uint16_t seq = dp.packet.header.sequence;
  if (!expected_seq_) expected_seq_ = seq;

  if (seq_behind(seq, *expected_seq_)) {
    ++stats_.late;
    return;
  }
  if (store_.count(seq)) {
    ++stats_.duplicates;
    return;
  }
  store_.emplace(seq, Entry{dp.packet.payload, dp.arrival_time_ms});
  ++stats_.received;
}

std::vector<uint8_t> JitterBuffer::conceal() {
  if (config_.concealment == Concealment::RepeatLast && !last_played_.empty()) {
    return last_played_;
  }
  return std::vector<uint8_t>(static_cast<size_t>(frame_samples_),
                              silence_codeword(law_));
}

void JitterBuffer::purge_late() {
  for (auto it = store_.begin(); it != store_.end();) {
    if (seq_behind(it->first, *expected_seq_)) {
      ++stats_.late;  // arrived, but its slot has already played
      it = store_.erase(it);
    } else {
      ++it;
    }
  }
}

PlayoutFrame JitterBuffer::pop_frame(double playout_time_ms) {
  if (!expected_seq_) expected_seq_ = 0;

  PlayoutFrame frame;
  auto it = store_.find(*expected_seq_);
  if (it != store_.end() && it->second.arrival_time_ms <= playout_time_ms) {
    frame.payload = std::move(it->second.payload);
    frame.origin = FrameOrigin::Received;
    store_.erase(it);
    last_played_ = frame.payload;
    ++stats_.played_received;
  } else {
    frame.payload = conceal();
    frame.origin = FrameOrigin::Concealed;
    ++stats_.concealed;
  }
  expected_seq_ = static_cast<uint16_t>(*expected_seq_ + 1);
  purge_late();
  return frame;
}

}  // namespace voippipe
