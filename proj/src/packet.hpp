// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "g711.hpp"

namespace voippipe {

// Wire layout, byte-exact:
//   byte 0      0x80 (version 2, no padding/extension/CSRC)
//   byte 1      payload type (marker bit 0)
//   bytes 2-3   sequence, big-endian
//   bytes 4-7   timestamp, big-endian (samples at the codec clock)
//   bytes 8-11  stream id, big-endian
//   bytes 12+   payload
inline constexpr size_t kWireHeaderSize = 12;
inline constexpr uint8_t kRtpVersion = 2;

struct PacketHeader {
  uint8_t payload_type = 0;  // 0 = mu-law, 8 = A-law
  uint16_t sequence = 0;     // wraps mod 2^16
  uint32_t timestamp = 0;    // samples at the codec clock
  uint32_t stream_id = 0;    // constant per session

  bool operator==(const PacketHeader&) const = default;
};

struct VoipPacket {
  PacketHeader header;
  std::vector<uint8_t> payload;

  bool operator==(const VoipPacket&) const = default;
};

/// Frame sizing for packetization; sample_rate_hz * frame_ms must be a
/// multiple of 1000 so frames hold a whole number of samples.
struct FrameConfig {
  int frame_ms = 20;
  int sample_rate_hz = 8000;

  int frame_samples() const { return sample_rate_hz * frame_ms / 1000; }
};

void validate_frame_config(const FrameConfig& cfg);

/// Splits the codeword stream into consecutive frame-sized packets. A final
/// partial frame is padded with the law's silence codeword. Sequence numbers
/// increment mod 2^16 and timestamps advance by frame_samples per packet.
std::vector<VoipPacket> packetize(const std::vector<uint8_t>& payload_stream,
                                  const FrameConfig& cfg, CompandingLaw law,
                                  uint16_t initial_seq, uint32_t initial_ts,
                                  uint32_t stream_id);

std::vector<uint8_t> serialize_packet(const VoipPacket& packet);

/// Exact inverse of serialize_packet on valid input. Rejects inputs shorter
/// than 13 bytes, a version other than 2, and payload types other than 0/8.
VoipPacket parse_packet(const std::vector<uint8_t>& wire);
VoipPacket parse_packet(const uint8_t* data, size_t size);

/// Concatenates payloads; callers supply packets already sorted by sequence.
std::vector<uint8_t> depacketize(const std::vector<VoipPacket>& packets);

}  // namespace voippipe
