// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "packet.hpp"

#include <string>

#include "errors.hpp"

namespace voippipe {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, "packetizer: " + msg);
}

}  // namespace

void validate_frame_config(const FrameConfig& cfg) {
  if (cfg.frame_ms <= 0) fail(ErrorKind::InvalidArgument, "frame_ms must be positive");
  if (cfg.sample_rate_hz <= 0) {
    fail(ErrorKind::InvalidArgument, "sample rate must be positive");
  }
  if ((static_cast<long long>(cfg.sample_rate_hz) * cfg.frame_ms) % 1000 != 0) {
    fail(ErrorKind::InvalidArgument,
         "frame of " + std::to_string(cfg.frame_ms) + " ms at " +
             std::to_string(cfg.sample_rate_hz) +
             " Hz does not hold a whole number of samples");
  }
}

std::vector<VoipPacket> packetize(const std::vector<uint8_t>& payload_stream,
                                  const FrameConfig& cfg, CompandingLaw law,
                                  uint16_t initial_seq, uint32_t initial_ts,
                                  uint32_t stream_id) {
  validate_frame_config(cfg);
  if (payload_stream.empty()) fail(ErrorKind::InvalidArgument, "empty stream");

  const size_t frame = static_cast<size_t>(cfg.frame_samples());
  const size_t count = (payload_stream.size() + frame - 1) / frame;
  const uint8_t pad = silence_codeword(law);

  std::vector<VoipPacket> packets;
  packets.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    VoipPacket p;
    p.header.payload_type = payload_type(law);
    p.header.sequence = static_cast<uint16_t>(initial_seq + i);
    p.header.timestamp =
        initial_ts + static_cast<uint32_t>(i) * static_cast<uint32_t>(frame);
    p.header.stream_id = stream_id;
    const size_t begin = i * frame;
    const size_t end = std::min(begin + frame, payload_stream.size());
    p.payload.assign(payload_stream.begin() + static_cast<long>(begin),
                     payload_stream.begin() + static_cast<long>(end));
    p.payload.resize(frame, pad);
    packets.push_back(std::move(p));
  }
  return packets;
}

std::vector<uint8_t> serialize_packet(const VoipPacket& packet) {
  std::vector<uint8_t> wire;
  wire.reserve(kWireHeaderSize + packet.payload.size());
  wire.push_back(0x80);  // V=2, P=0, X=0, CC=0
  wire.push_back(packet.header.payload_type & 0x7F);
  wire.push_back(static_cast<uint8_t>(packet.header.sequence >> 8));
  wire.push_back(static_cast<uint8_t>(packet.header.sequence & 0xFF));
  wire.push_back(static_cast<uint8_t>(packet.header.timestamp >> 24));
  wire.push_back(static_cast<uint8_t>((packet.header.timestamp >> 16) & 0xFF));
  wire.push_back(static_cast<uint8_t>((packet.header.timestamp >> 8) & 0xFF));
  wire.push_back(static_cast<uint8_t>(packet.header.timestamp & 0xFF));
  wire.push_back(static_cast<uint8_t>(packet.header.stream_id >> 24));
  wire.push_back(static_cast<uint8_t>((packet.header.stream_id >> 16) & 0xFF));
  wire.push_back(static_cast<uint8_t>((packet.header.stream_id >> 8) & 0xFF));
  wire.push_back(static_cast<uint8_t>(packet.header.stream_id & 0xFF));
  wire.insert(wire.end(), packet.payload.begin(), packet.payload.end());
  return wire;
}

VoipPacket parse_packet(const uint8_t* data, size_t size) {
  if (size < kWireHeaderSize + 1) fail(ErrorKind::Format, "truncated packet");
  const uint8_t version = data[0] >> 6;
  if (version != kRtpVersion) {
    fail(ErrorKind::Format, "bad version: " + std::to_string(version));
  }
  const uint8_t pt = data[1] & 0x7F;
  if (pt != 0 && pt != 8) {
    fail(ErrorKind::Format, "unknown payload type: " + std::to_string(pt));
  }

  VoipPacket p;
  p.header.payload_type = pt;
  p.header.sequence = static_cast<uint16_t>((data[2] << 8) | data[3]);
  p.header.timestamp = (static_cast<uint32_t>(data[4]) << 24) |
                       (static_cast<uint32_t>(data[5]) << 16) |
                       (static_cast<uint32_t>(data[6]) << 8) |
                       static_cast<uint32_t>(data[7]);
  p.header.stream_id = (static_cast<uint32_t>(data[8]) << 24) |
                       (static_cast<uint32_t>(data[9]) << 16) |
                       (static_cast<uint32_t>(data[10]) << 8) |
                       static_cast<uint32_t>(data[11]);
  p.payload.assign(data + kWireHeaderSize, data + size);
  return p;
}

VoipPacket parse_packet(const std::vector<uint8_t>& wire) {
  return parse_packet(wire.data(), wire.size());
}

std::vector<uint8_t> depacketize(const std::vector<VoipPacket>& packets) {
  std::vector<uint8_t> out;
  size_t total = 0;
  for (const auto& p : packets) total += p.payload.size();
  out.reserve(total);
  for (const auto& p : packets) {
    out.insert(out.end(), p.payload.begin(), p.payload.end());
  }
  return out;
}

}  // namespace voippipe
