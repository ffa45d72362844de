// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "channel.hpp"
#include "packet.hpp"

namespace voippipe {

inline constexpr uint16_t kDefaultPort = 9714;

struct SendReport {
  uint64_t sent_count = 0;
  uint64_t wire_bytes = 0;
  std::vector<double> send_times_ms;  // relative to the first send
};

/// Serializes each packet into one UDP datagram and sends them spaced
/// pacing_ms apart. host may be an IPv4/IPv6 address or a resolvable name.
SendReport send_udp(const std::vector<VoipPacket>& packets,
                    const std::string& host, uint16_t port, double pacing_ms);

struct RecvResult {
  std::vector<DeliveredPacket> delivered;  // arrival order
  uint64_t malformed_count = 0;
};

/// Binds listen_port (IPv6 dual-stack when available, IPv4 otherwise) and
/// collects datagrams until idle_timeout_ms passes with no traffic.
/// Arrival times come from a monotonic clock, relative to the first
/// datagram; malformed datagrams are counted and skipped. Send times are
/// reconstructed from packet timestamps (no sender clock is available), so
/// per-packet delays are relative, with the minimum normalized to zero.
RecvResult recv_udp(uint16_t listen_port, double idle_timeout_ms);

}  // namespace voippipe
