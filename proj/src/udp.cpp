// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "udp.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

#include "errors.hpp"

namespace voippipe {
namespace {

std::string errno_text() { return std::strerror(errno); }

// Closes the descriptor on every exit path.
struct SocketGuard {
  int fd = -1;
  ~SocketGuard() {
    if (fd >= 0) ::close(fd);
  }
  SocketGuard() = default;
  SocketGuard(const SocketGuard&) = delete;
  SocketGuard& operator=(const SocketGuard&) = delete;
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

SendReport send_udp(const std::vector<VoipPacket>& packets,
                    const std::string& host, uint16_t port, double pacing_ms) {
  if (packets.empty()) {
    throw Error(ErrorKind::InvalidArgument, "send: no packets to send");
  }
  if (!(pacing_ms >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "send: pacing must be non-negative");
  }

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_DGRAM;
  hints.ai_protocol = IPPROTO_UDP;
  char port_text[16];
  std::snprintf(port_text, sizeof(port_text), "%u", static_cast<unsigned>(port));

  addrinfo* result = nullptr;
  int rc = ::getaddrinfo(host.c_str(), port_text, &hints, &result);
  if (rc != 0) {
    throw Error(ErrorKind::Socket, "send: cannot resolve host '" + host +
                                       "': " + gai_strerror(rc));
  }

  SocketGuard sock;
  addrinfo* chosen = nullptr;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    sock.fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (sock.fd >= 0) {
      chosen = ai;
      break;
    }
  }
  if (chosen == nullptr) {
    ::freeaddrinfo(result);
    throw Error(ErrorKind::Socket, "send: cannot open socket: " + errno_text());
  }
  // connect() pins the destination so plain send() suffices per datagram.
  if (::connect(sock.fd, chosen->ai_addr, chosen->ai_addrlen) != 0) {
    std::string text = errno_text();
    ::freeaddrinfo(result);
    throw Error(ErrorKind::Socket, "send: cannot connect socket: " + text);
  }
  ::freeaddrinfo(result);

  SendReport report;
  report.send_times_ms.reserve(packets.size());
  const auto start = std::chrono::steady_clock::now();
  for (size_t i = 0; i < packets.size(); ++i) {
    // Absolute schedule, not per-iteration sleep, so pacing error does not
    // accumulate across a long stream.
    const auto due =
        start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double, std::milli>(
                        pacing_ms * static_cast<double>(i)));
    std::this_thread::sleep_until(due);

    const std::vector<uint8_t> wire = serialize_packet(packets[i]);
    const ssize_t sent = ::send(sock.fd, wire.data(), wire.size(), 0);
    if (sent < 0 || static_cast<size_t>(sent) != wire.size()) {
      throw Error(ErrorKind::Socket, "send: datagram send failed: " +
                                         errno_text());
    }
    report.send_times_ms.push_back(ms_since(start));
    report.wire_bytes += wire.size();
    ++report.sent_count;
  }
  return report;
}

RecvResult recv_udp(uint16_t listen_port, double idle_timeout_ms) {
  if (!(idle_timeout_ms > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "recv: idle timeout must be positive");
  }

  // Prefer one IPv6 socket with V6ONLY off: it accepts IPv4 senders as
  // mapped addresses, so both families work without juggling two sockets.
  SocketGuard sock;
  sock.fd = ::socket(AF_INET6, SOCK_DGRAM, IPPROTO_UDP);
  bool using_ipv6 = sock.fd >= 0;
  if (using_ipv6) {
    int off = 0;
    if (::setsockopt(sock.fd, IPPROTO_IPV6, IPV6_V6ONLY, &off, sizeof(off)) !=
        0) {
      ::close(sock.fd);
      sock.fd = -1;
      using_ipv6 = false;
    }
  }
  if (!using_ipv6) {
    sock.fd = ::socket(AF_INET, SOCK_DGRAM, IPPROTO_UDP);
    if (sock.fd < 0) {
      throw Error(ErrorKind::Socket,
                  "recv: cannot open socket: " + errno_text());
    }
  }

  int reuse = 1;
  ::setsockopt(sock.fd, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof(reuse));

  if (using_ipv6) {
    sockaddr_in6 addr{};
    addr.sin6_family = AF_INET6;
    addr.sin6_addr = in6addr_any;
    addr.sin6_port = htons(listen_port);
    if (::bind(sock.fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) !=
        0) {
      throw Error(ErrorKind::Socket, "recv: cannot bind port " +
                                         std::to_string(listen_port) + ": " +
                                         errno_text());
    }
  } else {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(listen_port);
    if (::bind(sock.fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) !=
        0) {
      throw Error(ErrorKind::Socket, "recv: cannot bind port " +
                                         std::to_string(listen_port) + ": " +
                                         errno_text());
    }
  }

  RecvResult result;
  std::vector<uint8_t> buffer(65536);
  const int timeout_int = static_cast<int>(std::clamp<long long>(
      std::llround(idle_timeout_ms), 1,
      std::numeric_limits<int>::max()));

  std::chrono::steady_clock::time_point first_arrival{};
  bool have_first = false;
  std::vector<std::pair<double, VoipPacket>> arrivals;  // (ms, packet)

  for (;;) {
    pollfd pfd{};
    pfd.fd = sock.fd;
    pfd.events = POLLIN;
    const int ready = ::poll(&pfd, 1, timeout_int);
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::Socket, "recv: poll failed: " + errno_text());
    }
    if (ready == 0) break;  // idle window expired

    const ssize_t got =
        ::recvfrom(sock.fd, buffer.data(), buffer.size(), 0, nullptr, nullptr);
    if (got < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::Socket, "recv: recvfrom failed: " + errno_text());
    }
    const auto now = std::chrono::steady_clock::now();
    if (!have_first) {
      first_arrival = now;
      have_first = true;
    }
    try {
      VoipPacket packet =
          parse_packet(buffer.data(), static_cast<size_t>(got));
      const double arrival_ms =
          std::chrono::duration<double, std::milli>(now - first_arrival)
              .count();
      arrivals.emplace_back(arrival_ms, std::move(packet));
    } catch (const Error&) {
      ++result.malformed_count;
    }
  }

  if (arrivals.empty()) {
    throw Error(ErrorKind::NoTraffic,
                "recv: no packets arrived within " +
                    std::to_string(timeout_int) + " ms");
  }

  // Reconstruct nominal send times from the codec-clock timestamps. The
  // smallest one maps to zero so delays stay non-negative and comparable.
  const uint32_t sample_rate = 8000;
  double min_send = std::numeric_limits<double>::infinity();
  std::vector<double> send_ms(arrivals.size());
  const uint32_t base_ts = arrivals.front().second.header.timestamp;
  for (size_t i = 0; i < arrivals.size(); ++i) {
    // Unsigned subtraction keeps ordering sane across timestamp wrap.
    const uint32_t delta = arrivals[i].second.header.timestamp - base_ts;
    // Interpret deltas in the upper half of the range as "before base".
    const double samples = (delta > 0x80000000u)
                               ? -static_cast<double>(~delta + 1u)
                               : static_cast<double>(delta);
    send_ms[i] = samples * 1000.0 / sample_rate;
    min_send = std::min(min_send, send_ms[i]);
  }

  result.delivered.reserve(arrivals.size());
  for (size_t i = 0; i < arrivals.size(); ++i) {
    DeliveredPacket dp;
    dp.packet = std::move(arrivals[i].second);
    dp.send_time_ms = send_ms[i] - min_send;
    dp.arrival_time_ms = arrivals[i].first;
    result.delivered.push_back(std::move(dp));
  }
  return result;
}

}  // namespace voippipe
