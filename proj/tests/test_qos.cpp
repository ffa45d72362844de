// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "qos.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "g711.hpp"

using namespace voippipe;

namespace {

std::vector<VoipPacket> make_packets(size_t n) {
  std::vector<VoipPacket> packets(n);
  for (size_t i = 0; i < n; ++i) {
    packets[i].header.payload_type = 0;
    packets[i].header.sequence = static_cast<uint16_t>(i);
    packets[i].header.timestamp = static_cast<uint32_t>(160 * i);
    packets[i].header.stream_id = 1;
    packets[i].payload.assign(160, 0xFF);
  }
  return packets;
}

// perfectly paced deliveries: arrival spacing equals timestamp spacing
std::vector<DeliveredPacket> paced(size_t n, double delay_ms) {
  std::vector<DeliveredPacket> out;
  const auto packets = make_packets(n);
  for (size_t i = 0; i < n; ++i) {
    DeliveredPacket dp;
    dp.packet = packets[i];
    dp.send_time_ms = 20.0 * static_cast<double>(i);
    dp.arrival_time_ms = dp.send_time_ms + delay_ms;
    out.push_back(dp);
  }
  return out;
}

// Golden jitter value for the seed-11 channel in the band test below,
// frozen from the first oracle run (10000 packets, 20 ms pacing, uniform
// 0-10 ms jitter, base delay 30 ms, seed 11, 8 kHz clock). The band checks
// establish the estimator is right; the golden pins determinism.
constexpr double kJitterGoldenSeed11 = 3.9742154999464141;

}  // namespace

TEST_CASE("loss_rate basics") {
  const auto all = paced(100, 10.0);
  CHECK(loss_rate(100, all) == 0.0);
  CHECK(loss_rate(100, {}) == 1.0);
  CHECK(loss_rate(200, all) == 0.5);
  CHECK_THROWS_AS(loss_rate(0, all), Error);
  CHECK_THROWS_AS(loss_rate(50, all), Error);  // delivered > sent
}

TEST_CASE("loss_rate equals the channel's own drop tally exactly") {
  const auto packets = make_packets(1000);
  ChannelConfig cfg;
  cfg.loss_prob = 0.25;
  cfg.seed = 7;
  const ChannelResult result = simulate_channel(packets, cfg, 20.0);
  const double measured = loss_rate(1000, result.delivered);
  const double from_counter =
      static_cast<double>(result.dropped_count) / 1000.0;
  CHECK(measured == from_counter);  // bit-exact, not approximate
}

TEST_CASE("perfect pacing gives zero jitter") {
  CHECK(interarrival_jitter(paced(200, 35.0), 8000) == 0.0);
}

TEST_CASE("jitter needs at least two packets") {
  CHECK_THROWS_AS(interarrival_jitter(paced(1, 10.0), 8000), Error);
  CHECK_THROWS_AS(interarrival_jitter({}, 8000), Error);
}

TEST_CASE("jitter ignores constant delay shifts") {
  auto base = paced(500, 5.0);
  // perturb arrivals deterministically so J is nonzero
  for (size_t i = 0; i < base.size(); ++i) {
    base[i].arrival_time_ms += (i % 7) * 0.9;
  }
  const double j1 = interarrival_jitter(base, 8000);
  CHECK(j1 > 0.0);

  auto shifted = base;
  for (auto& dp : shifted) dp.arrival_time_ms += 123.456;
  const double j2 = interarrival_jitter(shifted, 8000);
  CHECK(j1 == doctest::Approx(j2).epsilon(1e-12));
}

TEST_CASE("uniform channel jitter lands in the expected band") {
  // Uniform(0, 10) extra delay: |D| of consecutive packets is the absolute
  // difference of two uniforms, mean 10/3; the RFC 3550 smoother tracks
  // that mean, so J must sit strictly inside (0, 10).
  // J is an exponential average with 1/16 gain, so its endpoint reflects
  // roughly the last 30 packets and wobbles around 10/3 with sigma ~0.4;
  // (1.5, 5.5) is a >3-sigma acceptance band per seed.
  const auto packets = make_packets(10000);
  std::vector<double> estimates;
  for (uint64_t seed : {11, 12, 13, 14, 15}) {
    ChannelConfig cfg;
    cfg.jitter_ms = 10.0;
    cfg.base_delay_ms = 30.0;
    cfg.seed = seed;
    const ChannelResult result = simulate_channel(packets, cfg, 20.0);
    REQUIRE(result.delivered.size() == 10000);
    const double j = interarrival_jitter(result.delivered, 8000);
    CAPTURE(seed);
    CHECK(j > 1.5);
    CHECK(j < 5.5);
    estimates.push_back(j);
  }
  // frozen golden for the first seed
  CHECK(estimates[0] ==
        doctest::Approx(kJitterGoldenSeed11).epsilon(1e-12));
}

TEST_CASE("delay statistics") {
  SUBCASE("constant channel") {
    const DelayStats stats = delay_stats(paced(50, 40.0));
    CHECK(stats.min == doctest::Approx(40.0));
    CHECK(stats.mean == doctest::Approx(40.0));
    CHECK(stats.max == doctest::Approx(40.0));
    CHECK(stats.p95 == doctest::Approx(40.0));
  }
  SUBCASE("three delays") {
    auto d = paced(3, 0.0);
    d[0].arrival_time_ms = d[0].send_time_ms + 10.0;
    d[1].arrival_time_ms = d[1].send_time_ms + 20.0;
    d[2].arrival_time_ms = d[2].send_time_ms + 30.0;
    const DelayStats stats = delay_stats(d);
    CHECK(stats.min == doctest::Approx(10.0));
    CHECK(stats.mean == doctest::Approx(20.0));
    CHECK(stats.max == doctest::Approx(30.0));
    CHECK(stats.p95 == doctest::Approx(30.0));  // rank ceil(0.95*3) = 3
  }
  SUBCASE("nearest-rank p95 over 1..100") {
    auto d = paced(100, 0.0);
    for (size_t i = 0; i < 100; ++i) {
      d[i].arrival_time_ms = d[i].send_time_ms + static_cast<double>(i + 1);
    }
    CHECK(delay_stats(d).p95 == doctest::Approx(95.0));
  }
  SUBCASE("empty input") { CHECK_THROWS_AS(delay_stats({}), Error); }
}

TEST_CASE("reconstruction SNR") {
  AudioSignal s;
  s.sample_rate_hz = 8000;
  s.samples.resize(9000);
  for (size_t i = 0; i < s.samples.size(); ++i) {
    // even values so the half-amplitude copy below is exact
    s.samples[i] = static_cast<int16_t>(((i * 37) % 2000) * 2 - 2000);
  }

  SUBCASE("identical signals are the infinite marker") {
    const SnrResult r = reconstruction_snr(s, s, 0);
    CHECK(r.infinite);
  }
  SUBCASE("half amplitude is about 6.02 dB") {
    AudioSignal half = s;
    for (auto& x : half.samples) x = static_cast<int16_t>(x / 2);
    const SnrResult r = reconstruction_snr(s, half, 0);
    CHECK_FALSE(r.infinite);
    CHECK(r.snr_db == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-9));
  }
  SUBCASE("scaling both signals cancels") {
    AudioSignal r1 = s;
    for (size_t i = 0; i < r1.samples.size(); ++i) {
      r1.samples[i] = static_cast<int16_t>(r1.samples[i] + (i % 3) - 1);
    }
    const SnrResult base = reconstruction_snr(s, r1, 0);

    AudioSignal s2 = s;
    AudioSignal r2 = r1;
    for (auto& x : s2.samples) x = static_cast<int16_t>(x * 2);
    for (auto& x : r2.samples) x = static_cast<int16_t>(x * 2);
    const SnrResult scaled = reconstruction_snr(s2, r2, 0);
    CHECK(base.snr_db == doctest::Approx(scaled.snr_db).epsilon(1e-9));
  }
  SUBCASE("alignment offset pairs original[i] with received[i+offset]") {
    AudioSignal shifted;
    shifted.sample_rate_hz = 8000;
    shifted.samples.assign(100, 0);
    shifted.samples.insert(shifted.samples.end(), s.samples.begin(),
                           s.samples.end());
    const SnrResult r = reconstruction_snr(s, shifted, 100);
    CHECK(r.infinite);
  }
  SUBCASE("sample-rate mismatch is rejected") {
    AudioSignal other = s;
    other.sample_rate_hz = 16000;
    CHECK_THROWS_AS(reconstruction_snr(s, other, 0), Error);
  }
  SUBCASE("insufficient overlap is rejected") {
    AudioSignal brief;
    brief.sample_rate_hz = 8000;
    brief.samples.assign(4000, 123);
    CHECK_THROWS_AS(reconstruction_snr(brief, brief, 0), Error);
  }
}

TEST_CASE("mu-law round trip of a -3 dBFS tone clears 30 dB") {
  const AudioSignal tone = generate_tone(1000.0, 2.0, 0.7079, 8000);
  EncodedPayload enc = encode_frame(tone.samples, CompandingLaw::MuLaw);
  AudioSignal decoded;
  decoded.sample_rate_hz = 8000;
  decoded.samples = decode_frame(enc);
  const SnrResult r = reconstruction_snr(tone, decoded, 0);
  CHECK_FALSE(r.infinite);
  CHECK(r.snr_db >= 30.0);
}

TEST_CASE("report JSON carries the exact field set") {
  QosReport report;
  report.sent_count = 100;
  report.received_count = 90;
  report.late_count = 2;
  report.concealed_count = 10;
  report.loss_rate = 0.1;
  DelayStats d;
  d.min = 1.0;
  d.mean = 2.0;
  d.max = 3.0;
  d.p95 = 2.5;
  report.delay_ms = d;
  report.interarrival_jitter_ms = 0.5;
  report.snr_infinite = true;

  const std::string json = report.to_json();
  CHECK(json.find("\"sent_count\": 100") != std::string::npos);
  CHECK(json.find("\"received_count\": 90") != std::string::npos);
  CHECK(json.find("\"late_count\": 2") != std::string::npos);
  CHECK(json.find("\"concealed_count\": 10") != std::string::npos);
  CHECK(json.find("\"loss_rate\": 0.1") != std::string::npos);
  CHECK(json.find("\"delay_ms\"") != std::string::npos);
  CHECK(json.find("\"p95\": 2.5") != std::string::npos);
  CHECK(json.find("\"interarrival_jitter_ms\": 0.5") != std::string::npos);
  CHECK(json.find("\"snr_db\": \"infinite\"") != std::string::npos);

  // absent measurements serialize as null, not as missing keys
  QosReport sparse;
  sparse.sent_count = 1;
  sparse.received_count = 1;
  const std::string sparse_json = sparse.to_json();
  CHECK(sparse_json.find("\"delay_ms\": null") != std::string::npos);
  CHECK(sparse_json.find("\"interarrival_jitter_ms\": null") !=
        std::string::npos);
  CHECK(sparse_json.find("\"snr_db\": null") != std::string::npos);
}
