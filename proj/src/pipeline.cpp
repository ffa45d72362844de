// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "errors.hpp"
#include "json.hpp"
#include "udp.hpp"

namespace voippipe {
namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, "pipeline: " + msg);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    fail(ErrorKind::Io, "cannot create directory '" + dir + "': " +
                            ec.message());
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

// Received packets in wrap-aware sequence order, duplicates dropped: the
// depacketizer's input for the "unpacked" receiver-side view.
std::vector<VoipPacket> sequence_ordered(
    const std::vector<DeliveredPacket>& delivered) {
  const uint16_t base = first_sequence_of(delivered);
  std::map<uint16_t, const VoipPacket*> by_offset;
  for (const auto& dp : delivered) {
    by_offset.emplace(
        static_cast<uint16_t>(dp.packet.header.sequence - base), &dp.packet);
  }
  std::vector<VoipPacket> ordered;
  ordered.reserve(by_offset.size());
  for (const auto& [offset, packet] : by_offset) ordered.push_back(*packet);
  return ordered;
}

}  // namespace

TransmitResult run_transmit(const AudioSignal& input,
                            const TransmitConfig& cfg) {
  TransmitResult result;
  result.law = cfg.law;
  result.frame.frame_ms = cfg.frame_ms;
  result.frame.sample_rate_hz = input.sample_rate_hz;
  validate_frame_config(result.frame);

  const AudioSignal gained = apply_gain(input, cfg.gain);
  const EncodedPayload encoded = encode_frame(gained.samples, cfg.law);
  result.packets =
      packetize(encoded.bytes, result.frame, cfg.law, cfg.initial_sequence,
                cfg.initial_timestamp, cfg.stream_id);

  EncodedPayload padded;
  padded.law = cfg.law;
  padded.bytes = depacketize(result.packets);
  result.decoded.sample_rate_hz = input.sample_rate_hz;
  result.decoded.samples = decode_frame(padded);
  return result;
}

uint16_t first_sequence_of(const std::vector<DeliveredPacket>& delivered) {
  if (delivered.empty()) {
    fail(ErrorKind::InvalidArgument, "no packets delivered");
  }
  uint16_t lowest = delivered.front().packet.header.sequence;
  for (const auto& dp : delivered) {
    const uint16_t seq = dp.packet.header.sequence;
    if (static_cast<int16_t>(static_cast<uint16_t>(seq - lowest)) < 0) {
      lowest = seq;
    }
  }
  return lowest;
}

uint64_t estimate_frame_span(const std::vector<DeliveredPacket>& delivered) {
  const uint16_t lowest = first_sequence_of(delivered);
  uint16_t widest = 0;
  for (const auto& dp : delivered) {
    widest = std::max(
        widest, static_cast<uint16_t>(dp.packet.header.sequence - lowest));
  }
  return static_cast<uint64_t>(widest) + 1;
}

PlayoutResult play_delivered(const std::vector<DeliveredPacket>& delivered,
                             CompandingLaw law, int frame_samples,
                             int sample_rate_hz, const PlayoutConfig& playout,
                             uint16_t first_sequence, uint64_t total_frames) {
  if (delivered.empty()) {
    fail(ErrorKind::InvalidArgument, "no packets to play out");
  }
  if (total_frames == 0) {
    fail(ErrorKind::InvalidArgument, "playout needs at least one frame");
  }
  if (sample_rate_hz <= 0) {
    fail(ErrorKind::InvalidArgument, "invalid sample rate");
  }

  JitterBuffer buffer(frame_samples, law, playout);
  buffer.prime(first_sequence);

  double first_arrival = delivered.front().arrival_time_ms;
  for (const auto& dp : delivered) {
    first_arrival = std::min(first_arrival, dp.arrival_time_ms);
  }
  for (const auto& dp : delivered) buffer.push(dp);

  const double frame_duration_ms =
      static_cast<double>(frame_samples) * 1000.0 / sample_rate_hz;

  PlayoutResult result;
  result.audio.sample_rate_hz = sample_rate_hz;
  result.audio.samples.reserve(total_frames *
                               static_cast<uint64_t>(frame_samples));
  EncodedPayload frame_payload;
  frame_payload.law = law;
  for (uint64_t k = 0; k < total_frames; ++k) {
    const double pop_time = first_arrival + playout.playout_delay_ms +
                            static_cast<double>(k) * frame_duration_ms;
    PlayoutFrame frame = buffer.pop_frame(pop_time);
    frame_payload.bytes = std::move(frame.payload);
    const std::vector<int16_t> pcm = decode_frame(frame_payload);
    result.audio.samples.insert(result.audio.samples.end(), pcm.begin(),
                                pcm.end());
  }
  result.stats = buffer.stats();
  return result;
}

void write_spectrum_csv(const SpectralResult& result,
                        const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  std::fputs("freq_hz,power\n", out);
  for (size_t k = 0; k < result.freqs_hz.size(); ++k) {
    std::fprintf(out, "%.17g,%.17g\n", result.freqs_hz[k], result.power[k]);
  }
  if (std::fclose(out) != 0) {
    fail(ErrorKind::Io, "write failed for '" + path + "'");
  }
}

void write_spectrogram_csv(const SpectrogramResult& result,
                           const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  std::fputs("time_s,freq_hz,power\n", out);
  for (size_t r = 0; r < result.times_s.size(); ++r) {
    for (size_t k = 0; k < result.freqs_hz.size(); ++k) {
      std::fprintf(out, "%.17g,%.17g,%.17g\n", result.times_s[r],
                   result.freqs_hz[k], result.power[r][k]);
    }
  }
  if (std::fclose(out) != 0) {
    fail(ErrorKind::Io, "write failed for '" + path + "'");
  }
}

void run_analyze(const std::string& input_wav, const AnalysisConfig& cfg,
                 const std::string& out_dir) {
  const AudioSignal signal = read_wav(input_wav);
  ensure_dir(out_dir);

  const double overlap =
      1.0 - static_cast<double>(cfg.hop) / static_cast<double>(cfg.window_len);
  write_spectrum_csv(spectrum(signal, cfg.n_fft),
                     join_path(out_dir, "spectrum.csv"));
  write_spectrum_csv(periodogram(signal, cfg.window, cfg.n_fft),
                     join_path(out_dir, "periodogram.csv"));
  write_spectrum_csv(welch_psd(signal, cfg.window_len, overlap, cfg.window),
                     join_path(out_dir, "welch_psd.csv"));
  write_spectrogram_csv(spectrogram(signal, cfg.window_len, cfg.hop,
                                    cfg.window),
                        join_path(out_dir, "spectrogram.csv"));
}

QosReport run_loopback(const std::string& input_wav, const LoopbackConfig& cfg,
                       const std::string& out_wav,
                       const std::string& analysis_dir) {
  const AudioSignal input = read_wav(input_wav);
  const TransmitResult tx = run_transmit(input, cfg.tx);
  const ChannelResult channel = simulate_channel(
      tx.packets, cfg.channel, static_cast<double>(tx.frame.frame_ms));
  if (channel.delivered.empty()) {
    fail(ErrorKind::NoTraffic, "channel dropped every packet");
  }

  const PlayoutResult rx = play_delivered(
      channel.delivered, tx.law, tx.frame.frame_samples(),
      tx.frame.sample_rate_hz, cfg.playout, cfg.tx.initial_sequence,
      tx.packets.size());

  QosReport report;
  report.sent_count = channel.sent_count;
  report.received_count = channel.delivered.size();
  report.late_count = rx.stats.late;
  report.concealed_count = rx.stats.concealed;
  report.loss_rate = loss_rate(channel.sent_count, channel.delivered);
  report.delay_ms = delay_stats(channel.delivered);
  if (channel.delivered.size() >= 2) {
    report.interarrival_jitter_ms = interarrival_jitter(
        channel.delivered, tx.frame.sample_rate_hz, &report.jitter_raw_ms);
  }
  const size_t overlap =
      std::min(tx.decoded.samples.size(), rx.audio.samples.size());
  if (overlap >= static_cast<size_t>(tx.frame.sample_rate_hz)) {
    const SnrResult snr = reconstruction_snr(tx.decoded, rx.audio, 0);
    report.snr_infinite = snr.infinite;
    if (!snr.infinite) report.snr_db = snr.snr_db;
  }

  write_wav(rx.audio, out_wav);
  ensure_dir(analysis_dir);

  const AnalysisConfig& a = cfg.analysis;
  const double overlap_fraction =
      1.0 - static_cast<double>(a.hop) / static_cast<double>(a.window_len);
  const double byte_rate_hz =
      static_cast<double>(tx.frame.frame_samples() + kWireHeaderSize) *
      1000.0 / static_cast<double>(tx.frame.frame_ms);

  write_spectrum_csv(spectrum(tx.decoded, a.n_fft),
                     join_path(analysis_dir, "tx_spectrum.csv"));
  write_spectrum_csv(periodogram(tx.decoded, a.window, a.n_fft),
                     join_path(analysis_dir, "tx_periodogram.csv"));
  write_spectrum_csv(
      welch_psd(tx.decoded, a.window_len, overlap_fraction, a.window),
      join_path(analysis_dir, "tx_welch_psd.csv"));
  write_spectrogram_csv(spectrogram(tx.decoded, a.window_len, a.hop, a.window),
                        join_path(analysis_dir, "tx_spectrogram.csv"));
  write_spectrum_csv(packed_spectrum(tx.packets, a.n_fft, byte_rate_hz),
                     join_path(analysis_dir, "tx_packed_spectrum.csv"));

  // Receiver-side view before playout: survivors in sequence order,
  // depacketized and decoded.
  EncodedPayload unpacked;
  unpacked.law = tx.law;
  unpacked.bytes = depacketize(sequence_ordered(channel.delivered));
  AudioSignal unpacked_audio;
  unpacked_audio.sample_rate_hz = tx.frame.sample_rate_hz;
  unpacked_audio.samples = decode_frame(unpacked);

  write_spectrum_csv(spectrum(unpacked_audio, a.n_fft),
                     join_path(analysis_dir, "rx_unpacked_spectrum.csv"));
  write_spectrum_csv(spectrum(rx.audio, a.n_fft),
                     join_path(analysis_dir, "rx_spectrum.csv"));
  write_spectrum_csv(periodogram(rx.audio, a.window, a.n_fft),
                     join_path(analysis_dir, "rx_periodogram.csv"));
  write_spectrogram_csv(spectrogram(rx.audio, a.window_len, a.hop, a.window),
                        join_path(analysis_dir, "rx_spectrogram.csv"));

  write_text_file(join_path(analysis_dir, "qos_report.json"),
                  report.to_json());
  return report;
}

uint64_t run_send(const std::string& input_wav, const TransmitConfig& cfg,
                  const std::string& host, uint16_t port, double pacing_ms,
                  const std::string& report_path) {
  const AudioSignal input = read_wav(input_wav);
  const TransmitResult tx = run_transmit(input, cfg);
  const double pacing =
      pacing_ms < 0.0 ? static_cast<double>(tx.frame.frame_ms) : pacing_ms;
  const SendReport sent = send_udp(tx.packets, host, port, pacing);

  if (!report_path.empty()) {
    nlohmann::ordered_json j;
    j["destination"] = host;
    j["port"] = port;
    j["law"] = law_name(tx.law);
    j["frame_ms"] = tx.frame.frame_ms;
    j["pacing_ms"] = pacing;
    j["sent_count"] = sent.sent_count;
    j["wire_bytes"] = sent.wire_bytes;
    j["duration_ms"] = sent.send_times_ms.empty()
                           ? 0.0
                           : sent.send_times_ms.back();
    write_text_file(report_path, j.dump(2) + "\n");
  }
  return sent.sent_count;
}

RecvOutcome run_recv(uint16_t port, const PlayoutConfig& playout,
                     double idle_timeout_ms, const std::string& out_wav,
                     const std::string& report_path) {
  const RecvResult received = recv_udp(port, idle_timeout_ms);
  const std::vector<DeliveredPacket>& delivered = received.delivered;

  // Payload types 0 and 8 both run an 8 kHz codec clock; frame size follows
  // from the first payload.
  const int sample_rate_hz = 8000;
  const VoipPacket& first = delivered.front().packet;
  const CompandingLaw law =
      first.header.payload_type == 0 ? CompandingLaw::MuLaw
                                     : CompandingLaw::ALaw;
  const int frame_samples = static_cast<int>(first.payload.size());

  const uint16_t first_seq = first_sequence_of(delivered);
  const uint64_t span = estimate_frame_span(delivered);
  const PlayoutResult rx = play_delivered(delivered, law, frame_samples,
                                          sample_rate_hz, playout, first_seq,
                                          span);

  RecvOutcome outcome;
  outcome.malformed_count = received.malformed_count;
  QosReport& report = outcome.report;
  report.sent_count = span;  // tail losses are invisible to a receiver
  report.received_count = delivered.size();
  report.late_count = rx.stats.late;
  report.concealed_count = rx.stats.concealed;
  {
    // Duplicates would overcount plain delivered.size() against the span.
    std::set<uint16_t> distinct;
    for (const auto& dp : delivered) distinct.insert(dp.packet.header.sequence);
    report.loss_rate = static_cast<double>(span - distinct.size()) /
                       static_cast<double>(span);
  }
  report.delay_ms = delay_stats(delivered);
  if (delivered.size() >= 2) {
    report.interarrival_jitter_ms = interarrival_jitter(
        delivered, sample_rate_hz, &report.jitter_raw_ms);
  }

  write_wav(rx.audio, out_wav);
  if (!report_path.empty()) {
    write_text_file(report_path, report.to_json());
  }
  return outcome;
}

}  // namespace voippipe
