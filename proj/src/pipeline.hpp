// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "audio.hpp"
#include "channel.hpp"
#include "dsp.hpp"
#include "g711.hpp"
#include "jitter_buffer.hpp"
#include "packet.hpp"
#include "qos.hpp"

namespace voippipe {

inline constexpr uint32_t kDefaultStreamId = 0x564F4950;  // "VOIP"

inline const char* law_name(CompandingLaw law) {
  return law == CompandingLaw::MuLaw ? "mulaw" : "alaw";
}

struct TransmitConfig {
  CompandingLaw law = CompandingLaw::MuLaw;
  int frame_ms = 20;
  double gain = 1.0;
  uint16_t initial_sequence = 0;
  uint32_t initial_timestamp = 0;
  uint32_t stream_id = kDefaultStreamId;
};

struct TransmitResult {
  std::vector<VoipPacket> packets;
  // Decode of the padded codeword stream: the signal a lossless receiver
  // reproduces bit for bit, and the reference for SNR and the tx spectra.
  AudioSignal decoded;
  FrameConfig frame;
  CompandingLaw law = CompandingLaw::MuLaw;
};

/// gain -> encode -> packetize. The frame clock uses the input's sample
/// rate, which must give whole frames (validate_frame_config).
TransmitResult run_transmit(const AudioSignal& input,
                            const TransmitConfig& cfg);

struct PlayoutResult {
  AudioSignal audio;
  JitterBuffer::Stats stats;
};

/// Offline playout driver. All packets are pushed up front; pop k happens at
/// first_arrival + playout_delay + k * frame_duration, and the buffer's own
/// arrival gating decides between playing and concealing. Pops exactly
/// total_frames frames starting at first_sequence.
PlayoutResult play_delivered(const std::vector<DeliveredPacket>& delivered,
                             CompandingLaw law, int frame_samples,
                             int sample_rate_hz, const PlayoutConfig& playout,
                             uint16_t first_sequence, uint64_t total_frames);

/// Wrap-aware smallest sequence among the delivered packets.
uint16_t first_sequence_of(const std::vector<DeliveredPacket>& delivered);

/// Wrap-aware sequence span (max - min + 1): the receiver's best estimate of
/// how many frames the sender emitted. Tail losses are invisible to it.
uint64_t estimate_frame_span(const std::vector<DeliveredPacket>& delivered);

struct AnalysisConfig {
  int n_fft = 1024;
  Window window = Window::Hann;
  int window_len = 256;
  int hop = 128;
};

void write_spectrum_csv(const SpectralResult& result, const std::string& path);
void write_spectrogram_csv(const SpectrogramResult& result,
                           const std::string& path);

/// Standalone analysis: spectrum, periodogram, Welch PSD, and spectrogram of
/// one WAV, written as CSV into out_dir (created if missing).
void run_analyze(const std::string& input_wav, const AnalysisConfig& cfg,
                 const std::string& out_dir);

struct LoopbackConfig {
  TransmitConfig tx;
  ChannelConfig channel;
  PlayoutConfig playout;
  AnalysisConfig analysis;
};

/// Full offline pipeline: transmit -> simulated channel -> playout, then the
/// analysis suite (five tx products, four rx products, and the QoS report)
/// into analysis_dir, plus the played audio as out_wav.
QosReport run_loopback(const std::string& input_wav, const LoopbackConfig& cfg,
                       const std::string& out_wav,
                       const std::string& analysis_dir);

/// Transmit pipeline onto a real socket. pacing_ms < 0 selects real-time
/// pacing (one frame duration per packet). Writes a small JSON send report
/// when report_path is non-empty.
uint64_t run_send(const std::string& input_wav, const TransmitConfig& cfg,
                  const std::string& host, uint16_t port, double pacing_ms,
                  const std::string& report_path);

struct RecvOutcome {
  QosReport report;
  uint64_t malformed_count = 0;
};

/// Receive pipeline on a real socket: collect until idle, play out, decode,
/// write the WAV and the QoS report. Frame size and law come from the first
/// packet; payload types 0/8 pin the codec clock to 8 kHz.
RecvOutcome run_recv(uint16_t port, const PlayoutConfig& playout,
                     double idle_timeout_ms, const std::string& out_wav,
                     const std::string& report_path);

}  // namespace voippipe
