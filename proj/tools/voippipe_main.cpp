// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Everything goes through the public C API; this
// file deliberately includes no core headers.

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "voippipe.h"

namespace {

// Exit codes: 0 success, 1 usage, then one per failure class.
int exit_code(vp_status status) {
  switch (status) {
    case VP_OK:
      return 0;
    case VP_ERR_INVALID_ARGUMENT:
      return 2;
    case VP_ERR_IO:
      return 3;
    case VP_ERR_FORMAT:
      return 4;
    case VP_ERR_SOCKET:
      return 5;
    case VP_ERR_NO_TRAFFIC:
      return 6;
  }
  return 2;
}

int report_failure(vp_status status) {
  std::fprintf(stderr, "voippipe: %s (%s)\n", vp_last_error(),
               vp_status_name(status));
  return exit_code(status);
}

// host[:port] or [v6addr]:port; a missing port keeps the default.
void split_dest(const std::string& dest, std::string* host, uint16_t* port) {
  if (!dest.empty() && dest.front() == '[') {
    const size_t close = dest.find(']');
    if (close != std::string::npos) {
      *host = dest.substr(1, close - 1);
      if (close + 1 < dest.size() && dest[close + 1] == ':') {
        *port = static_cast<uint16_t>(std::stoul(dest.substr(close + 2)));
      }
      return;
    }
  }
  const size_t colon = dest.rfind(':');
  if (colon == std::string::npos || dest.find(':') != colon) {
    *host = dest;  // no port, or a bare IPv6 address
    return;
  }
  *host = dest.substr(0, colon);
  *port = static_cast<uint16_t>(std::stoul(dest.substr(colon + 1)));
}

const std::map<std::string, int> kLawNames = {{"mulaw", VP_LAW_MULAW},
                                              {"alaw", VP_LAW_ALAW}};
const std::map<std::string, int> kConcealmentNames = {
    {"silence", VP_CONCEAL_SILENCE}, {"repeat", VP_CONCEAL_REPEAT_LAST}};
const std::map<std::string, int> kWindowNames = {
    {"rectangular", VP_WINDOW_RECTANGULAR}, {"hann", VP_WINDOW_HANN}};

void add_analysis_flags(CLI::App* cmd, vp_analysis_options* opts) {
  cmd->add_option("--n-fft", opts->n_fft, "FFT size (power of two >= 16)")
      ->capture_default_str();
  cmd->add_option("--window", opts->window, "Analysis window")
      ->transform(CLI::CheckedTransformer(kWindowNames, CLI::ignore_case))
      ->default_str("hann");
  cmd->add_option("--window-len", opts->window_len,
                  "Spectrogram/Welch segment length")
      ->capture_default_str();
  cmd->add_option("--hop", opts->hop, "Spectrogram hop (samples)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VoIP transmit/receive/analysis pipeline (G.711 over UDP)"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read defaults from a key=value config file; command-line "
                 "flags win");
  app.set_version_flag("--version", [] { return std::string(vp_version()); });

  vp_send_options send_opts;
  vp_send_options_init(&send_opts);
  vp_recv_options recv_opts;
  vp_recv_options_init(&recv_opts);
  vp_channel_options channel_opts;
  vp_channel_options_init(&channel_opts);
  vp_analysis_options analysis_opts;
  vp_analysis_options_init(&analysis_opts);

  // send
  auto* send = app.add_subcommand("send", "Transmit a WAV over UDP");
  std::string send_input;
  std::string send_dest = "127.0.0.1";
  uint16_t send_port = 9714;
  std::string send_report = "send_report.json";
  send->add_option("input", send_input, "Input WAV (16-bit mono PCM)")
      ->required();
  send->add_option("--dest", send_dest,
                   "Destination host[:port] ([addr]:port for IPv6)")
      ->capture_default_str();
  send->add_option("--port", send_port,
                   "Destination port (overridden by --dest's port)")
      ->capture_default_str();
  send->add_option("--law", send_opts.law, "Companding law")
      ->transform(CLI::CheckedTransformer(kLawNames, CLI::ignore_case))
      ->default_str("mulaw");
  send->add_option("--frame-ms", send_opts.frame_ms,
                   "Packet frame length (ms)")
      ->capture_default_str();
  send->add_option("--gain", send_opts.gain, "Linear gain before encoding")
      ->capture_default_str();
  send->add_option("--pacing-ms", send_opts.pacing_ms,
                   "Datagram spacing in ms (negative = one frame duration)")
      ->capture_default_str();
  send->add_option("--report", send_report, "Send report JSON path")
      ->capture_default_str();

  // recv
  auto* recv = app.add_subcommand("recv", "Receive a UDP stream into a WAV");
  uint16_t recv_port = 9714;
  std::string recv_output = "received.wav";
  std::string recv_report = "qos_report.json";
  recv->add_option("--port", recv_port, "Listen port")->capture_default_str();
  recv->add_option("--playout-ms", recv_opts.playout_delay_ms,
                   "Jitter buffer playout delay (ms)")
      ->capture_default_str();
  recv->add_option("--concealment", recv_opts.concealment,
                   "Missing-frame concealment")
      ->transform(
          CLI::CheckedTransformer(kConcealmentNames, CLI::ignore_case))
      ->default_str("repeat");
  recv->add_option("--idle-timeout-ms", recv_opts.idle_timeout_ms,
                   "Stop after this long with no traffic (ms)")
      ->capture_default_str();
  recv->add_option("--output", recv_output, "Decoded output WAV path")
      ->capture_default_str();
  recv->add_option("--report", recv_report, "QoS report JSON path")
      ->capture_default_str();

  // loopback
  auto* loopback = app.add_subcommand(
      "loopback", "Offline transmit -> impaired channel -> receive + analysis");
  std::string loop_input;
  std::string loop_output = "loopback_out.wav";
  std::string loop_dir = "analysis_out";
  loopback->add_option("input", loop_input, "Input WAV (16-bit mono PCM)")
      ->required();
  loopback->add_option("--law", send_opts.law, "Companding law")
      ->transform(CLI::CheckedTransformer(kLawNames, CLI::ignore_case))
      ->default_str("mulaw");
  loopback->add_option("--frame-ms", send_opts.frame_ms,
                       "Packet frame length (ms)")
      ->capture_default_str();
  loopback->add_option("--gain", send_opts.gain, "Linear gain before encoding")
      ->capture_default_str();
  loopback->add_option("--loss", channel_opts.loss_probability,
                       "Packet loss probability in [0, 1]")
      ->capture_default_str();
  loopback->add_option("--delay-ms", channel_opts.base_delay_ms,
                       "Fixed channel delay (ms)")
      ->capture_default_str();
  loopback->add_option("--jitter-ms", channel_opts.jitter_ms,
                       "Extra Uniform(0, jitter) delay (ms)")
      ->capture_default_str();
  loopback->add_option("--seed", channel_opts.seed, "Channel RNG seed")
      ->capture_default_str();
  loopback->add_option("--playout-ms", recv_opts.playout_delay_ms,
                       "Jitter buffer playout delay (ms)")
      ->capture_default_str();
  loopback->add_option("--concealment", recv_opts.concealment,
                       "Missing-frame concealment")
      ->transform(
          CLI::CheckedTransformer(kConcealmentNames, CLI::ignore_case))
      ->default_str("repeat");
  loopback->add_option("--output", loop_output, "Played output WAV path")
      ->capture_default_str();
  loopback->add_option("--analysis-dir", loop_dir,
                       "Directory for analysis CSVs and the QoS report")
      ->capture_default_str();
  add_analysis_flags(loopback, &analysis_opts);

  // analyze
  auto* analyze =
      app.add_subcommand("analyze", "Spectral analysis of a standalone WAV");
  std::string analyze_input;
  std::string analyze_dir = "analysis_out";
  analyze->add_option("input", analyze_input, "Input WAV (16-bit mono PCM)")
      ->required();
  analyze->add_option("--out-dir", analyze_dir, "Output directory for CSVs")
      ->capture_default_str();
  add_analysis_flags(analyze, &analysis_opts);

  // tone
  auto* tone = app.add_subcommand("tone", "Generate a sine test WAV");
  double tone_freq = 1000.0;
  double tone_dur = 2.0;
  double tone_amp = 0.5;
  int tone_fs = 8000;
  std::string tone_out;
  tone->add_option("output", tone_out, "Output WAV path")->required();
  tone->add_option("--freq", tone_freq, "Frequency (Hz)")
      ->capture_default_str();
  tone->add_option("--dur", tone_dur, "Duration (s)")->capture_default_str();
  tone->add_option("--amp", tone_amp, "Amplitude as a fraction of full scale")
      ->capture_default_str();
  tone->add_option("--fs", tone_fs, "Sample rate (Hz)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (send->parsed()) {
    std::string host;
    uint16_t port = send_port;
    try {
      split_dest(send_dest, &host, &port);
    } catch (const std::exception&) {
      std::fprintf(stderr, "voippipe: bad --dest '%s'\n", send_dest.c_str());
      return 2;
    }
    uint64_t sent = 0;
    const vp_status status = vp_run_send(send_input.c_str(), host.c_str(),
                                         port, &send_opts,
                                         send_report.c_str(), &sent);
    if (status != VP_OK) return report_failure(status);
    std::printf("sent %llu packets to %s:%u, report: %s\n",
                static_cast<unsigned long long>(sent), host.c_str(),
                static_cast<unsigned>(port), send_report.c_str());
    return 0;
  }

  if (recv->parsed()) {
    const vp_status status = vp_run_recv(recv_port, &recv_opts,
                                         recv_output.c_str(),
                                         recv_report.c_str());
    if (status != VP_OK) return report_failure(status);
    std::printf("wrote %s, report: %s\n", recv_output.c_str(),
                recv_report.c_str());
    return 0;
  }

  if (loopback->parsed()) {
    const vp_status status = vp_run_loopback(
        loop_input.c_str(), &send_opts, &channel_opts, &recv_opts,
        &analysis_opts, loop_output.c_str(), loop_dir.c_str());
    if (status != VP_OK) return report_failure(status);
    std::printf("wrote %s, analysis in %s/\n", loop_output.c_str(),
                loop_dir.c_str());
    return 0;
  }

  if (analyze->parsed()) {
    const vp_status status = vp_run_analyze(analyze_input.c_str(),
                                            &analysis_opts,
                                            analyze_dir.c_str());
    if (status != VP_OK) return report_failure(status);
    std::printf("analysis in %s/\n", analyze_dir.c_str());
    return 0;
  }

  if (tone->parsed()) {
    vp_audio* audio = nullptr;
    vp_status status =
        vp_audio_generate_tone(tone_freq, tone_dur, tone_amp, tone_fs, &audio);
    if (status != VP_OK) return report_failure(status);
    status = vp_audio_write_wav(audio, tone_out.c_str());
    vp_audio_free(audio);
    if (status != VP_OK) return report_failure(status);
    std::printf("wrote %s\n", tone_out.c_str());
    return 0;
  }

  return 1;  // unreachable: require_subcommand(1)
}
