// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "voippipe.h"

#include <memory>
#include <new>
#include <string>

#include "audio.hpp"
#include "errors.hpp"
#include "pipeline.hpp"

using voippipe::AudioSignal;
using voippipe::Error;
using voippipe::ErrorKind;

struct vp_audio {
  AudioSignal signal;
};

namespace {

thread_local std::string g_last_error;

vp_status set_error(vp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

vp_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
      return VP_ERR_INVALID_ARGUMENT;
    case ErrorKind::Io:
      return VP_ERR_IO;
    case ErrorKind::Format:
      return VP_ERR_FORMAT;
    case ErrorKind::Socket:
      return VP_ERR_SOCKET;
    case ErrorKind::NoTraffic:
      return VP_ERR_NO_TRAFFIC;
  }
  return VP_ERR_INVALID_ARGUMENT;
}

// Runs fn, translating exceptions into status codes + last-error text.
template <typename Fn>
vp_status guarded(Fn&& fn) {
  try {
    fn();
    return VP_OK;
  } catch (const Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(VP_ERR_IO, "out of memory");
  } catch (const std::exception& e) {
    return set_error(VP_ERR_INVALID_ARGUMENT, e.what());
  }
}

vp_status require(bool ok, const char* what) {
  if (ok) return VP_OK;
  return set_error(VP_ERR_INVALID_ARGUMENT,
                   std::string("null argument: ") + what);
}

voippipe::CompandingLaw to_law(int law) {
  if (law != VP_LAW_MULAW && law != VP_LAW_ALAW) {
    throw Error(ErrorKind::InvalidArgument,
                "capi: law must be VP_LAW_MULAW or VP_LAW_ALAW");
  }
  return law == VP_LAW_MULAW ? voippipe::CompandingLaw::MuLaw
                             : voippipe::CompandingLaw::ALaw;
}

voippipe::Concealment to_concealment(int concealment) {
  if (concealment != VP_CONCEAL_SILENCE &&
      concealment != VP_CONCEAL_REPEAT_LAST) {
    throw Error(ErrorKind::InvalidArgument,
                "capi: unknown concealment mode");
  }
  return concealment == VP_CONCEAL_SILENCE
             ? voippipe::Concealment::SilenceFill
             : voippipe::Concealment::RepeatLast;
}

voippipe::Window to_window(int window) {
  if (window != VP_WINDOW_RECTANGULAR && window != VP_WINDOW_HANN) {
    throw Error(ErrorKind::InvalidArgument, "capi: unknown window");
  }
  return window == VP_WINDOW_RECTANGULAR ? voippipe::Window::Rectangular
                                         : voippipe::Window::Hann;
}

voippipe::TransmitConfig to_transmit_config(const vp_send_options& opts) {
  voippipe::TransmitConfig cfg;
  cfg.law = to_law(opts.law);
  cfg.frame_ms = opts.frame_ms;
  cfg.gain = opts.gain;
  cfg.initial_sequence = opts.initial_sequence;
  cfg.initial_timestamp = opts.initial_timestamp;
  cfg.stream_id = opts.stream_id;
  return cfg;
}

voippipe::PlayoutConfig to_playout_config(const vp_recv_options& opts) {
  voippipe::PlayoutConfig cfg;
  cfg.playout_delay_ms = opts.playout_delay_ms;
  cfg.concealment = to_concealment(opts.concealment);
  return cfg;
}

voippipe::ChannelConfig to_channel_config(const vp_channel_options& opts) {
  voippipe::ChannelConfig cfg;
  cfg.loss_prob = opts.loss_probability;
  cfg.base_delay_ms = opts.base_delay_ms;
  cfg.jitter_ms = opts.jitter_ms;
  cfg.seed = opts.seed;
  return cfg;
}

voippipe::AnalysisConfig to_analysis_config(const vp_analysis_options& opts) {
  voippipe::AnalysisConfig cfg;
  cfg.n_fft = opts.n_fft;
  cfg.window = to_window(opts.window);
  cfg.window_len = opts.window_len;
  cfg.hop = opts.hop;
  return cfg;
}

}  // namespace

extern "C" {

const char* vp_status_name(vp_status status) {
  switch (status) {
    case VP_OK:
      return "VP_OK";
    case VP_ERR_INVALID_ARGUMENT:
      return "VP_ERR_INVALID_ARGUMENT";
    case VP_ERR_IO:
      return "VP_ERR_IO";
    case VP_ERR_FORMAT:
      return "VP_ERR_FORMAT";
    case VP_ERR_SOCKET:
      return "VP_ERR_SOCKET";
    case VP_ERR_NO_TRAFFIC:
      return "VP_ERR_NO_TRAFFIC";
  }
  return "VP_UNKNOWN";
}

const char* vp_last_error(void) { return g_last_error.c_str(); }

const char* vp_version(void) { return VP_VERSION_STRING; }

vp_status vp_audio_read_wav(const char* path, vp_audio** out) {
  if (vp_status s = require(path && out, "path/out")) return s;
  return guarded([&] {
    auto handle = std::make_unique<vp_audio>();
    handle->signal = voippipe::read_wav(path);
    *out = handle.release();
  });
}

vp_status vp_audio_write_wav(const vp_audio* audio, const char* path) {
  if (vp_status s = require(audio && path, "audio/path")) return s;
  return guarded([&] { voippipe::write_wav(audio->signal, path); });
}

vp_status vp_audio_generate_tone(double freq_hz, double duration_s,
                                 double amplitude, int sample_rate_hz,
                                 vp_audio** out) {
  if (vp_status s = require(out != nullptr, "out")) return s;
  return guarded([&] {
    auto handle = std::make_unique<vp_audio>();
    handle->signal = voippipe::generate_tone(freq_hz, duration_s, amplitude,
                                             sample_rate_hz);
    *out = handle.release();
  });
}

vp_status vp_audio_apply_gain(const vp_audio* audio, double gain,
                              vp_audio** out) {
  if (vp_status s = require(audio && out, "audio/out")) return s;
  return guarded([&] {
    auto handle = std::make_unique<vp_audio>();
    handle->signal = voippipe::apply_gain(audio->signal, gain);
    *out = handle.release();
  });
}

int vp_audio_sample_rate(const vp_audio* audio) {
  return audio ? audio->signal.sample_rate_hz : 0;
}

size_t vp_audio_sample_count(const vp_audio* audio) {
  return audio ? audio->signal.samples.size() : 0;
}

const int16_t* vp_audio_samples(const vp_audio* audio) {
  return audio ? audio->signal.samples.data() : nullptr;
}

void vp_audio_free(vp_audio* audio) { delete audio; }

void vp_send_options_init(vp_send_options* opts) {
  if (!opts) return;
  opts->law = VP_LAW_MULAW;
  opts->frame_ms = 20;
  opts->gain = 1.0;
  opts->pacing_ms = -1.0;
  opts->initial_sequence = 0;
  opts->initial_timestamp = 0;
  opts->stream_id = 0x564F4950u;
}

void vp_recv_options_init(vp_recv_options* opts) {
  if (!opts) return;
  opts->playout_delay_ms = 60.0;
  opts->concealment = VP_CONCEAL_REPEAT_LAST;
  opts->idle_timeout_ms = 2000.0;
}

void vp_channel_options_init(vp_channel_options* opts) {
  if (!opts) return;
  opts->loss_probability = 0.0;
  opts->base_delay_ms = 0.0;
  opts->jitter_ms = 0.0;
  opts->seed = 0;
}

void vp_analysis_options_init(vp_analysis_options* opts) {
  if (!opts) return;
  opts->n_fft = 1024;
  opts->window = VP_WINDOW_HANN;
  opts->window_len = 256;
  opts->hop = 128;
}

vp_status vp_run_send(const char* input_wav, const char* host, uint16_t port,
                      const vp_send_options* opts, const char* report_path,
                      uint64_t* sent_count_out) {
  if (vp_status s = require(input_wav && host && opts, "input/host/opts")) {
    return s;
  }
  return guarded([&] {
    const uint64_t sent = voippipe::run_send(
        input_wav, to_transmit_config(*opts), host, port, opts->pacing_ms,
        report_path ? report_path : "");
    if (sent_count_out) *sent_count_out = sent;
  });
}

vp_status vp_run_recv(uint16_t port, const vp_recv_options* opts,
                      const char* out_wav, const char* report_path) {
  if (vp_status s = require(opts && out_wav, "opts/out_wav")) return s;
  return guarded([&] {
    voippipe::run_recv(port, to_playout_config(*opts), opts->idle_timeout_ms,
                       out_wav, report_path ? report_path : "");
  });
}

vp_status vp_run_loopback(const char* input_wav,
                          const vp_send_options* send_opts,
                          const vp_channel_options* channel_opts,
                          const vp_recv_options* recv_opts,
                          const vp_analysis_options* analysis_opts,
                          const char* out_wav, const char* analysis_dir) {
  if (vp_status s =
          require(input_wav && send_opts && channel_opts && recv_opts &&
                      analysis_opts && out_wav && analysis_dir,
                  "loopback arguments")) {
    return s;
  }
  return guarded([&] {
    voippipe::LoopbackConfig cfg;
    cfg.tx = to_transmit_config(*send_opts);
    cfg.channel = to_channel_config(*channel_opts);
    cfg.playout = to_playout_config(*recv_opts);
    cfg.analysis = to_analysis_config(*analysis_opts);
    voippipe::run_loopback(input_wav, cfg, out_wav, analysis_dir);
  });
}

vp_status vp_run_analyze(const char* input_wav,
                         const vp_analysis_options* opts,
                         const char* out_dir) {
  if (vp_status s = require(input_wav && opts && out_dir,
                            "input/opts/out_dir")) {
    return s;
  }
  return guarded([&] {
    voippipe::run_analyze(input_wav, to_analysis_config(*opts), out_dir);
  });
}

}  // extern "C"
