/* Copyright 2026 the voippipe authors */
/* SPDX-License-Identifier: Apache-2.0 */

/*
 * C interface to the voippipe toolkit: WAV in, G.711 over UDP (real or
 * simulated) out, spectral analysis and QoS reporting on both ends.
 *
 * Conventions:
 *   - Every fallible call returns vp_status; VP_OK is 0.
 *   - On failure, vp_last_error() returns a message for the calling
 *     thread, valid until that thread's next failing call.
 *   - Out-parameters are written only on VP_OK.
 *   - Option structs must be initialized with their _init function before
 *     use so future fields pick up sane defaults.
 */

#ifndef VOIPPIPE_H
#define VOIPPIPE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VP_API __declspec(dllexport)
#else
#define VP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vp_status {
  VP_OK = 0,
  VP_ERR_INVALID_ARGUMENT = 1,
  VP_ERR_IO = 2,
  VP_ERR_FORMAT = 3,
  VP_ERR_SOCKET = 4,
  VP_ERR_NO_TRAFFIC = 5
} vp_status;

/* Stable name for a status code, e.g. "VP_ERR_IO". */
VP_API const char* vp_status_name(vp_status status);

/* Message from the calling thread's most recent failure; never NULL. */
VP_API const char* vp_last_error(void);

/* Library version, "major.minor.patch". */
VP_API const char* vp_version(void);

typedef enum vp_law { VP_LAW_MULAW = 0, VP_LAW_ALAW = 1 } vp_law;

typedef enum vp_concealment {
  VP_CONCEAL_SILENCE = 0,
  VP_CONCEAL_REPEAT_LAST = 1
} vp_concealment;

typedef enum vp_window {
  VP_WINDOW_RECTANGULAR = 0,
  VP_WINDOW_HANN = 1
} vp_window;

/* ---- audio handles ---------------------------------------------------- */

/* Opaque mono 16-bit PCM buffer. */
typedef struct vp_audio vp_audio;

VP_API vp_status vp_audio_read_wav(const char* path, vp_audio** out);
VP_API vp_status vp_audio_write_wav(const vp_audio* audio, const char* path);
VP_API vp_status vp_audio_generate_tone(double freq_hz, double duration_s,
                                        double amplitude, int sample_rate_hz,
                                        vp_audio** out);
VP_API vp_status vp_audio_apply_gain(const vp_audio* audio, double gain,
                                     vp_audio** out);
VP_API int vp_audio_sample_rate(const vp_audio* audio);
VP_API size_t vp_audio_sample_count(const vp_audio* audio);
/* Borrowed pointer, valid for the life of the handle. */
VP_API const int16_t* vp_audio_samples(const vp_audio* audio);
VP_API void vp_audio_free(vp_audio* audio);

/* ---- pipeline options ------------------------------------------------- */

typedef struct vp_send_options {
  int law;                    /* vp_law, default VP_LAW_MULAW */
  int frame_ms;               /* default 20 */
  double gain;                /* default 1.0 */
  double pacing_ms;           /* <0 = one frame duration per packet */
  uint16_t initial_sequence;  /* default 0 */
  uint32_t initial_timestamp; /* default 0 */
  uint32_t stream_id;         /* default 0x564F4950 */
} vp_send_options;

VP_API void vp_send_options_init(vp_send_options* opts);

typedef struct vp_recv_options {
  double playout_delay_ms; /* default 60 */
  int concealment;         /* vp_concealment, default VP_CONCEAL_REPEAT_LAST */
  double idle_timeout_ms;  /* stop after this long with no traffic; 2000 */
} vp_recv_options;

VP_API void vp_recv_options_init(vp_recv_options* opts);

typedef struct vp_channel_options {
  double loss_probability; /* in [0, 1], default 0 */
  double base_delay_ms;    /* default 0 */
  double jitter_ms;        /* extra Uniform(0, jitter_ms) delay, default 0 */
  uint64_t seed;           /* default 0; same seed = same impairments */
} vp_channel_options;

VP_API void vp_channel_options_init(vp_channel_options* opts);

typedef struct vp_analysis_options {
  int n_fft;      /* power of two >= 16, default 1024 */
  int window;     /* vp_window, default VP_WINDOW_HANN */
  int window_len; /* default 256 */
  int hop;        /* default 128 */
} vp_analysis_options;

VP_API void vp_analysis_options_init(vp_analysis_options* opts);

/* ---- pipeline runners -------------------------------------------------- */

/*
 * Transmit input_wav to host:port over UDP: gain, G.711 encode, packetize,
 * paced datagrams. Writes a JSON send report to report_path unless it is
 * NULL. sent_count_out (optional) receives the number of packets sent.
 */
VP_API vp_status vp_run_send(const char* input_wav, const char* host,
                             uint16_t port, const vp_send_options* opts,
                             const char* report_path,
                             uint64_t* sent_count_out);

/*
 * Listen on port until idle_timeout_ms passes with no traffic, play the
 * stream through the jitter buffer, decode, and write out_wav plus a
 * QoS report JSON (unless report_path is NULL). Returns
 * VP_ERR_NO_TRAFFIC if nothing arrived.
 */
VP_API vp_status vp_run_recv(uint16_t port, const vp_recv_options* opts,
                             const char* out_wav, const char* report_path);

/*
 * Offline end-to-end run: transmit pipeline, simulated impaired channel,
 * receive pipeline, then the analysis suite (nine CSV files and
 * qos_report.json) into analysis_dir and the played audio into out_wav.
 * recv_opts->idle_timeout_ms is ignored (no socket is involved).
 */
VP_API vp_status vp_run_loopback(const char* input_wav,
                                 const vp_send_options* send_opts,
                                 const vp_channel_options* channel_opts,
                                 const vp_recv_options* recv_opts,
                                 const vp_analysis_options* analysis_opts,
                                 const char* out_wav,
                                 const char* analysis_dir);

/*
 * Standalone spectral analysis of one WAV: spectrum, periodogram, Welch
 * PSD, and spectrogram CSVs written into out_dir.
 */
VP_API vp_status vp_run_analyze(const char* input_wav,
                                const vp_analysis_options* opts,
                                const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VOIPPIPE_H */
