// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "audio.hpp"
#include "packet.hpp"

namespace voippipe {

enum class Window : uint8_t { Rectangular, Hann };

enum class SpectralNormalization : uint8_t { PerBinPower, Density };

/// One-sided spectral product: n_fft/2 + 1 bins, freqs_hz[k] = k*fs/n_fft.
struct SpectralResult {
  std::vector<double> freqs_hz;
  std::vector<double> power;  // per-bin power, or units^2/Hz for Density
  int n_fft = 0;
  SpectralNormalization normalization = SpectralNormalization::PerBinPower;
};

struct SpectrogramResult {
  std::vector<double> times_s;   // frame centers
  std::vector<double> freqs_hz;
  std::vector<std::vector<double>> power;  // [time][freq]
  int window_len = 0;
  int hop = 0;
};

/// In-place iterative radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& data);

/// One-sided magnitude-squared DFT of the first n_fft samples (zero-padded
/// if shorter), on samples normalized by 1/32768, scaled 1/n_fft^2 with
/// interior bins doubled.
SpectralResult spectrum(const AudioSignal& signal, int n_fft);

/// Windowed one-sided PSD estimate of the first n_fft samples with density
/// normalization 1/(fs * sum(w^2)).
SpectralResult periodogram(const AudioSignal& signal, Window window, int n_fft);

/// Welch's method: the average of per-segment periodograms over segments of
/// window_len samples advanced by window_len*(1 - overlap_fraction).
SpectralResult welch_psd(const AudioSignal& signal, int window_len,
                         double overlap_fraction, Window window);

/// Short-time analysis; row r is exactly the periodogram of the window_len
/// samples starting at r*hop, centered at (r*hop + window_len/2)/fs.
SpectrogramResult spectrogram(const AudioSignal& signal, int window_len,
                              int hop, Window window);

/// Spectrum of the serialized wire byte stream: each byte b maps to
/// (b - 127.5)/127.5 and the result is analyzed at byte_rate_hz.
SpectralResult packed_spectrum(const std::vector<VoipPacket>& packets,
                               int n_fft, double byte_rate_hz);

}  // namespace voippipe
