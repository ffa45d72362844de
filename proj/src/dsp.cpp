// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "dsp.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace voippipe {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, "dsp_analysis: " + msg);
}

bool is_pow2(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

std::vector<double> make_window(Window window, int len) {
  std::vector<double> w(static_cast<size_t>(len), 1.0);
  if (window == Window::Hann) {
    // periodic Hann, the spectral-analysis convention
    for (int n = 0; n < len; ++n) {
      w[static_cast<size_t>(n)] =
          0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / len));
    }
  }
  return w;
}

// One-sided power of one windowed segment, scale applied to |X[k]|^2 and
// interior bins doubled.
std::vector<double> one_sided_power(const std::vector<double>& segment,
                                    double scale) {
  const size_t n = segment.size();
  std::vector<std::complex<double>> buf(n);
  for (size_t i = 0; i < n; ++i) buf[i] = segment[i];
  fft_radix2(buf);

  std::vector<double> power(n / 2 + 1);
  for (size_t k = 0; k <= n / 2; ++k) {
    double p = std::norm(buf[k]) * scale;
    if (k != 0 && k != n / 2) p *= 2.0;
    power[k] = p;
  }
  return power;
}

std::vector<double> bin_freqs(int n_fft, double fs) {
  std::vector<double> freqs(static_cast<size_t>(n_fft / 2 + 1));
  for (int k = 0; k <= n_fft / 2; ++k) {
    freqs[static_cast<size_t>(k)] = static_cast<double>(k) * fs / n_fft;
  }
  return freqs;
}

// First `len` normalized samples, zero-padded.
std::vector<double> normalized_head(const AudioSignal& signal, int len) {
  std::vector<double> x(static_cast<size_t>(len), 0.0);
  const size_t n = std::min(static_cast<size_t>(len), signal.samples.size());
  for (size_t i = 0; i < n; ++i) x[i] = signal.samples[i] / 32768.0;
  return x;
}

std::vector<double> periodogram_of_segment(const std::vector<double>& segment,
                                           const std::vector<double>& window,
                                           double fs) {
  double wsq = 0.0;
  for (double w : window) wsq += w * w;
  std::vector<double> windowed(segment.size());
  for (size_t i = 0; i < segment.size(); ++i) windowed[i] = segment[i] * window[i];
  return one_sided_power(windowed, 1.0 / (fs * wsq));
}

void check_signal_and_nfft(const AudioSignal& signal, int n_fft) {
  if (signal.samples.empty()) fail("empty signal");
  if (signal.sample_rate_hz <= 0) fail("invalid sample rate");
  if (!is_pow2(n_fft) || n_fft < 16) {
    fail("n_fft must be a power of two >= 16, got " + std::to_string(n_fft));
  }
}

}  // namespace

void fft_radix2(std::vector<std::complex<double>>& data) {
  const size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) fail("fft size must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

SpectralResult spectrum(const AudioSignal& signal, int n_fft) {
  check_signal_and_nfft(signal, n_fft);

  SpectralResult result;
  result.n_fft = n_fft;
  result.normalization = SpectralNormalization::PerBinPower;
  result.freqs_hz = bin_freqs(n_fft, signal.sample_rate_hz);
  result.power = one_sided_power(normalized_head(signal, n_fft),
                                 1.0 / (static_cast<double>(n_fft) * n_fft));
  return result;
}

SpectralResult periodogram(const AudioSignal& signal, Window window,
                           int n_fft) {
  check_signal_and_nfft(signal, n_fft);

  SpectralResult result;
  result.n_fft = n_fft;
  result.normalization = SpectralNormalization::Density;
  result.freqs_hz = bin_freqs(n_fft, signal.sample_rate_hz);
  result.power = periodogram_of_segment(normalized_head(signal, n_fft),
                                        make_window(window, n_fft),
                                        signal.sample_rate_hz);
  return result;
}

SpectralResult welch_psd(const AudioSignal& signal, int window_len,
                         double overlap_fraction, Window window) {
  check_signal_and_nfft(signal, window_len);
  if (!(overlap_fraction >= 0.0) || overlap_fraction >= 1.0) {
    fail("overlap fraction must lie in [0, 1)");
  }
  if (static_cast<size_t>(window_len) > signal.samples.size()) {
    fail("segment longer than signal");
  }

  const int hop = std::max(
      1, window_len - static_cast<int>(std::lround(overlap_fraction * window_len)));
  const auto w = make_window(window, window_len);
  const size_t n = signal.samples.size();
  const size_t segments = (n - static_cast<size_t>(window_len)) /
                              static_cast<size_t>(hop) + 1;

  SpectralResult result;
  result.n_fft = window_len;
  result.normalization = SpectralNormalization::Density;
  result.freqs_hz = bin_freqs(window_len, signal.sample_rate_hz);
  result.power.assign(static_cast<size_t>(window_len / 2 + 1), 0.0);

  std::vector<double> segment(static_cast<size_t>(window_len));
  for (size_t s = 0; s < segments; ++s) {
    const size_t begin = s * static_cast<size_t>(hop);
    for (int i = 0; i < window_len; ++i) {
      segment[static_cast<size_t>(i)] =
          signal.samples[begin + static_cast<size_t>(i)] / 32768.0;
    }
    const auto p = periodogram_of_segment(segment, w, signal.sample_rate_hz);
    for (size_t k = 0; k < p.size(); ++k) result.power[k] += p[k];
  }
  for (double& p : result.power) p /= static_cast<double>(segments);
  return result;
}

SpectrogramResult spectrogram(const AudioSignal& signal, int window_len,
                              int hop, Window window) {
  check_signal_and_nfft(signal, window_len);
  if (hop <= 0 || hop > window_len) fail("hop must lie in (0, window_len]");
  if (static_cast<size_t>(window_len) > signal.samples.size()) {
    fail("segment longer than signal");
  }

  const auto w = make_window(window, window_len);
  const size_t rows = (signal.samples.size() - static_cast<size_t>(window_len)) /
                          static_cast<size_t>(hop) + 1;

  SpectrogramResult result;
  result.window_len = window_len;
  result.hop = hop;
  result.freqs_hz = bin_freqs(window_len, signal.sample_rate_hz);
  result.times_s.reserve(rows);
  result.power.reserve(rows);

  std::vector<double> segment(static_cast<size_t>(window_len));
  for (size_t r = 0; r < rows; ++r) {
    const size_t begin = r * static_cast<size_t>(hop);
    for (int i = 0; i < window_len; ++i) {
      segment[static_cast<size_t>(i)] =
          signal.samples[begin + static_cast<size_t>(i)] / 32768.0;
    }
    result.power.push_back(
        periodogram_of_segment(segment, w, signal.sample_rate_hz));
    result.times_s.push_back(
        (static_cast<double>(begin) + window_len / 2.0) / signal.sample_rate_hz);
  }
  return result;
}

SpectralResult packed_spectrum(const std::vector<VoipPacket>& packets,
                               int n_fft, double byte_rate_hz) {
  if (packets.empty()) fail("empty packet sequence");
  if (!is_pow2(n_fft) || n_fft < 16) {
    fail("n_fft must be a power of two >= 16, got " + std::to_string(n_fft));
  }
  if (!(byte_rate_hz > 0.0)) fail("byte rate must be positive");

  std::vector<double> x(static_cast<size_t>(n_fft), 0.0);
  size_t pos = 0;
  for (const auto& p : packets) {
    if (pos >= x.size()) break;
    for (uint8_t b : serialize_packet(p)) {
      if (pos >= x.size()) break;
      x[pos++] = (static_cast<double>(b) - 127.5) / 127.5;
    }
  }

  SpectralResult result;
  result.n_fft = n_fft;
  result.normalization = SpectralNormalization::PerBinPower;
  result.freqs_hz = bin_freqs(n_fft, byte_rate_hz);
  result.power = one_sided_power(x, 1.0 / (static_cast<double>(n_fft) * n_fft));
  return result;
}

}  // namespace voippipe
