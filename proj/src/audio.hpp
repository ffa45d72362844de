// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace voippipe {

/// Mono 16-bit PCM audio. The reference configuration is 8000 Hz.
struct AudioSignal {
  int sample_rate_hz = 0;
  std::vector<int16_t> samples;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Reads a RIFF/WAVE file. Only PCM, 16-bit, mono is accepted; stereo input
/// is rejected rather than downmixed.
AudioSignal read_wav(const std::string& path);

/// Writes the canonical 44-byte RIFF header followed by little-endian
/// 16-bit PCM. read_wav(write_wav(s)) == s.
void write_wav(const AudioSignal& signal, const std::string& path);

/// Scales every sample by `gain`, rounding half away from zero and
/// saturating to [-32768, 32767].
AudioSignal apply_gain(const AudioSignal& signal, double gain);

/// samples[n] = round(amplitude * 32767 * sin(2*pi*freq_hz*n/sample_rate_hz)).
/// freq_hz must lie strictly between 0 and Nyquist.
AudioSignal generate_tone(double freq_hz, double duration_s, double amplitude,
                          int sample_rate_hz);

}  // namespace voippipe
