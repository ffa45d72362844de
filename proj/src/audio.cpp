// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "audio.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "errors.hpp"

namespace voippipe {

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xFF));
}

uint16_t get_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t get_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, "audio_io: " + msg);
}

}  // namespace

AudioSignal read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open file: " + path);

  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    fail(ErrorKind::Format, "not a RIFF/WAVE file: " + path);
  }

  bool have_fmt = false;
  uint16_t format_tag = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;

  // Chunk walk; fmt must precede data.
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    uint32_t size = get_u32(chunk + 4);
    if (pos + 8 + size > bytes.size()) {
      fail(ErrorKind::Format, "truncated chunk in " + path);
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) fail(ErrorKind::Format, "malformed fmt chunk");
      format_tag = get_u16(chunk + 8);
      channels = get_u16(chunk + 10);
      sample_rate = get_u32(chunk + 12);
      bits = get_u16(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) fail(ErrorKind::Format, "data chunk before fmt chunk");
      data = chunk + 8;
      data_size = size;
      break;
    }
    pos += 8 + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) fail(ErrorKind::Format, "missing fmt chunk");
  if (data == nullptr) fail(ErrorKind::Format, "missing data chunk");
  if (format_tag != 1) {
    fail(ErrorKind::Format,
         "unsupported encoding: format tag " + std::to_string(format_tag) +
             " (PCM only)");
  }
  if (bits != 16) {
    fail(ErrorKind::Format,
         "unsupported bit depth: " + std::to_string(bits) + " (16-bit only)");
  }
  if (channels != 1) {
    fail(ErrorKind::Format,
         "unsupported channel count: " + std::to_string(channels));
  }
  if (sample_rate == 0) fail(ErrorKind::Format, "zero sample rate");
  if (data_size % 2 != 0) fail(ErrorKind::Format, "odd data chunk size");

  AudioSignal out;
  out.sample_rate_hz = static_cast<int>(sample_rate);
  out.samples.resize(data_size / 2);
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = static_cast<int16_t>(get_u16(data + 2 * i));
  }
  return out;
}

void write_wav(const AudioSignal& signal, const std::string& path) {
  if (signal.samples.empty()) fail(ErrorKind::InvalidArgument, "empty signal");
  if (signal.sample_rate_hz <= 0) {
    fail(ErrorKind::InvalidArgument, "invalid sample rate");
  }

  const uint32_t data_size =
      static_cast<uint32_t>(signal.samples.size() * 2);
  const uint32_t sample_rate = static_cast<uint32_t>(signal.sample_rate_hz);

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, 1);            // PCM
  put_u16(out, 1);            // mono
  put_u32(out, sample_rate);
  put_u32(out, sample_rate * 2);  // byte rate
  put_u16(out, 2);            // block align
  put_u16(out, 16);           // bits per sample
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_size);
  for (int16_t s : signal.samples) {
    put_u16(out, static_cast<uint16_t>(s));
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::Io, "cannot open file for writing: " + path);
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) fail(ErrorKind::Io, "write failed: " + path);
}

AudioSignal apply_gain(const AudioSignal& signal, double gain) {
  if (!(gain >= 0.0) || !std::isfinite(gain)) {
    fail(ErrorKind::InvalidArgument, "gain must be a non-negative number");
  }
  AudioSignal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples.reserve(signal.samples.size());
  for (int16_t s : signal.samples) {
    long long v = std::llround(static_cast<double>(s) * gain);
    if (v > 32767) v = 32767;
    if (v < -32768) v = -32768;
    out.samples.push_back(static_cast<int16_t>(v));
  }
  return out;
}

AudioSignal generate_tone(double freq_hz, double duration_s, double amplitude,
                          int sample_rate_hz) {
  if (sample_rate_hz <= 0) {
    fail(ErrorKind::InvalidArgument, "sample rate must be positive");
  }
  if (!(freq_hz > 0.0) || freq_hz >= sample_rate_hz / 2.0) {
    fail(ErrorKind::InvalidArgument,
         "tone frequency must lie strictly between 0 and Nyquist");
  }
  if (!(amplitude >= 0.0) || amplitude > 1.0) {
    fail(ErrorKind::InvalidArgument, "amplitude must lie in [0, 1]");
  }
  const long long n = std::llround(duration_s * sample_rate_hz);
  if (n < 1) fail(ErrorKind::InvalidArgument, "tone duration yields no samples");

  AudioSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.reserve(static_cast<size_t>(n));
  const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
  for (long long i = 0; i < n; ++i) {
    out.samples.push_back(static_cast<int16_t>(
        std::lround(amplitude * 32767.0 * std::sin(w * static_cast<double>(i)))));
  }
  return out;
}

}  // namespace voippipe
