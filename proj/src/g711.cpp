// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#include "g711.hpp"

#include <bit>

namespace voippipe {

uint8_t mulaw_encode(int16_t sample) {
  int sign = 0;
  int mag = sample;
  if (mag < 0) {
    sign = 0x80;
    mag = -mag;
  }
  if (mag > 32635) mag = 32635;
  mag += 132;
  // mag is in [132, 32767]; segment 0 covers values up to 0xFF,
  // each further segment doubles the range.
  int seg = std::bit_width(static_cast<unsigned>(mag)) - 8;
  if (seg < 0) seg = 0;
  int mantissa = (mag >> (seg + 3)) & 0x0F;
  return static_cast<uint8_t>(~(sign | (seg << 4) | mantissa));
}

int16_t mulaw_decode(uint8_t codeword) {
  uint8_t u = static_cast<uint8_t>(~codeword);
  int seg = (u >> 4) & 0x07;
  int mantissa = u & 0x0F;
  int mag = (((mantissa << 3) + 132) << seg) - 132;
  // The negative zero codeword 0x7F expands to -1 rather than 0. That keeps
  // the expansion injective, so re-encoding returns every codeword unchanged
  // (encode(-1) is 0x7F), while staying well inside the segment error bound.
  if (u & 0x80) return static_cast<int16_t>(mag == 0 ? -1 : -mag);
  return static_cast<int16_t>(mag);
}

uint8_t alaw_encode(int16_t sample) {
  int sign = sample >= 0 ? 0x80 : 0x00;
  int mag = sample >= 0 ? sample : -static_cast<int>(sample);
  mag >>= 3;  // 13-bit domain
  if (mag > 0xFFF) mag = 0xFFF;
  int seg = mag > 0x1F ? std::bit_width(static_cast<unsigned>(mag)) - 5 : 0;
  int mantissa = (mag >> (seg == 0 ? 1 : seg)) & 0x0F;
  return static_cast<uint8_t>((sign | (seg << 4) | mantissa) ^ 0x55);
}

int16_t alaw_decode(uint8_t codeword) {
  uint8_t u = codeword ^ 0x55;
  int seg = (u >> 4) & 0x07;
  int mantissa = u & 0x0F;
  int mag = seg == 0 ? (mantissa << 4) + 8
                     : ((mantissa << 4) + 0x108) << (seg - 1);
  return static_cast<int16_t>((u & 0x80) ? mag : -mag);
}

uint8_t encode_sample(int16_t sample, CompandingLaw law) {
  return law == CompandingLaw::MuLaw ? mulaw_encode(sample)
                                     : alaw_encode(sample);
}

int16_t decode_sample(uint8_t codeword, CompandingLaw law) {
  return law == CompandingLaw::MuLaw ? mulaw_decode(codeword)
                                     : alaw_decode(codeword);
}

EncodedPayload encode_frame(const std::vector<int16_t>& samples,
                            CompandingLaw law) {
  EncodedPayload out;
  out.law = law;
  out.bytes.reserve(samples.size());
  for (int16_t s : samples) out.bytes.push_back(encode_sample(s, law));
  return out;
}

std::vector<int16_t> decode_frame(const EncodedPayload& payload) {
  std::vector<int16_t> out;
  out.reserve(payload.bytes.size());
  for (uint8_t b : payload.bytes) out.push_back(decode_sample(b, payload.law));
  return out;
}

}  // namespace voippipe
