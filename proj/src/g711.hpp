// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace voippipe {

enum class CompandingLaw : uint8_t { MuLaw, ALaw };

/// RTP static payload types: 0 = PCMU, 8 = PCMA.
inline uint8_t payload_type(CompandingLaw law) {
  return law == CompandingLaw::MuLaw ? 0 : 8;
}

/// Codeword a frame of digital silence is padded with: encode(0).
inline uint8_t silence_codeword(CompandingLaw law) {
  return law == CompandingLaw::MuLaw ? 0xFF : 0xD5;
}

/// One 8-bit codeword per input sample.
struct EncodedPayload {
  std::vector<uint8_t> bytes;
  CompandingLaw law = CompandingLaw::MuLaw;
};

// Segmented mu-law compressor: clamp magnitude to 32635, add bias 132,
// locate the exponent segment, keep 4 mantissa bits, assemble
// sign|exponent|mantissa and complement. Total over [-32768, 32767].
uint8_t mulaw_encode(int16_t sample);

// Inverse expansion onto segment midpoints. Total over 0..255.
int16_t mulaw_decode(uint8_t codeword);

// A-law compressor on the top 13 bits with even-bit inversion (XOR 0x55).
uint8_t alaw_encode(int16_t sample);

int16_t alaw_decode(uint8_t codeword);

uint8_t encode_sample(int16_t sample, CompandingLaw law);
int16_t decode_sample(uint8_t codeword, CompandingLaw law);

/// Element-wise application of the selected law; output length == input length.
EncodedPayload encode_frame(const std::vector<int16_t>& samples,
                            CompandingLaw law);

/// Element-wise inverse; total and length-preserving.
std::vector<int16_t> decode_frame(const EncodedPayload& payload);

}  // namespace voippipe
