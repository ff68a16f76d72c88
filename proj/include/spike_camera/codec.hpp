// Copyright 2026 The spike_camera Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPIKE_CAMERA_CODEC_HPP
#define SPIKE_CAMERA_CODEC_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spike_camera/spike_core.hpp"

namespace spike_camera
{
// SPK container, little-endian:
//   0-3   magic "SPK1"
//   4-5   version (u16) = 1
//   6-7   flags (u16); bit 0 set = pixel-major payload
//   8-11  width (u32)
//   12-15 height (u32)
//   16-19 omega (u32)
//   20-27 moment_count (u64)
// followed by moment_count * ceil(width * height / 8) payload bytes.
//
// Moment-major payload: one packed plane per moment, row-major pixels,
// LSB-first. Pixel-major payload: the same byte count, with the spike of
// pixel p at moment t stored at global bit index p * moment_count + (t - 1).
inline constexpr std::array<uint8_t, 4> kSpkMagic{0x53, 0x50, 0x4B, 0x31};
inline constexpr uint16_t kSpkVersion = 1;
inline constexpr uint16_t kSpkFlagPixelMajor = 0x0001;
inline constexpr size_t kSpkHeaderBytes = 28;

enum class PlaneOrder { moment_major, pixel_major };

class SpkFormatError : public std::runtime_error
{
public:
  enum class Kind { bad_magic, version_mismatch, unsupported_flags, invalid_header, truncated, trailing_data };

  SpkFormatError(Kind kind, const std::string & what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct SpkInfo
{
  StreamHeader header;
  PlaneOrder order{PlaneOrder::moment_major};
};

// Parses and validates the 28-byte header only.
SpkInfo parse_spk_header(std::span<const uint8_t> bytes);

std::vector<uint8_t> encode_spk(
  const SpikeStream & stream, PlaneOrder order = PlaneOrder::moment_major);
SpikeStream decode_spk(std::span<const uint8_t> bytes);

// Returns total bytes written, 28 + T * ceil(W * H / 8). Throws IoError if the
// sink fails.
size_t write_spk(
  const SpikeStream & stream, std::ostream & sink, PlaneOrder order = PlaneOrder::moment_major);
SpikeStream read_spk(std::istream & source);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_CODEC_HPP
