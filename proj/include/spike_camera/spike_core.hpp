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

#ifndef SPIKE_CAMERA_SPIKE_CORE_HPP
#define SPIKE_CAMERA_SPIKE_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spike_camera
{
using intensity_t = uint32_t;
using moment_t = uint64_t;  // moments are 1-indexed; 0 is the stream start

struct StreamHeader
{
  uint32_t width{1};
  uint32_t height{1};
  uint32_t omega{256};
  moment_t moment_count{0};

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
  size_t plane_bytes() const { return (pixel_count() + 7) / 8; }

  bool operator==(const StreamHeader &) const = default;
};

// Throws std::invalid_argument unless width, height and omega are all >= 1.
void validate_header(const StreamHeader & h);

// One moment's spike bits. Pixel p = y * width + x lives at byte p / 8,
// bit p % 8 (LSB first). Padding bits past width * height stay zero.
class BitPlane
{
public:
  BitPlane() = default;
  BitPlane(uint32_t width, uint32_t height);

  uint32_t width() const { return width_; }
  uint32_t height() const { return height_; }
  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }

  bool test(size_t p) const { return (bytes_[p >> 3] >> (p & 7)) & 1u; }
  void set(size_t p, bool v)
  {
    const auto mask = static_cast<uint8_t>(1u << (p & 7));
    if (v) {
      bytes_[p >> 3] |= mask;
    } else {
      bytes_[p >> 3] &= static_cast<uint8_t>(~mask);
    }
  }

  std::span<const uint8_t> bytes() const { return bytes_; }
  std::span<uint8_t> bytes() { return bytes_; }

  // Replaces the packed contents; clears padding bits.
  void assign(std::span<const uint8_t> packed);

  size_t count() const;

  bool operator==(const BitPlane &) const = default;

private:
  uint32_t width_{0};
  uint32_t height_{0};
  std::vector<uint8_t> bytes_;
};

// Bounds-checked pixel lookup; throws std::out_of_range.
bool bit_at(const BitPlane & plane, uint32_t x, uint32_t y);

class SpikeStream
{
public:
  SpikeStream() = default;
  SpikeStream(uint32_t width, uint32_t height, uint32_t omega);

  const StreamHeader & header() const { return header_; }
  uint32_t width() const { return header_.width; }
  uint32_t height() const { return header_.height; }
  uint32_t omega() const { return header_.omega; }
  moment_t moment_count() const { return header_.moment_count; }

  // t in [1, moment_count]; throws std::out_of_range otherwise.
  const BitPlane & plane(moment_t t) const;
  BitPlane & plane(moment_t t);

  const std::vector<BitPlane> & planes() const { return planes_; }

  // Appends an all-zero plane and returns it.
  BitPlane & add_plane();
  void append(BitPlane plane);
  void reserve(size_t n) { planes_.reserve(n); }

  bool operator==(const SpikeStream &) const = default;

private:
  StreamHeader header_;
  std::vector<BitPlane> planes_;
};

// Per-pixel residual intensity, each value in [0, omega).
struct AccumulatorState
{
  uint32_t omega{256};
  std::vector<intensity_t> residual;

  AccumulatorState() = default;
  AccumulatorState(size_t pixels, uint32_t omega) : omega(omega), residual(pixels, 0) {}

  bool operator==(const AccumulatorState &) const = default;
};

struct GrayFrame
{
  uint32_t width{0};
  uint32_t height{0};
  intensity_t bit_depth{255};  // nominal maximum value
  std::vector<intensity_t> values;

  GrayFrame() = default;
  GrayFrame(uint32_t width, uint32_t height, intensity_t bit_depth = 255, intensity_t fill = 0)
  : width(width), height(height), bit_depth(bit_depth),
    values(static_cast<size_t>(width) * height, fill)
  {
  }

  size_t pixel_count() const { return values.size(); }
  intensity_t & at(uint32_t x, uint32_t y) { return values[static_cast<size_t>(y) * width + x]; }
  intensity_t at(uint32_t x, uint32_t y) const
  {
    return values[static_cast<size_t>(y) * width + x];
  }
  intensity_t max_value() const;

  bool operator==(const GrayFrame &) const = default;
};

struct StepResult
{
  intensity_t residual;
  bool spike;

  bool operator==(const StepResult &) const = default;
};

// One integrate-and-fire moment: next = (residual + input) mod omega, and a
// spike iff residual + input >= omega. At most one spike is emitted even when
// the sum reaches 2 * omega or more.
StepResult accumulate_step(intensity_t residual, intensity_t input, uint32_t omega);

// Unchecked form for hot loops; caller guarantees residual < omega.
inline StepResult accumulate_step_unchecked(
  intensity_t residual, intensity_t input, uint32_t omega) noexcept
{
  const uint64_t sum = static_cast<uint64_t>(residual) + input;
  if (sum < omega) {
    return {static_cast<intensity_t>(sum), false};
  }
  const uint64_t rem = sum - omega;
  return {static_cast<intensity_t>(rem < omega ? rem : sum % omega), true};
}

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_SPIKE_CORE_HPP
