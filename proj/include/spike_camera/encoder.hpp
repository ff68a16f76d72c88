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

#ifndef SPIKE_CAMERA_ENCODER_HPP
#define SPIKE_CAMERA_ENCODER_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spike_camera/spike_core.hpp"

namespace spike_camera
{
struct EncoderConfig
{
  uint32_t omega{256};
  uint32_t repeat{1};  // moments per input frame (zero-order hold)
  unsigned workers{0};  // 0 = SPK_THREADS / hardware default; never affects output
};

struct EncodeReport
{
  uint64_t total_spikes{0};
  uint64_t spikes_per_pixel_min{0};
  uint64_t spikes_per_pixel_max{0};
  double spikes_per_pixel_mean{0.0};
  // (pixel, moment) pairs where residual + input >= 2 * omega, i.e. where the
  // single-spike rule dropped intensity.
  uint64_t overflow_moments{0};
};

// Streaming encoder. Accumulators persist across encode() calls, so encoding
// a sequence in pieces yields the same stream as encoding it at once.
class Encoder
{
public:
  Encoder(uint32_t width, uint32_t height, EncoderConfig config = {});

  // Appends frames.size() * repeat planes to out. out must have the
  // encoder's dimensions and omega.
  void encode(std::span<const GrayFrame> frames, SpikeStream & out);

  SpikeStream make_stream() const { return SpikeStream(width_, height_, config_.omega); }

  const AccumulatorState & state() const { return state_; }
  const std::vector<uint64_t> & spikes_per_pixel() const { return spike_counts_; }
  moment_t moments() const { return moments_; }
  EncodeReport report() const;

private:
  uint32_t width_;
  uint32_t height_;
  EncoderConfig config_;
  AccumulatorState state_;
  std::vector<uint64_t> spike_counts_;
  uint64_t overflow_moments_{0};
  moment_t moments_{0};
};

// Throws std::invalid_argument on empty input or mismatched frame sizes.
std::pair<SpikeStream, EncodeReport> encode_sequence(
  std::span<const GrayFrame> frames, const EncoderConfig & config = {});

struct RgbFrame
{
  uint32_t width{0};
  uint32_t height{0};
  uint32_t maxval{255};
  std::vector<uint16_t> rgb;  // interleaved R, G, B
};

// BT.601 luma, round(0.299 R + 0.587 G + 0.114 B), clamped to maxval.
GrayFrame luma_convert(const RgbFrame & frame);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_ENCODER_HPP
