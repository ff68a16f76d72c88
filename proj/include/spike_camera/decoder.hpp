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

#ifndef SPIKE_CAMERA_DECODER_HPP
#define SPIKE_CAMERA_DECODER_HPP

#include <cstdint>
#include <vector>

#include "spike_camera/spike_core.hpp"

namespace spike_camera
{
// Per-pixel latency bookkeeping for texture-from-latency decoding.
// last_spike == 0 means the pixel has not fired yet; interval is the gap
// between the two most recent spikes (for the first spike, the time since
// stream start), 0 while undefined.
struct TflState
{
  std::vector<moment_t> last_spike;
  std::vector<moment_t> interval;
};

struct TfpConfig
{
  uint32_t window{256};
  uint32_t contrast{256};
};

enum class Method { tfl, tfp };

struct DecodeParams
{
  Method method{Method::tfp};
  uint32_t window{256};  // tfp only
  uint32_t contrast{256};
};

// P = clamp(round(omega / d), 0, C - 1) with d = max(t - last_spike, interval).
// Pixels that have never fired decode to 0.
class TflDecoder
{
public:
  TflDecoder(uint32_t width, uint32_t height, uint32_t omega, uint32_t contrast = 256);

  // Consumes the plane of moment now() + 1.
  void advance(const BitPlane & plane);
  moment_t now() const { return now_; }
  const TflState & state() const { return state_; }
  GrayFrame frame() const;

private:
  uint32_t width_;
  uint32_t height_;
  uint32_t omega_;
  uint32_t contrast_;
  moment_t now_{0};
  TflState state_;
};

// Sliding-window spike counter: P = clamp(round(N * C / w'), 0, C - 1) where
// w' = min(w, t) and N counts spikes over the moments (t - w', t].
class TfpDecoder
{
public:
  TfpDecoder(const SpikeStream & stream, TfpConfig config);

  // Moves the window end to now() + 1.
  void advance();
  moment_t now() const { return now_; }
  const std::vector<uint32_t> & counts() const { return counts_; }
  GrayFrame frame() const;

private:
  const SpikeStream & stream_;
  TfpConfig config_;
  moment_t now_{0};
  std::vector<uint32_t> counts_;
};

// Single-moment reconstructions; t in [1, moment_count] or std::out_of_range.
GrayFrame tfl_reconstruct(const SpikeStream & stream, moment_t t, uint32_t contrast = 256);
GrayFrame tfp_reconstruct(const SpikeStream & stream, moment_t t, const TfpConfig & config);

// Frames at t = start, start + stride, ... <= moment_count, decoded in one
// forward pass.
std::vector<GrayFrame> reconstruct_series(
  const SpikeStream & stream, const DecodeParams & params, moment_t start, moment_t stride);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_DECODER_HPP
