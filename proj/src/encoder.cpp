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

#include "spike_camera/encoder.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spike_camera/parallel.hpp"

namespace spike_camera
{
Encoder::Encoder(uint32_t width, uint32_t height, EncoderConfig config)
: width_(width), height_(height), config_(config),
  state_(static_cast<size_t>(width) * height, config.omega),
  spike_counts_(static_cast<size_t>(width) * height, 0)
{
  validate_header({width, height, config.omega, 0});
  if (config.repeat == 0) {
    throw std::invalid_argument("repeat must be at least 1");
  }
}

void Encoder::encode(std::span<const GrayFrame> frames, SpikeStream & out)
{
  if (out.width() != width_ || out.height() != height_ || out.omega() != config_.omega) {
    throw std::invalid_argument("output stream does not match encoder geometry");
  }
  for (size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].width != width_ || frames[i].height != height_) {
      throw std::invalid_argument(
        "frame " + std::to_string(i) + " is " + std::to_string(frames[i].width) + "x" +
        std::to_string(frames[i].height) + ", expected " + std::to_string(width_) + "x" +
        std::to_string(height_));
    }
  }

  const moment_t first = out.moment_count() + 1;
  const size_t new_moments = frames.size() * config_.repeat;
  out.reserve(out.moment_count() + new_moments);
  for (size_t i = 0; i < new_moments; ++i) {
    out.add_plane();
  }

  const uint32_t omega = config_.omega;
  const uint32_t repeat = config_.repeat;
  const uint64_t overflow_level = 2ull * omega;
  std::atomic<uint64_t> overflow{0};

  for_each_pixel_slice(state_.residual.size(), config_.workers, [&](size_t begin, size_t end) {
    uint64_t local_overflow = 0;
    intensity_t * residual = state_.residual.data();
    uint64_t * counts = spike_counts_.data();
    moment_t t = first;
    for (const GrayFrame & frame : frames) {
      const intensity_t * input = frame.values.data();
      for (uint32_t r = 0; r < repeat; ++r, ++t) {
        uint8_t * bits = out.plane(t).bytes().data();
        // slices start on a byte boundary, so whole bytes are assembled here
        for (size_t p = begin; p < end; p += 8) {
          const size_t stop = std::min(end, p + 8);
          uint8_t byte = 0;
          for (size_t q = p; q < stop; ++q) {
            const uint64_t sum = static_cast<uint64_t>(residual[q]) + input[q];
            local_overflow += sum >= overflow_level;
            const StepResult s = accumulate_step_unchecked(residual[q], input[q], omega);
            residual[q] = s.residual;
            counts[q] += s.spike;
            byte |= static_cast<uint8_t>(s.spike) << (q - p);
          }
          bits[p >> 3] = byte;
        }
      }
    }
    overflow += local_overflow;
  });

  overflow_moments_ += overflow.load();
  moments_ += new_moments;
}

EncodeReport Encoder::report() const
{
  EncodeReport rep;
  rep.overflow_moments = overflow_moments_;
  if (spike_counts_.empty()) {
    return rep;
  }
  rep.total_spikes = std::accumulate(spike_counts_.begin(), spike_counts_.end(), uint64_t{0});
  const auto [lo, hi] = std::minmax_element(spike_counts_.begin(), spike_counts_.end());
  rep.spikes_per_pixel_min = *lo;
  rep.spikes_per_pixel_max = *hi;
  rep.spikes_per_pixel_mean =
    static_cast<double>(rep.total_spikes) / static_cast<double>(spike_counts_.size());
  return rep;
}

std::pair<SpikeStream, EncodeReport> encode_sequence(
  std::span<const GrayFrame> frames, const EncoderConfig & config)
{
  if (frames.empty()) {
    throw std::invalid_argument("encode_sequence needs at least one frame");
  }
  Encoder encoder(frames.front().width, frames.front().height, config);
  SpikeStream stream = encoder.make_stream();
  encoder.encode(frames, stream);
  return {std::move(stream), encoder.report()};
}

GrayFrame luma_convert(const RgbFrame & frame)
{
  const size_t pixels = static_cast<size_t>(frame.width) * frame.height;
  if (frame.rgb.size() != pixels * 3) {
    throw std::invalid_argument("rgb buffer does not hold width * height triplets");
  }
  GrayFrame out(frame.width, frame.height, frame.maxval);
  for (size_t p = 0; p < pixels; ++p) {
    const uint64_t r = frame.rgb[3 * p];
    const uint64_t g = frame.rgb[3 * p + 1];
    const uint64_t b = frame.rgb[3 * p + 2];
    // integer form of round-half-up(0.299 R + 0.587 G + 0.114 B)
    const uint64_t y = (299 * r + 587 * g + 114 * b + 500) / 1000;
    out.values[p] = static_cast<intensity_t>(std::min<uint64_t>(y, frame.maxval));
  }
  return out;
}

}  // namespace spike_camera
