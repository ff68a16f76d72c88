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

#include "spike_camera/decoder.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace spike_camera
{
namespace
{
void check_contrast(uint32_t contrast)
{
  if (contrast < 2) {
    throw std::invalid_argument("contrast must be at least 2");
  }
}

void check_moment(const SpikeStream & stream, moment_t t)
{
  if (t == 0 || t > stream.moment_count()) {
    throw std::out_of_range(
      "moment " + std::to_string(t) + " outside [1, " + std::to_string(stream.moment_count()) +
      "]");
  }
}

// Calls fn(p) for every set pixel of the plane.
template <typename Fn>
void for_each_spike(const BitPlane & plane, Fn && fn)
{
  const auto bytes = plane.bytes();
  for (size_t i = 0; i < bytes.size(); ++i) {
    unsigned b = bytes[i];
    while (b != 0) {
      const int k = std::countr_zero(b);
      fn((i << 3) + static_cast<size_t>(k));
      b &= b - 1;
    }
  }
}

intensity_t round_ratio(uint64_t num, uint64_t den, uint32_t contrast)
{
  // round half up, then clamp to the top output level
  const uint64_t v = (2 * num + den) / (2 * den);
  return static_cast<intensity_t>(std::min<uint64_t>(v, contrast - 1));
}

}  // namespace

TflDecoder::TflDecoder(uint32_t width, uint32_t height, uint32_t omega, uint32_t contrast)
: width_(width), height_(height), omega_(omega), contrast_(contrast)
{
  validate_header({width, height, omega, 0});
  check_contrast(contrast);
  const size_t n = static_cast<size_t>(width) * height;
  state_.last_spike.assign(n, 0);
  state_.interval.assign(n, 0);
}

void TflDecoder::advance(const BitPlane & plane)
{
  if (plane.width() != width_ || plane.height() != height_) {
    throw std::invalid_argument("plane dimensions do not match decoder");
  }
  const moment_t t = ++now_;
  for_each_spike(plane, [&](size_t p) {
    state_.interval[p] = t - state_.last_spike[p];
    state_.last_spike[p] = t;
  });
}

GrayFrame TflDecoder::frame() const
{
  GrayFrame out(width_, height_, contrast_ - 1);
  for (size_t p = 0; p < out.values.size(); ++p) {
    const moment_t last = state_.last_spike[p];
    if (last == 0) {
      continue;
    }
    const moment_t d = std::max(now_ - last, state_.interval[p]);
    out.values[p] = round_ratio(omega_, d, contrast_);
  }
  return out;
}

TfpDecoder::TfpDecoder(const SpikeStream & stream, TfpConfig config)
: stream_(stream), config_(config), counts_(stream.header().pixel_count(), 0)
{
  if (config.window == 0) {
    throw std::invalid_argument("window must be at least 1");
  }
  check_contrast(config.contrast);
}

void TfpDecoder::advance()
{
  const moment_t t = now_ + 1;
  check_moment(stream_, t);
  for_each_spike(stream_.plane(t), [&](size_t p) { ++counts_[p]; });
  if (t > config_.window) {
    for_each_spike(stream_.plane(t - config_.window), [&](size_t p) { --counts_[p]; });
  }
  now_ = t;
}

GrayFrame TfpDecoder::frame() const
{
  GrayFrame out(stream_.width(), stream_.height(), config_.contrast - 1);
  if (now_ == 0) {
    return out;
  }
  const uint64_t span = std::min<uint64_t>(config_.window, now_);
  for (size_t p = 0; p < counts_.size(); ++p) {
    out.values[p] = round_ratio(static_cast<uint64_t>(counts_[p]) * config_.contrast, span,
                                config_.contrast);
  }
  return out;
}

GrayFrame tfl_reconstruct(const SpikeStream & stream, moment_t t, uint32_t contrast)
{
  check_moment(stream, t);
  TflDecoder dec(stream.width(), stream.height(), stream.omega(), contrast);
  for (moment_t m = 1; m <= t; ++m) {
    dec.advance(stream.plane(m));
  }
  return dec.frame();
}

GrayFrame tfp_reconstruct(const SpikeStream & stream, moment_t t, const TfpConfig & config)
{
  check_moment(stream, t);
  if (config.window == 0) {
    throw std::invalid_argument("window must be at least 1");
  }
  check_contrast(config.contrast);
  const moment_t span = std::min<moment_t>(config.window, t);
  std::vector<uint32_t> counts(stream.header().pixel_count(), 0);
  for (moment_t m = t - span + 1; m <= t; ++m) {
    for_each_spike(stream.plane(m), [&](size_t p) { ++counts[p]; });
  }
  GrayFrame out(stream.width(), stream.height(), config.contrast - 1);
  for (size_t p = 0; p < counts.size(); ++p) {
    out.values[p] =
      round_ratio(static_cast<uint64_t>(counts[p]) * config.contrast, span, config.contrast);
  }
  return out;
}

std::vector<GrayFrame> reconstruct_series(
  const SpikeStream & stream, const DecodeParams & params, moment_t start, moment_t stride)
{
  if (start == 0) {
    throw std::invalid_argument("start moment must be at least 1");
  }
  if (stride == 0) {
    throw std::invalid_argument("stride must be at least 1");
  }
  check_moment(stream, start);

  std::vector<GrayFrame> frames;
  frames.reserve((stream.moment_count() - start) / stride + 1);
  const auto wanted = [&](moment_t t) { return t >= start && (t - start) % stride == 0; };

  if (params.method == Method::tfl) {
    TflDecoder dec(stream.width(), stream.height(), stream.omega(), params.contrast);
    for (moment_t t = 1; t <= stream.moment_count(); ++t) {
      dec.advance(stream.plane(t));
      if (wanted(t)) {
        frames.push_back(dec.frame());
      }
    }
  } else {
    TfpDecoder dec(stream, {params.window, params.contrast});
    for (moment_t t = 1; t <= stream.moment_count(); ++t) {
      dec.advance();
      if (wanted(t)) {
        frames.push_back(dec.frame());
      }
    }
  }
  return frames;
}

}  // namespace spike_camera
