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

#include "spike_camera/spike_core.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace spike_camera
{
void validate_header(const StreamHeader & h)
{
  if (h.width == 0 || h.height == 0) {
    throw std::invalid_argument("stream dimensions must be at least 1x1");
  }
  if (h.omega == 0) {
    throw std::invalid_argument("dispatch threshold omega must be at least 1");
  }
}

BitPlane::BitPlane(uint32_t width, uint32_t height)
: width_(width), height_(height), bytes_((static_cast<size_t>(width) * height + 7) / 8, 0)
{
}

void BitPlane::assign(std::span<const uint8_t> packed)
{
  if (packed.size() != bytes_.size()) {
    throw std::invalid_argument(
      "plane expects " + std::to_string(bytes_.size()) + " bytes, got " +
      std::to_string(packed.size()));
  }
  std::copy(packed.begin(), packed.end(), bytes_.begin());
  const size_t tail = pixel_count() & 7;
  if (tail != 0) {
    bytes_.back() &= static_cast<uint8_t>((1u << tail) - 1);
  }
}

size_t BitPlane::count() const
{
  size_t n = 0;
  for (const uint8_t b : bytes_) {
    n += static_cast<size_t>(std::popcount(b));
  }
  return n;
}

bool bit_at(const BitPlane & plane, uint32_t x, uint32_t y)
{
  if (x >= plane.width() || y >= plane.height()) {
    throw std::out_of_range(
      "pixel (" + std::to_string(x) + ", " + std::to_string(y) + ") outside " +
      std::to_string(plane.width()) + "x" + std::to_string(plane.height()) + " plane");
  }
  return plane.test(static_cast<size_t>(y) * plane.width() + x);
}

SpikeStream::SpikeStream(uint32_t width, uint32_t height, uint32_t omega)
: header_{width, height, omega, 0}
{
  validate_header(header_);
}

const BitPlane & SpikeStream::plane(moment_t t) const
{
  if (t == 0 || t > header_.moment_count) {
    throw std::out_of_range(
      "moment " + std::to_string(t) + " outside [1, " + std::to_string(header_.moment_count) +
      "]");
  }
  return planes_[t - 1];
}

BitPlane & SpikeStream::plane(moment_t t)
{
  return const_cast<BitPlane &>(std::as_const(*this).plane(t));
}

BitPlane & SpikeStream::add_plane()
{
  planes_.emplace_back(header_.width, header_.height);
  header_.moment_count = planes_.size();
  return planes_.back();
}

void SpikeStream::append(BitPlane plane)
{
  if (plane.width() != header_.width || plane.height() != header_.height) {
    throw std::invalid_argument("plane dimensions do not match stream");
  }
  planes_.push_back(std::move(plane));
  header_.moment_count = planes_.size();
}

intensity_t GrayFrame::max_value() const
{
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

StepResult accumulate_step(intensity_t residual, intensity_t input, uint32_t omega)
{
  if (omega == 0) {
    throw std::invalid_argument("omega must be at least 1");
  }
  if (residual >= omega) {
    throw std::invalid_argument(
      "residual " + std::to_string(residual) + " not below omega " + std::to_string(omega));
  }
  return accumulate_step_unchecked(residual, input, omega);
}

}  // namespace spike_camera
