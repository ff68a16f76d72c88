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

#include "spike_camera/codec.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>

#include "spike_camera/errors.hpp"

namespace spike_camera
{
namespace
{
template <typename T>
void put_le(std::span<uint8_t> out, size_t offset, T v)
{
  for (size_t i = 0; i < sizeof(T); ++i) {
    out[offset + i] = static_cast<uint8_t>(v >> (8 * i));
  }
}

template <typename T>
T get_le(std::span<const uint8_t> in, size_t offset)
{
  T v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(static_cast<T>(in[offset + i]) << (8 * i));
  }
  return v;
}

using Kind = SpkFormatError::Kind;

}  // namespace

SpkInfo parse_spk_header(std::span<const uint8_t> bytes)
{
  const size_t magic_len = std::min(bytes.size(), kSpkMagic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(magic_len),
                  kSpkMagic.begin())) {
    throw SpkFormatError(Kind::bad_magic, "not an SPK file (bad magic)");
  }
  if (bytes.size() < kSpkHeaderBytes) {
    throw SpkFormatError(
      Kind::truncated, "truncated SPK header: " + std::to_string(bytes.size()) + " of 28 bytes");
  }
  const auto version = get_le<uint16_t>(bytes, 4);
  if (version != kSpkVersion) {
    throw SpkFormatError(
      Kind::version_mismatch, "unsupported SPK version " + std::to_string(version));
  }
  const auto flags = get_le<uint16_t>(bytes, 6);
  if ((flags & ~kSpkFlagPixelMajor) != 0) {
    throw SpkFormatError(Kind::unsupported_flags, "unsupported SPK flags " + std::to_string(flags));
  }
  SpkInfo info;
  info.header.width = get_le<uint32_t>(bytes, 8);
  info.header.height = get_le<uint32_t>(bytes, 12);
  info.header.omega = get_le<uint32_t>(bytes, 16);
  info.header.moment_count = get_le<uint64_t>(bytes, 20);
  info.order = (flags & kSpkFlagPixelMajor) ? PlaneOrder::pixel_major : PlaneOrder::moment_major;
  if (info.header.width == 0 || info.header.height == 0 || info.header.omega == 0) {
    throw SpkFormatError(Kind::invalid_header, "SPK header has zero width, height or omega");
  }
  return info;
}

std::vector<uint8_t> encode_spk(const SpikeStream & stream, PlaneOrder order)
{
  const StreamHeader & h = stream.header();
  const size_t plane_bytes = h.plane_bytes();
  std::vector<uint8_t> out(kSpkHeaderBytes + plane_bytes * h.moment_count, 0);
  std::copy(kSpkMagic.begin(), kSpkMagic.end(), out.begin());
  put_le<uint16_t>(out, 4, kSpkVersion);
  put_le<uint16_t>(out, 6, order == PlaneOrder::pixel_major ? kSpkFlagPixelMajor : 0);
  put_le<uint32_t>(out, 8, h.width);
  put_le<uint32_t>(out, 12, h.height);
  put_le<uint32_t>(out, 16, h.omega);
  put_le<uint64_t>(out, 20, h.moment_count);

  uint8_t * payload = out.data() + kSpkHeaderBytes;
  if (order == PlaneOrder::moment_major) {
    for (const BitPlane & plane : stream.planes()) {
      payload = std::copy(plane.bytes().begin(), plane.bytes().end(), payload);
    }
    return out;
  }

  const uint64_t T = h.moment_count;
  for (uint64_t t = 1; t <= T; ++t) {
    const auto bytes = stream.plane(t).bytes();
    for (size_t i = 0; i < bytes.size(); ++i) {
      unsigned b = bytes[i];
      while (b != 0) {
        const size_t p = (i << 3) + static_cast<size_t>(std::countr_zero(b));
        const uint64_t bit = p * T + (t - 1);
        payload[bit >> 3] |= static_cast<uint8_t>(1u << (bit & 7));
        b &= b - 1;
      }
    }
  }
  return out;
}

SpikeStream decode_spk(std::span<const uint8_t> bytes)
{
  const SpkInfo info = parse_spk_header(bytes);
  const StreamHeader & h = info.header;
  const size_t plane_bytes = h.plane_bytes();
  const auto payload = bytes.subspan(kSpkHeaderBytes);
  // guard the multiplication against absurd headers before comparing
  if (h.moment_count > payload.size() / plane_bytes + 1 ||
      payload.size() < plane_bytes * h.moment_count) {
    throw SpkFormatError(
      Kind::truncated, "truncated SPK payload: header declares " + std::to_string(h.moment_count) +
                         " planes of " + std::to_string(plane_bytes) + " bytes, " +
                         std::to_string(payload.size()) + " bytes present");
  }
  if (payload.size() != plane_bytes * h.moment_count) {
    throw SpkFormatError(Kind::trailing_data, "SPK file has trailing bytes after last plane");
  }

  SpikeStream stream(h.width, h.height, h.omega);
  stream.reserve(h.moment_count);
  if (info.order == PlaneOrder::moment_major) {
    for (uint64_t t = 0; t < h.moment_count; ++t) {
      stream.add_plane().assign(payload.subspan(t * plane_bytes, plane_bytes));
    }
    return stream;
  }

  const uint64_t T = h.moment_count;
  for (uint64_t t = 0; t < T; ++t) {
    stream.add_plane();
  }
  const size_t pixels = h.pixel_count();
  for (size_t p = 0; p < pixels; ++p) {
    for (uint64_t t = 0; t < T; ++t) {
      const uint64_t bit = p * T + t;
      if ((payload[bit >> 3] >> (bit & 7)) & 1u) {
        stream.plane(t + 1).set(p, true);
      }
    }
  }
  return stream;
}

size_t write_spk(const SpikeStream & stream, std::ostream & sink, PlaneOrder order)
{
  const std::vector<uint8_t> bytes = encode_spk(stream, order);
  sink.write(reinterpret_cast<const char *>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!sink) {
    throw IoError("failed writing SPK stream");
  }
  return bytes.size();
}

SpikeStream read_spk(std::istream & source)
{
  std::vector<uint8_t> bytes(
    (std::istreambuf_iterator<char>(source)), std::istreambuf_iterator<char>());
  if (source.bad()) {
    throw IoError("failed reading SPK stream");
  }
  return decode_spk(bytes);
}

}  // namespace spike_camera
