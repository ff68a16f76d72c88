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

#include "spike_camera/compression.hpp"

#include <limits>

#include <lzma.h>
#include <zlib.h>

namespace spike_camera
{
namespace
{
using Kind = CompressionError::Kind;

class DeflateBackend final : public CompressionBackend
{
public:
  Backend id() const override { return Backend::lz77; }

  std::vector<uint8_t> compress(std::span<const uint8_t> raw) const override
  {
    if (raw.size() > std::numeric_limits<uLong>::max()) {
      throw CompressionError(Kind::backend_failure, "input too large for zlib");
    }
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<uint8_t> out(bound);
    const int rc = compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 9);
    if (rc != Z_OK) {
      throw CompressionError(Kind::backend_failure, "zlib compress2 failed: " + std::to_string(rc));
    }
    out.resize(bound);
    return out;
  }

  std::vector<uint8_t> decompress(std::span<const uint8_t> packed) const override
  {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) {
      throw CompressionError(Kind::backend_failure, "zlib inflateInit failed");
    }
    std::vector<uint8_t> out;
    std::vector<uint8_t> chunk(1 << 16);
    zs.next_in = const_cast<Bytef *>(packed.data());
    zs.avail_in = static_cast<uInt>(packed.size());
    int rc = Z_OK;
    while (rc == Z_OK) {
      zs.next_out = chunk.data();
      zs.avail_out = static_cast<uInt>(chunk.size());
      rc = inflate(&zs, Z_NO_FLUSH);
      out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - zs.avail_out));
      if (rc == Z_BUF_ERROR && zs.avail_in == 0) {
        break;  // input exhausted before end of stream
      }
    }
    const bool complete = rc == Z_STREAM_END && zs.avail_in == 0;
    inflateEnd(&zs);
    if (!complete) {
      throw CompressionError(Kind::corrupt_input, "corrupt or truncated lz77 (zlib) data");
    }
    return out;
  }
};

class LzmaBackend final : public CompressionBackend
{
public:
  Backend id() const override { return Backend::lzma; }

  std::vector<uint8_t> compress(std::span<const uint8_t> raw) const override
  {
    std::vector<uint8_t> out(lzma_stream_buffer_bound(raw.size()));
    size_t pos = 0;
    const lzma_ret rc = lzma_easy_buffer_encode(
      6, LZMA_CHECK_CRC64, nullptr, raw.data(), raw.size(), out.data(), &pos, out.size());
    if (rc != LZMA_OK) {
      throw CompressionError(Kind::backend_failure, "lzma encode failed: " + std::to_string(rc));
    }
    out.resize(pos);
    return out;
  }

  std::vector<uint8_t> decompress(std::span<const uint8_t> packed) const override
  {
    lzma_stream strm = LZMA_STREAM_INIT;
    if (lzma_stream_decoder(&strm, std::numeric_limits<uint64_t>::max(), 0) != LZMA_OK) {
      throw CompressionError(Kind::backend_failure, "lzma decoder init failed");
    }
    std::vector<uint8_t> out;
    std::vector<uint8_t> chunk(1 << 16);
    strm.next_in = packed.data();
    strm.avail_in = packed.size();
    lzma_ret rc = LZMA_OK;
    while (rc == LZMA_OK) {
      strm.next_out = chunk.data();
      strm.avail_out = chunk.size();
      rc = lzma_code(&strm, LZMA_FINISH);
      out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - strm.avail_out));
    }
    const bool complete = rc == LZMA_STREAM_END && strm.avail_in == 0;
    lzma_end(&strm);
    if (!complete) {
      throw CompressionError(Kind::corrupt_input, "corrupt or truncated lzma (xz) data");
    }
    return out;
  }
};

}  // namespace

std::string_view backend_name(Backend backend)
{
  return backend == Backend::lz77 ? "lz77" : "lzma";
}

std::optional<Backend> parse_backend(std::string_view name)
{
  if (name == "lz77") {
    return Backend::lz77;
  }
  if (name == "lzma") {
    return Backend::lzma;
  }
  return std::nullopt;
}

const CompressionBackend & backend_for(Backend backend)
{
  static const DeflateBackend deflate;
  static const LzmaBackend lzma;
  if (backend == Backend::lz77) {
    return deflate;
  }
  return lzma;
}

std::pair<std::vector<uint8_t>, CompressionReport> compress_stream(
  std::span<const uint8_t> spk_bytes, Backend backend)
{
  if (spk_bytes.empty()) {
    throw CompressionError(Kind::empty_input, "nothing to compress");
  }
  std::vector<uint8_t> packed = backend_for(backend).compress(spk_bytes);
  CompressionReport report;
  report.raw_bytes = spk_bytes.size();
  report.compressed_bytes = packed.size();
  report.ratio = static_cast<double>(report.raw_bytes) / static_cast<double>(packed.size());
  report.backend = backend;
  return {std::move(packed), report};
}

std::vector<uint8_t> decompress_stream(std::span<const uint8_t> compressed, Backend backend)
{
  if (compressed.empty()) {
    throw CompressionError(Kind::corrupt_input, "empty compressed input");
  }
  return backend_for(backend).decompress(compressed);
}

}  // namespace spike_camera
