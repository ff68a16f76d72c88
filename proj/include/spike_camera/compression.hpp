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

#ifndef SPIKE_CAMERA_COMPRESSION_HPP
#define SPIKE_CAMERA_COMPRESSION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spike_camera
{
enum class Backend { lz77, lzma };

std::string_view backend_name(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

class CompressionError : public std::runtime_error
{
public:
  enum class Kind { empty_input, corrupt_input, backend_failure };

  CompressionError(Kind kind, const std::string & what) : std::runtime_error(what), kind_(kind)
  {
  }
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// Lossless byte-sequence codec. Implementations must satisfy
// decompress(compress(x)) == x and reject truncated or corrupted input.
class CompressionBackend
{
public:
  virtual ~CompressionBackend() = default;
  virtual Backend id() const = 0;
  virtual std::vector<uint8_t> compress(std::span<const uint8_t> raw) const = 0;
  virtual std::vector<uint8_t> decompress(std::span<const uint8_t> packed) const = 0;
};

// lz77: DEFLATE (LZ77 + Huffman) in a zlib wrapper, level 9.
// lzma: LZMA2 in an .xz container with CRC64, preset 6.
const CompressionBackend & backend_for(Backend backend);

struct CompressionReport
{
  uint64_t raw_bytes{0};
  uint64_t compressed_bytes{0};
  double ratio{0.0};  // raw / compressed
  Backend backend{Backend::lzma};
};

std::pair<std::vector<uint8_t>, CompressionReport> compress_stream(
  std::span<const uint8_t> spk_bytes, Backend backend);
std::vector<uint8_t> decompress_stream(std::span<const uint8_t> compressed, Backend backend);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_COMPRESSION_HPP
