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

#ifndef SPIKE_CAMERA_VIDEO_IO_HPP
#define SPIKE_CAMERA_VIDEO_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spike_camera/spike_core.hpp"

namespace spike_camera
{
// Every .pgm/.ppm/.pnm file in a directory, in lexicographic filename order.
struct DirectorySource
{
  std::filesystem::path dir;
};

// Explicit list, used in the given order.
struct FileListSource
{
  std::vector<std::filesystem::path> files;
};

// Headerless planar 8-bit grayscale, width * height bytes per frame.
struct RawSource
{
  std::filesystem::path file;
  uint32_t width{0};
  uint32_t height{0};
};

using FrameSource = std::variant<DirectorySource, FileListSource, RawSource>;

// Loads and validates a frame sequence. Color (P6) inputs go through
// luma_convert. Throws IoError naming the offending file on unreadable or
// malformed input and on dimension mismatch.
std::vector<GrayFrame> load_frames(const FrameSource & source);

// Decodes a binary P5 or P6 image; locator is only used in error messages.
GrayFrame decode_netpbm(std::span<const uint8_t> bytes, const std::string & locator);
GrayFrame load_netpbm(const std::filesystem::path & path);

enum class PgmDepth { eight = 8, sixteen = 16 };

// P5 with maxval 255 (one byte per sample) or 65535 (two bytes, big-endian).
// Throws std::invalid_argument if a value exceeds the depth.
std::vector<uint8_t> encode_pgm(const GrayFrame & frame, PgmDepth depth = PgmDepth::eight);
void save_frame(
  const GrayFrame & frame, const std::filesystem::path & path, PgmDepth depth = PgmDepth::eight);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_VIDEO_IO_HPP
