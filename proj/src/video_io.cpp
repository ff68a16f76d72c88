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

#include "spike_camera/video_io.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string_view>

#include "spike_camera/atomic_file.hpp"
#include "spike_camera/encoder.hpp"
#include "spike_camera/errors.hpp"

namespace spike_camera
{
namespace
{
class HeaderReader
{
public:
  HeaderReader(std::span<const uint8_t> bytes, const std::string & locator)
  : bytes_(bytes), locator_(locator)
  {
  }

  void skip_space_and_comments()
  {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
          ++pos_;
        }
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  uint32_t number(std::string_view what)
  {
    skip_space_and_comments();
    uint64_t v = 0;
    size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFull) {
        fail(std::string(what) + " out of range");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      fail("missing " + std::string(what));
    }
    return static_cast<uint32_t>(v);
  }

  // exactly one whitespace byte separates maxval from the raster
  void end_of_header()
  {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      fail("missing whitespace after maxval");
    }
    ++pos_;
  }

  size_t pos() const { return pos_; }
  void advance(size_t n) { pos_ += n; }

  [[noreturn]] void fail(const std::string & why) const
  {
    throw IoError(locator_ + ": malformed netpbm header: " + why);
  }

private:
  std::span<const uint8_t> bytes_;
  const std::string & locator_;
  size_t pos_{0};
};

bool is_frame_file(const std::filesystem::path & p)
{
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

void check_same_size(const std::vector<GrayFrame> & frames, const std::string & locator)
{
  const GrayFrame & first = frames.front();
  const GrayFrame & last = frames.back();
  if (last.width != first.width || last.height != first.height) {
    throw IoError(
      locator + ": frame is " + std::to_string(last.width) + "x" + std::to_string(last.height) +
      ", sequence is " + std::to_string(first.width) + "x" + std::to_string(first.height));
  }
}

std::vector<GrayFrame> load_files(const std::vector<std::filesystem::path> & files)
{
  std::vector<GrayFrame> frames;
  frames.reserve(files.size());
  for (const auto & f : files) {
    frames.push_back(load_netpbm(f));
    check_same_size(frames, f.string());
  }
  return frames;
}

std::vector<GrayFrame> load_raw(const RawSource & src)
{
  const std::string locator = src.file.string();
  if (src.width == 0 || src.height == 0) {
    throw IoError(locator + ": raw geometry must be at least 1x1");
  }
  const std::vector<uint8_t> bytes = read_file(src.file);
  const size_t frame_bytes = static_cast<size_t>(src.width) * src.height;
  if (bytes.size() % frame_bytes != 0) {
    throw IoError(
      locator + ": size " + std::to_string(bytes.size()) + " is not a multiple of " +
      std::to_string(src.width) + "x" + std::to_string(src.height));
  }
  std::vector<GrayFrame> frames;
  frames.reserve(bytes.size() / frame_bytes);
  for (size_t off = 0; off < bytes.size(); off += frame_bytes) {
    GrayFrame f(src.width, src.height, 255);
    std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(off),
              bytes.begin() + static_cast<std::ptrdiff_t>(off + frame_bytes), f.values.begin());
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace

GrayFrame decode_netpbm(std::span<const uint8_t> bytes, const std::string & locator)
{
  HeaderReader reader(bytes, locator);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    reader.fail("expected binary P5 or P6 magic");
  }
  const bool color = bytes[1] == '6';
  reader.advance(2);
  const uint32_t width = reader.number("width");
  const uint32_t height = reader.number("height");
  const uint32_t maxval = reader.number("maxval");
  if (width == 0 || height == 0) {
    reader.fail("zero width or height");
  }
  if (maxval == 0 || maxval > 65535) {
    reader.fail("maxval must be in [1, 65535]");
  }
  reader.end_of_header();

  const size_t sample_bytes = maxval > 255 ? 2 : 1;
  const size_t channels = color ? 3 : 1;
  const size_t samples = static_cast<size_t>(width) * height * channels;
  const size_t raster = samples * sample_bytes;
  if (bytes.size() - reader.pos() < raster) {
    throw IoError(
      locator + ": truncated raster, expected " + std::to_string(raster) + " bytes, found " +
      std::to_string(bytes.size() - reader.pos()));
  }

  std::vector<uint16_t> values(samples);
  const uint8_t * data = bytes.data() + reader.pos();
  for (size_t i = 0; i < samples; ++i) {
    const uint16_t v = sample_bytes == 2
                         ? static_cast<uint16_t>((data[2 * i] << 8) | data[2 * i + 1])
                         : data[i];
    if (v > maxval) {
      throw IoError(locator + ": sample " + std::to_string(v) + " exceeds maxval");
    }
    values[i] = v;
  }

  if (color) {
    return luma_convert(RgbFrame{width, height, maxval, std::move(values)});
  }
  GrayFrame frame(width, height, maxval);
  std::copy(values.begin(), values.end(), frame.values.begin());
  return frame;
}

GrayFrame load_netpbm(const std::filesystem::path & path)
{
  const std::vector<uint8_t> bytes = read_file(path);
  return decode_netpbm(bytes, path.string());
}

std::vector<GrayFrame> load_frames(const FrameSource & source)
{
  if (const auto * dir = std::get_if<DirectorySource>(&source)) {
    std::error_code ec;
    std::filesystem::directory_iterator it(dir->dir, ec);
    if (ec) {
      throw IoError(dir->dir.string() + ": cannot list directory: " + ec.message());
    }
    std::vector<std::filesystem::path> files;
    for (const auto & entry : it) {
      if (entry.is_regular_file() && is_frame_file(entry.path())) {
        files.push_back(entry.path());
      }
    }
    if (files.empty()) {
      throw IoError(dir->dir.string() + ": no .pgm/.ppm/.pnm frames found");
    }
    std::sort(files.begin(), files.end(), [](const auto & a, const auto & b) {
      return a.filename().string() < b.filename().string();
    });
    return load_files(files);
  }
  if (const auto * list = std::get_if<FileListSource>(&source)) {
    return load_files(list->files);
  }
  return load_raw(std::get<RawSource>(source));
}

std::vector<uint8_t> encode_pgm(const GrayFrame & frame, PgmDepth depth)
{
  const uint32_t maxval = depth == PgmDepth::eight ? 255 : 65535;
  if (frame.values.size() != static_cast<size_t>(frame.width) * frame.height) {
    throw std::invalid_argument("frame buffer does not match its dimensions");
  }
  const std::string header = "P5\n" + std::to_string(frame.width) + " " +
                             std::to_string(frame.height) + "\n" + std::to_string(maxval) + "\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + frame.values.size() * (depth == PgmDepth::eight ? 1 : 2));
  for (const intensity_t v : frame.values) {
    if (v > maxval) {
      throw std::invalid_argument(
        "value " + std::to_string(v) + " exceeds " + std::to_string(static_cast<int>(depth)) +
        "-bit PGM range");
    }
    if (depth == PgmDepth::sixteen) {
      out.push_back(static_cast<uint8_t>(v >> 8));
    }
    out.push_back(static_cast<uint8_t>(v & 0xFF));
  }
  return out;
}

void save_frame(const GrayFrame & frame, const std::filesystem::path & path, PgmDepth depth)
{
  write_file_atomic(path, encode_pgm(frame, depth));
}

}  // namespace spike_camera
