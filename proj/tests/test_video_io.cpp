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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "spike_camera/atomic_file.hpp"
#include "spike_camera/errors.hpp"
#include "spike_camera/video_io.hpp"
#include "temp_dir.hpp"

using namespace spike_camera;

namespace
{
std::vector<uint8_t> pgm8(uint32_t w, uint32_t h, uint8_t fill)
{
  const std::string header = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), static_cast<size_t>(w) * h, fill);
  return bytes;
}

GrayFrame random_frame(std::mt19937 & rng, uint32_t w, uint32_t h, intensity_t depth)
{
  GrayFrame f(w, h, depth);
  for (auto & v : f.values) {
    v = rng() % (depth + 1);
  }
  return f;
}
}  // namespace

TEST(video_io, loads_directory_of_pgm)
{
  TempDir dir;
  for (int i = 0; i < 3; ++i) {
    write_bytes(dir / ("f" + std::to_string(i) + ".pgm"), pgm8(8, 8, 64));
  }
  write_text(dir / "notes.txt", "ignored");
  const auto frames = load_frames(DirectorySource{dir.path()});
  ASSERT_EQ(frames.size(), 3u);
  for (const auto & f : frames) {
    EXPECT_EQ(f.width, 8u);
    EXPECT_EQ(f.height, 8u);
    EXPECT_EQ(f.bit_depth, 255u);
    EXPECT_TRUE(std::all_of(f.values.begin(), f.values.end(), [](auto v) { return v == 64; }));
  }
}

TEST(video_io, directory_order_is_lexicographic)
{
  TempDir dir;
  const std::vector<std::string> names{"c.pgm", "a10.pgm", "b.pgm", "a2.pgm", "a1.pgm"};
  for (const auto & n : names) {
    write_bytes(dir / n, pgm8(1, 1, static_cast<uint8_t>(n[0] + n.size())));
  }
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  for (int rep = 0; rep < 2; ++rep) {
    const auto frames = load_frames(DirectorySource{dir.path()});
    ASSERT_EQ(frames.size(), names.size());
    for (size_t i = 0; i < sorted.size(); ++i) {
      EXPECT_EQ(frames[i].values[0], static_cast<intensity_t>(sorted[i][0] + sorted[i].size()));
    }
  }
}

TEST(video_io, parses_comments_and_color)
{
  TempDir dir;
  const std::string header = "P6 # color\n# another comment\n2 1\n255\n";
  std::vector<uint8_t> bytes(header.begin(), header.end());
  for (const uint8_t b : {255, 0, 0, 255, 255, 255}) {
    bytes.push_back(b);
  }
  write_bytes(dir / "rgb.ppm", bytes);
  const GrayFrame f = load_netpbm(dir / "rgb.ppm");
  EXPECT_EQ(f.values, (std::vector<intensity_t>{76, 255}));
}

TEST(video_io, raw_frames_by_size)
{
  TempDir dir;
  std::vector<uint8_t> raw(4 * 3 * 5);
  for (size_t i = 0; i < raw.size(); ++i) {
    raw[i] = static_cast<uint8_t>(i);
  }
  write_bytes(dir / "clip.raw", raw);
  const auto frames = load_frames(RawSource{dir / "clip.raw", 4, 3});
  ASSERT_EQ(frames.size(), 5u);
  EXPECT_EQ(frames[2].values.front(), 24u);
  EXPECT_EQ(frames[4].values.back(), 59u);

  EXPECT_THROW(load_frames(RawSource{dir / "clip.raw", 7, 1}), IoError);
  EXPECT_THROW(load_frames(RawSource{dir / "clip.raw", 0, 1}), IoError);
}

TEST(video_io, errors_name_the_file)
{
  TempDir dir;
  write_bytes(dir / "a.pgm", pgm8(4, 4, 1));
  write_bytes(dir / "b.pgm", pgm8(5, 4, 1));
  try {
    load_frames(DirectorySource{dir.path()});
    FAIL() << "dimension mismatch accepted";
  } catch (const IoError & e) {
    EXPECT_NE(std::string(e.what()).find("b.pgm"), std::string::npos);
  }

  auto truncated = pgm8(4, 4, 1);
  truncated.pop_back();
  write_bytes(dir / "short.pgm", truncated);
  try {
    load_netpbm(dir / "short.pgm");
    FAIL() << "truncated raster accepted";
  } catch (const IoError & e) {
    EXPECT_NE(std::string(e.what()).find("short.pgm"), std::string::npos);
  }

  write_text(dir / "ascii.pgm", "P2\n1 1\n255\n0\n");
  EXPECT_THROW(load_netpbm(dir / "ascii.pgm"), IoError);
  write_text(dir / "nomax.pgm", "P5\n1 1\n");
  EXPECT_THROW(load_netpbm(dir / "nomax.pgm"), IoError);
  write_text(dir / "over.pgm", "P5\n1 1\n10\n\x20");
  EXPECT_THROW(load_netpbm(dir / "over.pgm"), IoError);
  EXPECT_THROW(load_netpbm(dir / "missing.pgm"), IoError);

  TempDir empty;
  EXPECT_THROW(load_frames(DirectorySource{empty.path()}), IoError);
  EXPECT_THROW(load_frames(DirectorySource{empty / "nope"}), IoError);
}

TEST(video_io, save_zero_frame_layout)
{
  const auto bytes = encode_pgm(GrayFrame(4, 4, 255, 0));
  const std::string header = "P5\n4 4\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 16);
  EXPECT_TRUE(std::equal(header.begin(), header.end(), bytes.begin()));
  EXPECT_TRUE(std::all_of(bytes.begin() + header.size(), bytes.end(), [](auto b) { return b == 0; }));
}

TEST(video_io, sixteen_bit_is_big_endian)
{
  TempDir dir;
  GrayFrame f(2, 1, 65535);
  f.values = {300, 7};
  save_frame(f, dir / "wide.pgm", PgmDepth::sixteen);
  const auto bytes = read_file(dir / "wide.pgm");
  const std::string header = "P5\n2 1\n65535\n";
  ASSERT_EQ(bytes.size(), header.size() + 4);
  EXPECT_EQ(bytes[header.size()], 0x01);
  EXPECT_EQ(bytes[header.size() + 1], 0x2C);
  EXPECT_EQ(bytes[header.size() + 3], 0x07);
  EXPECT_EQ(load_netpbm(dir / "wide.pgm"), f);

  EXPECT_THROW(encode_pgm(f, PgmDepth::eight), std::invalid_argument);
}

TEST(video_io, property_save_load_round_trip)
{
  std::mt19937 rng(6);
  TempDir dir;
  for (int trial = 0; trial < 30; ++trial) {
    const bool wide = trial % 2;
    const GrayFrame f = random_frame(rng, 1 + rng() % 40, 1 + rng() % 40, wide ? 65535 : 255);
    const auto path = dir / ("r" + std::to_string(trial) + ".pgm");
    save_frame(f, path, wide ? PgmDepth::sixteen : PgmDepth::eight);
    ASSERT_EQ(load_frames(FileListSource{{path}}).front(), f);
  }
}

TEST(atomic_file, failed_write_leaves_no_file)
{
  TempDir dir;
  const auto target = dir / "missing_dir" / "out.pgm";
  EXPECT_THROW(save_frame(GrayFrame(2, 2), target), IoError);
  EXPECT_FALSE(std::filesystem::exists(target));

  // an invalid frame fails before anything touches the destination
  write_text(dir / "keep.pgm", "old");
  GrayFrame big(1, 1, 65535, 1000);
  EXPECT_THROW(save_frame(big, dir / "keep.pgm"), std::invalid_argument);
  EXPECT_EQ(read_file(dir / "keep.pgm").size(), 3u);
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()),
                          std::filesystem::directory_iterator()),
            1);
}
