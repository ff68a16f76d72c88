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

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spike_camera/encoder.hpp"
#include "spike_camera/metrics.hpp"

using namespace spike_camera;

TEST(metrics, mse_examples)
{
  const GrayFrame a(4, 4, 255, 0);
  const GrayFrame b(4, 4, 255, 255);
  EXPECT_DOUBLE_EQ(mse(a, a), 0.0);
  EXPECT_DOUBLE_EQ(mse(a, b), 65025.0);
  EXPECT_DOUBLE_EQ(mse(GrayFrame(4, 4, 255, 10), GrayFrame(4, 4, 255, 11)), 1.0);
  EXPECT_THROW(mse(a, GrayFrame(4, 5)), std::invalid_argument);
}

TEST(metrics, psnr_examples)
{
  const GrayFrame a(4, 4, 255, 0);
  EXPECT_TRUE(std::isinf(psnr(a, a, 255)));
  EXPECT_EQ(psnr(a, a, 255), kInfinitePsnr);
  EXPECT_NEAR(psnr(a, GrayFrame(4, 4, 255, 255), 255), 0.0, 1e-12);
  EXPECT_NEAR(psnr(GrayFrame(4, 4, 255, 3), GrayFrame(4, 4, 255, 4), 255), 48.13, 0.01);
  EXPECT_NEAR(psnr(GrayFrame(4, 4, 255, 3), GrayFrame(4, 4, 255, 4), 255), 20 * std::log10(255.0), 1e-9);
  EXPECT_THROW(psnr(a, GrayFrame(3, 4), 255), std::invalid_argument);
  EXPECT_THROW(psnr(a, a, 0.5), std::invalid_argument);
}

TEST(metrics, property_psnr_decreases_with_mse)
{
  double previous = kInfinitePsnr;
  for (double m = 0.01; m < 70000; m *= 1.7) {
    const double p = psnr_from_mse(m, 255);
    ASSERT_LT(p, previous);
    previous = p;
  }
}

TEST(metrics, stream_stats_examples)
{
  SpikeStream silent(3, 3, 256);
  for (int i = 0; i < 5; ++i) {
    silent.add_plane();
  }
  const StreamStats s0 = stream_stats(silent);
  EXPECT_EQ(s0.total_spikes, 0u);
  EXPECT_EQ(s0.rate_max, 0.0);
  EXPECT_EQ(s0.plane_density, std::vector<double>(5, 0.0));

  const std::vector<GrayFrame> frames(256, GrayFrame(4, 4, 255, 64));
  const auto [stream, report] = encode_sequence(frames, {256, 1});
  const StreamStats s = stream_stats(stream);
  EXPECT_EQ(s.total_spikes, 64u * 16u);
  EXPECT_EQ(s.total_spikes, report.total_spikes);
  for (const auto n : s.spikes_per_pixel) {
    EXPECT_EQ(n, 64u);
  }
  EXPECT_DOUBLE_EQ(s.rate_min, 0.25);
  EXPECT_DOUBLE_EQ(s.rate_max, 0.25);
  EXPECT_DOUBLE_EQ(s.rate_mean, 0.25);

  SpikeStream full(5, 2, 1);
  for (int i = 0; i < 7; ++i) {
    BitPlane & p = full.add_plane();
    for (size_t q = 0; q < p.pixel_count(); ++q) {
      p.set(q, true);
    }
  }
  const StreamStats s1 = stream_stats(full);
  EXPECT_DOUBLE_EQ(s1.rate_min, 1.0);
  EXPECT_DOUBLE_EQ(s1.rate_max, 1.0);
  EXPECT_EQ(s1.plane_density, std::vector<double>(7, 1.0));

  EXPECT_EQ(stream_stats(SpikeStream(2, 2, 4)).total_spikes, 0u);
}

TEST(metrics, property_stats_agree_with_encoder)
{
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GrayFrame> frames;
    for (int i = 0; i < 30; ++i) {
      GrayFrame f(6, 5, 255);
      for (auto & v : f.values) {
        v = rng() % 256;
      }
      frames.push_back(f);
    }
    const auto [stream, report] = encode_sequence(frames, {1 + static_cast<uint32_t>(rng() % 300), 2});
    const StreamStats s = stream_stats(stream);
    ASSERT_EQ(s.total_spikes, report.total_spikes);
    for (const double r : {s.rate_min, s.rate_max, s.rate_mean}) {
      ASSERT_GE(r, 0.0);
      ASSERT_LE(r, 1.0);
    }
  }
}

TEST(metrics, property_rate_follows_intensity_gradient)
{
  GrayFrame gradient(256, 1, 255);
  for (uint32_t x = 0; x < 256; ++x) {
    gradient.values[x] = x;
  }
  const std::vector<GrayFrame> frames(1000, gradient);
  const StreamStats s = stream_stats(encode_sequence(frames, {256, 1}).first);
  for (size_t x = 1; x < 256; ++x) {
    ASSERT_LE(s.spikes_per_pixel[x - 1], s.spikes_per_pixel[x]);
  }
}

TEST(metrics, quality_report_format)
{
  const std::vector<GrayFrame> ref{GrayFrame(2, 2, 255, 10), GrayFrame(2, 2, 255, 10)};
  const std::vector<GrayFrame> rec{GrayFrame(2, 2, 255, 10), GrayFrame(2, 2, 255, 12)};
  const QualityReport r = compare_sequences(rec, ref);
  EXPECT_DOUBLE_EQ(r.peak, 255.0);
  ASSERT_EQ(r.frames.size(), 2u);
  EXPECT_TRUE(std::isinf(r.frames[0].psnr));
  EXPECT_DOUBLE_EQ(r.frames[1].mse, 4.0);
  EXPECT_DOUBLE_EQ(r.mse, 2.0);

  std::istringstream lines(format_quality_report(r));
  std::string line;
  std::vector<nlohmann::json> records;
  while (std::getline(lines, line)) {
    records.push_back(nlohmann::json::parse(line));
  }
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0]["psnr"], "inf");
  EXPECT_EQ(records[1]["frame"], 1);
  EXPECT_DOUBLE_EQ(records[2]["aggregate"]["mse"].get<double>(), 2.0);

  EXPECT_DOUBLE_EQ(compare_sequences(rec, ref, 1023.0).peak, 1023.0);
  EXPECT_THROW(compare_sequences(std::vector<GrayFrame>{}, ref), std::invalid_argument);
}
