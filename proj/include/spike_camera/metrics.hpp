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

#ifndef SPIKE_CAMERA_METRICS_HPP
#define SPIKE_CAMERA_METRICS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spike_camera/spike_core.hpp"

namespace spike_camera
{
// PSNR of identical frames.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

// Both throw std::invalid_argument on dimension mismatch.
double mse(const GrayFrame & a, const GrayFrame & b);
double psnr(const GrayFrame & a, const GrayFrame & b, double peak);
double psnr_from_mse(double mse, double peak);

struct FrameQuality
{
  size_t index{0};
  double mse{0.0};
  double psnr{kInfinitePsnr};
};

struct QualityReport
{
  std::vector<FrameQuality> frames;
  double peak{255.0};
  double mse{0.0};  // mean of per-frame mse
  double psnr{kInfinitePsnr};  // from the aggregate mse
};

// Peak defaults to the first reference frame's bit_depth.
QualityReport compare_sequences(
  std::span<const GrayFrame> recon, std::span<const GrayFrame> ref,
  std::optional<double> peak = std::nullopt);

// One JSON record per frame, then a {"aggregate": ...} footer line.
// Infinite PSNR is written as the string "inf".
std::string format_quality_report(const QualityReport & report);

struct StreamStats
{
  uint64_t total_spikes{0};
  moment_t moments{0};
  std::vector<uint64_t> spikes_per_pixel;
  double rate_min{0.0};  // spikes per moment
  double rate_max{0.0};
  double rate_mean{0.0};
  std::vector<double> plane_density;  // fraction of pixels firing, per moment
};

StreamStats stream_stats(const SpikeStream & stream);
std::string format_stream_stats(const StreamStats & stats, bool with_series = false);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_METRICS_HPP
