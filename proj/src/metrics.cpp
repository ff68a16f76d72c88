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

#include "spike_camera/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace spike_camera
{
namespace
{
nlohmann::json psnr_json(double v)
{
  return std::isinf(v) ? nlohmann::json("inf") : nlohmann::json(v);
}
}  // namespace

double mse(const GrayFrame & a, const GrayFrame & b)
{
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument(
      "frame size mismatch: " + std::to_string(a.width) + "x" + std::to_string(a.height) +
      " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
  }
  if (a.values.empty()) {
    return 0.0;
  }
  double acc = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    const double d = static_cast<double>(a.values[i]) - static_cast<double>(b.values[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(a.values.size());
}

double psnr_from_mse(double m, double peak)
{
  if (m <= 0.0) {
    return kInfinitePsnr;
  }
  return 10.0 * std::log10(peak * peak / m);
}

double psnr(const GrayFrame & a, const GrayFrame & b, double peak)
{
  if (peak < 1.0) {
    throw std::invalid_argument("psnr peak must be at least 1");
  }
  return psnr_from_mse(mse(a, b), peak);
}

QualityReport compare_sequences(
  std::span<const GrayFrame> recon, std::span<const GrayFrame> ref, std::optional<double> peak)
{
  if (recon.size() != ref.size()) {
    throw std::invalid_argument(
      "sequence length mismatch: " + std::to_string(recon.size()) + " reconstructed vs " +
      std::to_string(ref.size()) + " reference frames");
  }
  QualityReport report;
  report.peak = peak.value_or(ref.empty() ? 255.0 : static_cast<double>(ref.front().bit_depth));
  if (report.peak < 1.0) {
    throw std::invalid_argument("psnr peak must be at least 1");
  }
  double total = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    FrameQuality q;
    q.index = i;
    q.mse = mse(recon[i], ref[i]);
    q.psnr = psnr_from_mse(q.mse, report.peak);
    total += q.mse;
    report.frames.push_back(q);
  }
  report.mse = ref.empty() ? 0.0 : total / static_cast<double>(ref.size());
  report.psnr = psnr_from_mse(report.mse, report.peak);
  return report;
}

std::string format_quality_report(const QualityReport & report)
{
  std::string out;
  for (const FrameQuality & q : report.frames) {
    const nlohmann::json rec = {{"frame", q.index}, {"mse", q.mse}, {"psnr", psnr_json(q.psnr)}};
    out += rec.dump() + "\n";
  }
  const nlohmann::json footer = {
    {"aggregate",
     {{"frames", report.frames.size()},
      {"peak", report.peak},
      {"mse", report.mse},
      {"psnr", psnr_json(report.psnr)}}}};
  out += footer.dump() + "\n";
  return out;
}

StreamStats stream_stats(const SpikeStream & stream)
{
  StreamStats s;
  const size_t pixels = stream.header().pixel_count();
  s.moments = stream.moment_count();
  s.spikes_per_pixel.assign(pixels, 0);
  s.plane_density.reserve(s.moments);
  for (const BitPlane & plane : stream.planes()) {
    const auto bytes = plane.bytes();
    uint64_t fired = 0;
    for (size_t i = 0; i < bytes.size(); ++i) {
      unsigned b = bytes[i];
      while (b != 0) {
        ++s.spikes_per_pixel[(i << 3) + static_cast<size_t>(std::countr_zero(b))];
        ++fired;
        b &= b - 1;
      }
    }
    s.total_spikes += fired;
    s.plane_density.push_back(static_cast<double>(fired) / static_cast<double>(pixels));
  }
  if (s.moments > 0) {
    const auto [lo, hi] = std::minmax_element(s.spikes_per_pixel.begin(), s.spikes_per_pixel.end());
    const auto T = static_cast<double>(s.moments);
    s.rate_min = static_cast<double>(*lo) / T;
    s.rate_max = static_cast<double>(*hi) / T;
    s.rate_mean = static_cast<double>(s.total_spikes) / (T * static_cast<double>(pixels));
  }
  return s;
}

std::string format_stream_stats(const StreamStats & stats, bool with_series)
{
  nlohmann::json j = {
    {"moments", stats.moments},
    {"pixels", stats.spikes_per_pixel.size()},
    {"total_spikes", stats.total_spikes},
    {"rate_min", stats.rate_min},
    {"rate_max", stats.rate_max},
    {"rate_mean", stats.rate_mean}};
  if (with_series) {
    j["plane_density"] = stats.plane_density;
  }
  return j.dump() + "\n";
}

}  // namespace spike_camera
