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

#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "spike_camera/atomic_file.hpp"
#include "spike_camera/codec.hpp"
#include "spike_camera/compression.hpp"
#include "spike_camera/decoder.hpp"
#include "spike_camera/encoder.hpp"
#include "spike_camera/metrics.hpp"
#include "spike_camera/video_io.hpp"

namespace spk_cli
{
namespace sc = spike_camera;
namespace fs = std::filesystem;

namespace
{
constexpr uint32_t kU32Max = std::numeric_limits<uint32_t>::max();

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct EncodeArgs
{
  std::string frames_dir;
  std::string raw_file;
  uint32_t width{0};
  uint32_t height{0};
  uint32_t omega{256};
  uint32_t repeat{1};
  std::string out;
  bool pixel_major{false};
};

struct DecodeArgs
{
  std::string in;
  std::string method;
  uint32_t window{256};
  uint32_t contrast{256};
  uint64_t at{0};
  uint64_t every{0};
  uint64_t start{1};
  std::string out_dir;
  int depth{8};
  std::vector<uint32_t> sweep;
};

struct CompressArgs
{
  std::string in;
  std::string out;
  std::string backend{"lzma"};
  bool pixel_major{false};
};

struct StatsArgs
{
  std::string in;
  bool series{false};
};

struct MetricsArgs
{
  std::string recon;
  std::string ref;
  std::optional<double> peak;
};

sc::SpikeStream load_stream(const std::string & path)
{
  const std::vector<uint8_t> bytes = sc::read_file(path);
  try {
    return sc::decode_spk(bytes);
  } catch (const sc::SpkFormatError & e) {
    throw sc::SpkFormatError(e.kind(), path + ": " + e.what());
  }
}

int run_encode(const EncodeArgs & a, std::ostream & out)
{
  if (a.frames_dir.empty() == a.raw_file.empty()) {
    throw UsageError("encode: exactly one of --frames or --raw is required");
  }
  std::vector<sc::GrayFrame> frames;
  if (!a.frames_dir.empty()) {
    frames = sc::load_frames(sc::DirectorySource{a.frames_dir});
  } else {
    if (a.width == 0 || a.height == 0) {
      throw UsageError("encode: --raw needs --width and --height");
    }
    frames = sc::load_frames(sc::RawSource{a.raw_file, a.width, a.height});
  }
  if (frames.empty()) {
    throw std::runtime_error("no input frames");
  }
  sc::EncoderConfig config;
  config.omega = a.omega;
  config.repeat = a.repeat;
  const auto [stream, report] = sc::encode_sequence(frames, config);
  const auto order = a.pixel_major ? sc::PlaneOrder::pixel_major : sc::PlaneOrder::moment_major;
  const std::vector<uint8_t> bytes = sc::encode_spk(stream, order);
  sc::write_file_atomic(a.out, bytes);

  const nlohmann::json j = {
    {"out", a.out},
    {"width", stream.width()},
    {"height", stream.height()},
    {"omega", stream.omega()},
    {"moments", stream.moment_count()},
    {"bytes", bytes.size()},
    {"total_spikes", report.total_spikes},
    {"spikes_per_pixel_min", report.spikes_per_pixel_min},
    {"spikes_per_pixel_max", report.spikes_per_pixel_max},
    {"spikes_per_pixel_mean", report.spikes_per_pixel_mean},
    {"overflow_moments", report.overflow_moments}};
  out << j.dump() << "\n";
  return 0;
}

std::string frame_name(const std::string & method, std::optional<uint32_t> window, uint64_t t)
{
  std::ostringstream name;
  name << method;
  if (window) {
    name << "_w" << *window;
  }
  name << "_t" << std::setw(8) << std::setfill('0') << t << ".pgm";
  return name.str();
}

int run_decode(const DecodeArgs & a, std::ostream & out)
{
  if ((a.at == 0) == (a.every == 0)) {
    throw UsageError("decode: exactly one of --at or --every is required");
  }
  if (!a.sweep.empty() && a.method != "tfp") {
    throw UsageError("decode: --sweep only applies to --method tfp");
  }
  const sc::SpikeStream stream = load_stream(a.in);
  const uint64_t start = a.at != 0 ? a.at : a.start;
  const uint64_t stride = a.at != 0 ? std::max<uint64_t>(1, stream.moment_count()) : a.every;
  if (start > stream.moment_count()) {
    throw std::out_of_range(
      "moment " + std::to_string(start) + " beyond stream end (" +
      std::to_string(stream.moment_count()) + " moments)");
  }
  const auto depth = a.depth == 16 ? sc::PgmDepth::sixteen : sc::PgmDepth::eight;
  fs::create_directories(a.out_dir);

  const auto emit = [&](const sc::DecodeParams & params, std::optional<uint32_t> window) {
    const std::vector<sc::GrayFrame> frames = sc::reconstruct_series(stream, params, start, stride);
    for (size_t i = 0; i < frames.size(); ++i) {
      const uint64_t t = start + i * stride;
      const fs::path path = fs::path(a.out_dir) / frame_name(a.method, window, t);
      if (depth == sc::PgmDepth::eight && frames[i].max_value() > 255) {
        throw std::runtime_error(
          path.string() + ": decoded values exceed 255, use --depth 16");
      }
      sc::save_frame(frames[i], path, depth);
      out << path.string() << "\n";
    }
  };

  sc::DecodeParams params;
  params.method = a.method == "tfl" ? sc::Method::tfl : sc::Method::tfp;
  params.window = a.window;
  params.contrast = a.contrast;
  if (a.sweep.empty()) {
    emit(params, std::nullopt);
  } else {
    for (const uint32_t w : a.sweep) {
      params.window = w;
      emit(params, w);
    }
  }
  return 0;
}

int run_compress(const CompressArgs & a, std::ostream & out)
{
  const sc::Backend backend = *sc::parse_backend(a.backend);
  std::vector<uint8_t> raw = sc::read_file(a.in);
  if (a.pixel_major) {
    raw = sc::encode_spk(sc::decode_spk(raw), sc::PlaneOrder::pixel_major);
  }
  const auto [packed, report] = sc::compress_stream(raw, backend);
  sc::write_file_atomic(a.out, packed);
  const nlohmann::json j = {
    {"out", a.out},
    {"backend", sc::backend_name(report.backend)},
    {"raw_bytes", report.raw_bytes},
    {"compressed_bytes", report.compressed_bytes},
    {"ratio", report.ratio}};
  out << j.dump() << "\n";
  return 0;
}

int run_decompress(const CompressArgs & a, std::ostream & out)
{
  const sc::Backend backend = *sc::parse_backend(a.backend);
  const std::vector<uint8_t> raw = sc::decompress_stream(sc::read_file(a.in), backend);
  sc::write_file_atomic(a.out, raw);
  const nlohmann::json j = {
    {"out", a.out}, {"backend", sc::backend_name(backend)}, {"bytes", raw.size()}};
  out << j.dump() << "\n";
  return 0;
}

int run_stats(const StatsArgs & a, std::ostream & out)
{
  out << sc::format_stream_stats(sc::stream_stats(load_stream(a.in)), a.series);
  return 0;
}

int run_metrics(const MetricsArgs & a, std::ostream & out)
{
  const auto recon = sc::load_frames(sc::DirectorySource{a.recon});
  const auto ref = sc::load_frames(sc::DirectorySource{a.ref});
  out << sc::format_quality_report(sc::compare_sequences(recon, ref, a.peak));
  return 0;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Spike camera simulator: encode video to spike streams and decode textures", "spk"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto * encode = app.add_subcommand("encode", "Encode a frame sequence into an SPK stream");
  auto * frames_opt =
    encode->add_option("--frames", enc.frames_dir, "Directory of PGM/PPM frames (sorted by name)");
  auto * raw_opt = encode->add_option("--raw", enc.raw_file, "Raw planar 8-bit grayscale file");
  frames_opt->excludes(raw_opt);
  auto * width_opt =
    encode->add_option("--width", enc.width, "Raw frame width")->check(CLI::Range(1u, kU32Max));
  auto * height_opt =
    encode->add_option("--height", enc.height, "Raw frame height")->check(CLI::Range(1u, kU32Max));
  width_opt->needs(raw_opt);
  height_opt->needs(raw_opt);
  encode->add_option("--omega", enc.omega, "Dispatch threshold")
    ->capture_default_str()
    ->check(CLI::Range(1u, kU32Max));
  encode->add_option("--repeat", enc.repeat, "Moments per input frame")
    ->capture_default_str()
    ->check(CLI::Range(1u, kU32Max));
  encode->add_option("--out", enc.out, "Output SPK file")->required();
  encode->add_flag("--pixel-major", enc.pixel_major, "Store the payload pixel-major");

  DecodeArgs dec;
  auto * decode = app.add_subcommand("decode", "Reconstruct texture frames from an SPK stream");
  decode->add_option("--in", dec.in, "Input SPK file")->required();
  decode->add_option("--method", dec.method, "tfl or tfp")
    ->required()
    ->check(CLI::IsMember({"tfl", "tfp"}));
  decode->add_option("--window", dec.window, "TFP window in moments")
    ->capture_default_str()
    ->check(CLI::Range(1u, kU32Max));
  decode->add_option("--contrast", dec.contrast, "Output contrast levels C")
    ->capture_default_str()
    ->check(CLI::Range(2u, kU32Max));
  auto * at_opt = decode->add_option("--at", dec.at, "Decode the single moment T (1-indexed)")
                    ->check(CLI::Range(uint64_t{1}, std::numeric_limits<uint64_t>::max()));
  auto * every_opt = decode->add_option("--every", dec.every, "Decode every K moments")
                       ->check(CLI::Range(uint64_t{1}, std::numeric_limits<uint64_t>::max()));
  auto * start_opt = decode->add_option("--start", dec.start, "First moment for --every")
                       ->capture_default_str()
                       ->check(CLI::Range(uint64_t{1}, std::numeric_limits<uint64_t>::max()));
  at_opt->excludes(every_opt);
  start_opt->needs(every_opt);
  decode->add_option("--out-dir", dec.out_dir, "Directory for PGM output")->required();
  decode->add_option("--depth", dec.depth, "PGM sample depth")
    ->capture_default_str()
    ->check(CLI::IsMember({8, 16}));
  decode->add_option("--sweep", dec.sweep, "Comma-separated TFP windows, e.g. 32,64,128,256")
    ->delimiter(',')
    ->check(CLI::Range(1u, kU32Max));

  CompressArgs comp;
  auto * compress = app.add_subcommand("compress", "Losslessly compress an SPK file");
  compress->add_option("--in", comp.in, "Input SPK file")->required();
  compress->add_option("--out", comp.out, "Compressed output")->required();
  compress->add_option("--backend", comp.backend, "lz77 or lzma")
    ->capture_default_str()
    ->check(CLI::IsMember({"lz77", "lzma"}));
  compress->add_flag("--pixel-major", comp.pixel_major, "Transpose to pixel-major before compressing");

  CompressArgs decomp;
  auto * decompress = app.add_subcommand("decompress", "Restore an SPK file");
  decompress->add_option("--in", decomp.in, "Compressed input")->required();
  decompress->add_option("--out", decomp.out, "Output SPK file")->required();
  decompress->add_option("--backend", decomp.backend, "lz77 or lzma")
    ->capture_default_str()
    ->check(CLI::IsMember({"lz77", "lzma"}));

  StatsArgs st;
  auto * stats = app.add_subcommand("stats", "Summarize spike counts and rates");
  stats->add_option("--in", st.in, "Input SPK file")->required();
  stats->add_flag("--series", st.series, "Include the per-moment plane density");

  MetricsArgs met;
  auto * metrics = app.add_subcommand("metrics", "MSE/PSNR of reconstructions against references");
  metrics->add_option("--recon", met.recon, "Directory of reconstructed PGM frames")->required();
  metrics->add_option("--ref", met.ref, "Directory of reference PGM frames")->required();
  metrics->add_option("--peak", met.peak, "PSNR peak (default: reference maxval)")
    ->check(CLI::Range(1.0, 1e12));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*encode) {
      return run_encode(enc, out);
    }
    if (*decode) {
      return run_decode(dec, out);
    }
    if (*compress) {
      return run_compress(comp, out);
    }
    if (*decompress) {
      return run_decompress(decomp, out);
    }
    if (*stats) {
      return run_stats(st, out);
    }
    return run_metrics(met, out);
  } catch (const UsageError & e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spk_cli
