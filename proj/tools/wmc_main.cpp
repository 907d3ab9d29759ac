// Copyright 2026 The wmcodec Authors. All Rights Reserved.
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wmc/codec.hpp"
#include "wmc/eval.hpp"
#include "wmc/video_io.hpp"

namespace {

using namespace wmc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct InputOptions {
  std::string path;
  std::string format = "auto";
  int width = 0;
  int height = 0;
  int max_frames = -1;
};

void add_input_options(CLI::App* cmd, InputOptions* in) {
  cmd->add_option("--in", in->path, "input sequence (y4m, raw yuv420, pgm list)")
      ->required();
  cmd->add_option("--format", in->format,
                  "input format: auto, y4m, yuv420, pgmlist")
      ->check(CLI::IsMember({"auto", "y4m", "yuv420", "pgmlist"}));
  cmd->add_option("--width", in->width, "frame width (raw yuv420 only)");
  cmd->add_option("--height", in->height, "frame height (raw yuv420 only)");
  cmd->add_option("--frames", in->max_frames, "cap on frames to load");
}

SequenceSource make_source(const InputOptions& in) {
  SequenceSource src;
  src.path = in.path;
  src.width = in.width;
  src.height = in.height;
  std::string fmt = in.format;
  if (fmt == "auto") {
    const std::string ext = std::filesystem::path(in.path).extension().string();
    if (ext == ".y4m") {
      fmt = "y4m";
    } else if (ext == ".yuv" || ext == ".raw") {
      fmt = "yuv420";
    } else if (ext == ".txt" || ext == ".list") {
      fmt = "pgmlist";
    } else {
      throw UsageError("cannot infer format from '" + ext +
                       "'; pass --format");
    }
  }
  if (fmt == "y4m") {
    src.format = SourceFormat::kY4m;
  } else if (fmt == "yuv420") {
    src.format = SourceFormat::kRawYuv420;
  } else {
    src.format = SourceFormat::kPgmList;
  }
  return src;
}

struct CodecOptions {
  int block_size = 8;
  int precision = 2;
  int range = 15;
  double threshold = 0.0;
  int extra_levels = 2;
};

void add_codec_options(CLI::App* cmd, CodecOptions* opt) {
  cmd->add_option("--block", opt->block_size, "block size in subband samples")
      ->check(CLI::IsMember({8, 16}));
  cmd->add_option("--precision", opt->precision,
                  "subpixel precision h (grid 1/2^h pel)")
      ->check(CLI::Range(0, 3));
  cmd->add_option("--range", opt->range, "search range in pixels")
      ->check(CLI::Range(1, 255));
  cmd->add_option("--threshold", opt->threshold, "quantizer threshold T >= 0");
  cmd->add_option("--extra-levels", opt->extra_levels,
                  "extra spatial decomposition of the residual approximation")
      ->check(CLI::Range(0, 8));
}

CodecConfig make_config(const CodecOptions& opt) {
  CodecConfig cfg;
  cfg.block_size = opt.block_size;
  cfg.precision = opt.precision;
  cfg.search_range = opt.range;
  cfg.threshold = static_cast<float>(opt.threshold);
  cfg.extra_spatial_levels = opt.extra_levels;
  cfg.validate();
  return cfg;
}

std::vector<std::uint8_t> read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

void write_binary(const std::string& path,
                  const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("write failed for " + path);
}

int run_encode(const InputOptions& in, const CodecOptions& opt,
               const std::string& out_path) {
  const std::vector<Frame> frames = load_frames(make_source(in), in.max_frames);
  if (frames.empty()) throw UsageError("input contains no frames");
  const CodecConfig cfg = make_config(opt);
  const EncodedStream stream = encode_sequence(frames, cfg);
  const std::vector<std::uint8_t> bytes = serialize_stream(stream);
  write_binary(out_path, bytes);
  std::printf("encoded %zu frame(s), %dx%d, %zu bytes (%.4f bpp)\n",
              frames.size(), frames.front().cols(), frames.front().rows(),
              bytes.size(),
              8.0 * static_cast<double>(bytes.size()) /
                  (static_cast<double>(frames.front().size()) *
                   static_cast<double>(frames.size())));
  return kExitOk;
}

int run_decode(const std::string& in_path, const std::string& out_dir,
               const std::string& residual_dir) {
  const EncodedStream stream = parse_stream(read_binary(in_path));
  const std::vector<Frame> frames = decode_sequence(stream);
  std::filesystem::create_directories(out_dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.pgm", i);
    save_pgm(frames[i], (std::filesystem::path(out_dir) / name).string());
  }
  if (!residual_dir.empty()) {
    // Error images for the predicted frames, grey-offset for viewing.
    std::filesystem::create_directories(residual_dir);
    const int multiple = stream.config.pad_multiple();
    const int prows = ((stream.height + multiple - 1) / multiple) * multiple;
    const int pcols = ((stream.width + multiple - 1) / multiple) * multiple;
    for (std::size_t g = 0; g < stream.gops.size(); ++g) {
      if (stream.gops[g].type != 0) continue;
      const Frame residual =
          decode_gop_residual(stream.gops[g], stream.config, prows, pcols);
      char name[32];
      std::snprintf(name, sizeof name, "residual_%04zu.pgm", 2 * g + 1);
      save_pgm(residual,
               (std::filesystem::path(residual_dir) / name).string(), 128.0);
    }
  }
  std::printf("decoded %zu frame(s) into %s\n", frames.size(),
              out_dir.c_str());
  return kExitOk;
}

int run_shift(const std::string& in_path, double dx, double dy, int h_max,
              const std::string& out_path, bool check_oracle) {
  const Frame frame = load_pgm(in_path);
  if (frame.rows() % 2 != 0 || frame.cols() % 2 != 0) {
    throw DimensionError("shift demo needs even frame dimensions");
  }
  const DyadicShift shift = dyadic_approx2(dx, dy, h_max);
  const ShiftSpec spec = decompose_shift(shift);
  const SubbandSet bands = analyze_once(frame);
  const SubbandSet moved = apply_inband_shift(bands, spec);
  const Frame out = synthesize_once(moved);
  save_pgm(out, out_path);
  std::printf("shifted by (%g, %g) px via subbands (grid 1/%d)\n",
              shift.x.value(), shift.y.value(), 1 << h_max);
  if (check_oracle) {
    const int h = std::max(shift.x.level, shift.y.level);
    const Mat up = upsample_zero_detail(frame, h);
    const Mat moved_up =
        rotated(up, static_cast<int>(shift.y.num << (h - shift.y.level)),
                static_cast<int>(shift.x.num << (h - shift.x.level)));
    const Pyramid pyr = haar_forward(moved_up, h + 1, Padding::kNone);
    const SubbandSet expect{pyr.top, pyr.details.back().horiz,
                            pyr.details.back().vert, pyr.details.back().diag};
    double worst = std::max(
        std::max(max_abs_diff(moved.approx, expect.approx),
                 max_abs_diff(moved.horiz, expect.horiz)),
        std::max(max_abs_diff(moved.vert, expect.vert),
                 max_abs_diff(moved.diag, expect.diag)));
    std::printf("max deviation from upsample-shift-analyze reference: %.3e\n",
                worst);
  }
  return kExitOk;
}

int run_rd_sweep(const InputOptions& in, const CodecOptions& opt,
                 const std::string& thresholds_arg,
                 const std::string& baseline, const std::string& csv_path) {
  std::vector<double> thresholds;
  std::stringstream ss(thresholds_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    thresholds.push_back(std::stod(item));
  }
  if (thresholds.empty()) {
    throw UsageError("no thresholds given");
  }
  const std::vector<Frame> frames = load_frames(make_source(in), in.max_frames);
  CodecConfig cfg = make_config(opt);

  std::vector<RateDistortionPoint> points = rd_sweep(frames, cfg, thresholds);
  if (baseline == "band2band") {
    cfg.match_mode = MatchMode::kBandToBand;
    const std::vector<RateDistortionPoint> base =
        rd_sweep(frames, cfg, thresholds);
    points.insert(points.end(), base.begin(), base.end());
  }
  std::ofstream out(csv_path);
  if (!out) throw UsageError("cannot write " + csv_path);
  write_rd_csv(out, points);
  std::printf("wrote %zu sweep row(s) to %s\n", points.size(),
              csv_path.c_str());
  return kExitOk;
}

int run_psnr(const std::string& a_path, const std::string& b_path) {
  const double db = psnr(load_pgm(a_path), load_pgm(b_path));
  if (std::isinf(db)) {
    std::printf("PSNR: inf\n");
  } else {
    std::printf("PSNR: %.4f dB\n", db);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavelet-domain motion-compensated video codec"};
  app.require_subcommand(1);

  // encode
  auto* encode = app.add_subcommand("encode", "encode a sequence");
  InputOptions enc_in;
  CodecOptions enc_opt;
  std::string enc_out;
  add_input_options(encode, &enc_in);
  add_codec_options(encode, &enc_opt);
  encode->add_option("--out", enc_out, "output stream path")->required();

  // decode
  auto* decode = app.add_subcommand("decode", "decode a stream to PGM frames");
  std::string dec_in, dec_out, dec_res;
  decode->add_option("--in", dec_in, "input stream")->required();
  decode->add_option("--out", dec_out, "output directory")->required();
  decode->add_option("--residuals", dec_res,
                     "also dump per-GOP residual images here (+128 offset)");

  // shift
  auto* shift = app.add_subcommand(
      "shift", "translate a PGM image in the wavelet domain");
  std::string shift_in, shift_out;
  double shift_dx = 0.0, shift_dy = 0.0;
  int shift_hmax = 3;
  bool shift_oracle = false;
  shift->add_option("--in", shift_in, "input PGM")->required();
  shift->add_option("--dx", shift_dx, "horizontal shift in pixels")->required();
  shift->add_option("--dy", shift_dy, "vertical shift in pixels")->required();
  shift->add_option("--out", shift_out, "output PGM")->required();
  shift->add_option("--hmax", shift_hmax, "dyadic grid depth (1/2^h pel)")
      ->check(CLI::Range(0, 6));
  shift->add_flag("--oracle-check", shift_oracle,
                  "also report the deviation from the upsampling reference");

  // rd-sweep
  auto* sweep = app.add_subcommand("rd-sweep", "rate-distortion sweep to CSV");
  InputOptions sweep_in;
  CodecOptions sweep_opt;
  std::string sweep_thresholds, sweep_baseline = "none", sweep_csv;
  add_input_options(sweep, &sweep_in);
  add_codec_options(sweep, &sweep_opt);
  sweep->add_option("--thresholds", sweep_thresholds,
                    "comma-separated threshold list")
      ->required();
  sweep->add_option("--baseline", sweep_baseline,
                    "also sweep a baseline matcher: band2band or none")
      ->check(CLI::IsMember({"band2band", "none"}));
  sweep->add_option("--csv", sweep_csv, "output CSV path")->required();

  // psnr
  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR between two PGM images");
  std::string psnr_a, psnr_b;
  psnr_cmd->add_option("--a", psnr_a, "first image")->required();
  psnr_cmd->add_option("--b", psnr_b, "second image")->required();

  try {
    app.parse(argc, argv);
    if (*encode) return run_encode(enc_in, enc_opt, enc_out);
    if (*decode) return run_decode(dec_in, dec_out, dec_res);
    if (*shift) {
      return run_shift(shift_in, shift_dx, shift_dy, shift_hmax, shift_out,
                       shift_oracle);
    }
    if (*sweep) {
      return run_rd_sweep(sweep_in, sweep_opt, sweep_thresholds,
                          sweep_baseline, sweep_csv);
    }
    if (*psnr_cmd) return run_psnr(psnr_a, psnr_b);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
