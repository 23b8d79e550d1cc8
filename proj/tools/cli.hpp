/*
Copyright 2026 The VCMF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "vcmf/vcmf.hpp"

namespace vcmf::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kIoError = 3 };

namespace detail {

inline std::string format_bpp(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

// Writes E, M, C into a fresh sibling directory, then moves the files into
// place so a failure never leaves a partial set behind.
inline void export_atomically(const EmcBundle& emc, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path staging = dir.string() + ".partial";
  std::error_code ec;
  fs::remove_all(staging, ec);
  try {
    export_emc(emc, staging);
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create directory " + dir.string());
    for (const char* name : {"E.pgm", "M.pgm", "C.ppm"}) {
      fs::rename(staging / name, dir / name, ec);
      if (ec) throw Error(ErrorCode::kIo, "cannot move " + std::string(name) + " into place");
    }
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(staging, ec);
}

struct MetricsJob {
  std::string name;
  std::filesystem::path reference;
  std::filesystem::path decoded;
  std::filesystem::path stream;
};

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// One job per line: name,reference,decoded,stream (paths relative to the
// manifest). Blank lines, '#' comments and a "name,..." header are skipped.
inline std::vector<MetricsJob> read_manifest(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::vector<MetricsJob> jobs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line.rfind("name,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(trim(f));
    if (fields.size() != 4) {
      throw Error(ErrorCode::kInvalidArgument,
                  "manifest line " + std::to_string(line_no) + ": expected 4 fields");
    }
    const auto base = path.parent_path();
    jobs.push_back({fields[0], base / fields[1], base / fields[2], base / fields[3]});
  }
  return jobs;
}

inline MetricsRow run_metrics_job(const MetricsJob& job) {
  const RasterImage ref = load_image(job.reference);
  const RasterImage dec = load_image(job.decoded);
  const CodedImage coded = unpack(read_file(job.stream));
  if (coded.width != ref.width() || coded.height != ref.height()) {
    throw Error(ErrorCode::kShapeMismatch, job.name + ": stream size differs from reference");
  }
  return {job.name, bpp(coded.packed_size(), ref.width(), ref.height()), psnr(ref, dec),
          ssim(ref, dec), std::nullopt};
}

}  // namespace detail

// Runs the command line `args` (without the program name). Reports go to
// `out`, diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-layer edge/reference-pixel image codec", "vcmf"};
  app.require_subcommand(1);

  EncoderConfig enc_cfg;
  DecoderConfig dec_cfg;
  auto add_format_options = [&](CLI::App* cmd) {
    cmd->add_option("--offset-d", enc_cfg.sampling.offset_d, "Reference pixel offset")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-segment-len", enc_cfg.sampling.min_segment_len,
                    "Shortest sampled line segment")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--collision-search", enc_cfg.sampling.collision_search,
                    "Outward search on edge collision")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--base-order", enc_cfg.base_ppm.max_order, "PPM order, base layer")
        ->check(CLI::Range(0, 8));
    cmd->add_option("--enhancement-order", enc_cfg.enhancement_ppm.max_order,
                    "PPM order, enhancement layer")
        ->check(CLI::Range(0, 8));
  };

  std::string layers = "full";
  std::string enc_in, enc_out;
  auto* encode_cmd = app.add_subcommand("encode", "Encode a PPM/PGM image into a .vcmf stream");
  encode_cmd->add_option("--layers", layers, "base or full")
      ->check(CLI::IsMember({"base", "full"}));
  encode_cmd->add_option("--sigma", enc_cfg.edge.sigma, "Edge smoothing sigma");
  encode_cmd->add_option("--low", enc_cfg.edge.low_threshold, "Hysteresis low threshold");
  encode_cmd->add_option("--high", enc_cfg.edge.high_threshold, "Hysteresis high threshold");
  encode_cmd->add_option("--min-component", enc_cfg.edge.min_component_pixels,
                         "Smallest kept edge component");
  encode_cmd->add_option("--tolerance", enc_cfg.fit.tolerance, "Fit tolerance (squared px)");
  encode_cmd->add_option("--corner-angle", enc_cfg.fit.corner_angle_deg, "Corner angle (deg)");
  add_format_options(encode_cmd);
  encode_cmd->add_option("input", enc_in, "Input image")->required();
  encode_cmd->add_option("output", enc_out, "Output stream")->required();

  std::string mode = "classical";
  std::string dec_in, dec_out;
  auto* decode_cmd = app.add_subcommand("decode", "Decode a stream to an image or E/M/C files");
  decode_cmd->add_option("--mode", mode, "classical or export")
      ->check(CLI::IsMember({"classical", "export"}));
  decode_cmd->add_option("--max-iterations", dec_cfg.recon.max_iterations, "Solver sweeps");
  decode_cmd->add_option("--recon-tolerance", dec_cfg.recon.tolerance, "Solver stop (0-1)");
  decode_cmd->add_option("--edge-conductance", dec_cfg.recon.edge_conductance,
                         "Diffusion weight across edges");
  int fallback_gray = dec_cfg.recon.fallback_gray;
  decode_cmd->add_option("--fallback-gray", fallback_gray, "Fill value without samples")
      ->check(CLI::Range(0, 255));
  add_format_options(decode_cmd);
  decode_cmd->add_option("input", dec_in, "Input stream")->required();
  decode_cmd->add_option("output", dec_out, "Output image, or directory in export mode")
      ->required();

  std::string inspect_in;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print header and layer statistics");
  add_format_options(inspect_cmd);
  inspect_cmd->add_option("input", inspect_in, "Input stream")->required();

  detail::MetricsJob single;
  std::string manifest, csv_out;
  auto* metrics_cmd = app.add_subcommand("metrics", "CSV report of bpp, PSNR and SSIM");
  auto* ref_opt = metrics_cmd->add_option("--reference", single.reference, "Original image");
  auto* dec_opt = metrics_cmd->add_option("--decoded", single.decoded, "Reconstruction");
  auto* stream_opt = metrics_cmd->add_option("--stream", single.stream, "Coded stream");
  metrics_cmd->add_option("--name", single.name, "Row name");
  auto* manifest_opt = metrics_cmd->add_option(
      "--manifest", manifest, "CSV of name,reference,decoded,stream per line");
  metrics_cmd->add_option("--output", csv_out, "Write the CSV here instead of stdout");
  manifest_opt->excludes(ref_opt)->excludes(dec_opt)->excludes(stream_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  dec_cfg.recon.fallback_gray = static_cast<std::uint8_t>(fallback_gray);
  dec_cfg.sampling = enc_cfg.sampling;
  dec_cfg.base_ppm.max_order = enc_cfg.base_ppm.max_order;
  dec_cfg.enhancement_ppm.max_order = enc_cfg.enhancement_ppm.max_order;

  try {
    if (*encode_cmd) {
      const RasterImage img = load_image(enc_in);
      RasterImage rgb = img;
      if (img.channels() == 1) {
        rgb = RasterImage(img.width(), img.height(), 3);
        for (int y = 0; y < img.height(); ++y) {
          for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < 3; ++c) rgb.at(x, y, c) = img.at(x, y, 0);
          }
        }
      }
      enc_cfg.edge.validate();
      enc_cfg.fit.validate();
      const auto r = encode_detailed(rgb, layers == "full", enc_cfg);
      const auto bytes = pack(r.coded);
      write_file(enc_out, bytes);
      out << "base_bpp=" << detail::format_bpp(bpp(r.coded.base_layer_size(), rgb.width(), rgb.height()))
          << "\n";
      out << "total_bpp=" << detail::format_bpp(bpp(bytes.size(), rgb.width(), rgb.height()))
          << "\n";
      out << "positions=" << r.positions.size() << "\n";
    } else if (*decode_cmd) {
      const CodedImage coded = unpack(read_file(dec_in));
      const auto r = decode(coded, mode == "export" ? DecodeMode::kExport : DecodeMode::kClassical,
                            dec_cfg);
      if (r.image) {
        save_image(*r.image, dec_out);
      } else {
        detail::export_atomically(r.layers.emc, dec_out);
      }
    } else if (*inspect_cmd) {
      const auto bytes = read_file(inspect_in);
      const CodedImage coded = unpack(bytes);
      const auto layers_out = decode_layers(coded, dec_cfg);
      const OpCounts counts = count_ops(layers_out.drawing);
      out << "version: " << static_cast<int>(coded.version) << "\n";
      out << "size: " << coded.width << "x" << coded.height << "\n";
      out << "base: " << coded.base.size() << " bytes\n";
      if (coded.enhancement) {
        out << "enhancement: present (" << coded.enhancement->size() << " bytes)\n";
      } else {
        out << "enhancement: absent\n";
      }
      out << "ops: M=" << counts.moves << " L=" << counts.lines << " C=" << counts.curves << "\n";
      out << "positions: " << layers_out.positions.size() << "\n";
      out << "total_bpp=" << detail::format_bpp(bpp(bytes.size(), coded.width, coded.height))
          << "\n";
    } else if (*metrics_cmd) {
      std::vector<detail::MetricsJob> jobs;
      if (!manifest.empty()) {
        jobs = detail::read_manifest(manifest);
      } else {
        if (single.reference.empty() || single.decoded.empty() || single.stream.empty()) {
          err << "error: metrics needs --manifest or all of --reference, --decoded, --stream\n";
          return kUsage;
        }
        if (single.name.empty()) single.name = single.reference.stem().string();
        jobs.push_back(single);
      }
      std::ostringstream csv;
      csv << csv_header() << "\n";
      for (const auto& job : jobs) csv << to_csv(detail::run_metrics_job(job)) << "\n";
      if (csv_out.empty()) {
        out << csv.str();
      } else {
        const std::string s = csv.str();
        write_file(csv_out, std::vector<std::uint8_t>(s.begin(), s.end()));
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_io() ? kIoError : kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace vcmf::cli
