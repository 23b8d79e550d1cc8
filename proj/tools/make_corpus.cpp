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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "vcmf/image.hpp"
#include "vcmf/synth.hpp"

// Writes the synthetic evaluation corpus: face-like portraits and
// piecewise-constant shape images.
int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic image corpus", "vcmf_corpus"};
  std::string out_dir;
  int faces = 20;
  int shapes = 10;
  int size = 256;
  app.add_option("output", out_dir, "Output directory")->required();
  app.add_option("--faces", faces, "Number of face-like images")->check(CLI::NonNegativeNumber);
  app.add_option("--shapes", shapes, "Number of piecewise-constant images")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--size", size, "Image side in pixels")->check(CLI::Range(16, 4096));
  CLI11_PARSE(app, argc, argv);
  try {
    std::filesystem::create_directories(out_dir);
    char name[64];
    for (int i = 1; i <= faces; ++i) {
      std::snprintf(name, sizeof name, "face%02d.ppm", i);
      vcmf::save_image(vcmf::synth::face_like(static_cast<std::uint32_t>(i), size),
                       std::filesystem::path(out_dir) / name);
    }
    for (int i = 1; i <= shapes; ++i) {
      std::snprintf(name, sizeof name, "shapes%02d.ppm", i);
      vcmf::save_image(vcmf::synth::piecewise_constant(static_cast<std::uint32_t>(i), size),
                       std::filesystem::path(out_dir) / name);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
