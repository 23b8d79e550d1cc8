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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "vcmf/synth.hpp"

namespace vcmf::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vcmf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    save_image(synth::face_like(2, 128), path("in.ppm"));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, EncodeReportsPerLayerRates) {
  ASSERT_EQ(run({"encode", "--layers", "full", path("in.ppm"), path("f.vcmf")}), kOk) << err_.str();
  const std::string report = out_.str();
  EXPECT_NE(report.find("base_bpp="), std::string::npos);
  EXPECT_NE(report.find("total_bpp="), std::string::npos);
  const auto bytes = read_file(path("f.vcmf"));
  const CodedImage c = unpack(bytes);
  EXPECT_TRUE(c.has_enhancement());
  std::ostringstream expect;
  expect << "total_bpp=" << std::fixed << std::setprecision(6) << bpp(bytes.size(), 128, 128);
  EXPECT_NE(report.find(expect.str()), std::string::npos);
}

TEST_F(CliTest, InspectBaseOnlyStream) {
  ASSERT_EQ(run({"encode", "--layers", "base", path("in.ppm"), path("b.vcmf")}), kOk);
  ASSERT_EQ(run({"inspect", path("b.vcmf")}), kOk);
  EXPECT_NE(out_.str().find("enhancement: absent"), std::string::npos);

  const CodedImage c = unpack(read_file(path("b.vcmf")));
  const OpCounts counts = count_ops(decode_layers(c).drawing);
  std::ostringstream ops;
  ops << "ops: M=" << counts.moves << " L=" << counts.lines << " C=" << counts.curves;
  EXPECT_NE(out_.str().find(ops.str()), std::string::npos);
  EXPECT_NE(out_.str().find("positions: 0"), std::string::npos);
}

TEST_F(CliTest, DecodeClassicalAndExport) {
  ASSERT_EQ(run({"encode", path("in.ppm"), path("f.vcmf")}), kOk);
  ASSERT_EQ(run({"decode", path("f.vcmf"), path("out.ppm")}), kOk) << err_.str();
  const RasterImage img = load_image(path("out.ppm"));
  EXPECT_EQ(img.width(), 128);
  EXPECT_EQ(img.channels(), 3);

  ASSERT_EQ(run({"decode", "--mode", "export", path("f.vcmf"), path("emc")}), kOk);
  const EmcBundle emc = load_emc(path("emc"));
  const auto layers = decode_layers(unpack(read_file(path("f.vcmf"))));
  EXPECT_EQ(emc.edges, rasterize(layers.drawing));
  EXPECT_EQ(emc.mask.count(), layers.positions.size());
  EXPECT_FALSE(fs::exists(path("emc.partial")));
}

TEST_F(CliTest, MetricsSingleAndManifest) {
  ASSERT_EQ(run({"encode", path("in.ppm"), path("f.vcmf")}), kOk);
  ASSERT_EQ(run({"decode", path("f.vcmf"), path("out.ppm")}), kOk);
  ASSERT_EQ(run({"metrics", "--reference", path("in.ppm"), "--decoded", path("out.ppm"),
                 "--stream", path("f.vcmf"), "--name", "face"}),
            kOk)
      << err_.str();
  std::istringstream lines(out_.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "name,bpp,psnr,ssim,nme");
  EXPECT_EQ(row.rfind("face,", 0), 0u);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 4);

  const std::string manifest = "name,reference,decoded,stream\na,in.ppm,out.ppm,f.vcmf\nb,in.ppm,in.ppm,f.vcmf\n";
  write_file(path("m.csv"), std::vector<std::uint8_t>(manifest.begin(), manifest.end()));
  ASSERT_EQ(run({"metrics", "--manifest", path("m.csv"), "--output", path("r.csv")}), kOk)
      << err_.str();
  const auto csv = read_file(path("r.csv"));
  const std::string text(csv.begin(), csv.end());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_NE(text.find("b,"), std::string::npos);
  EXPECT_NE(text.find(",inf,"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}), kUsage);
  EXPECT_EQ(run({"encode", "--layers", "bogus", path("in.ppm"), path("x.vcmf")}), kUsage);
  EXPECT_EQ(run({"decode", path("f.vcmf")}), kUsage);
  EXPECT_EQ(run({"metrics", "--reference", path("in.ppm")}), kUsage);
  EXPECT_EQ(run({"decode", path("missing.vcmf"), path("x.ppm")}), kIoError);
  const std::string junk = "JUNKJUNKJUNKJUNK";
  write_file(path("j.vcmf"), std::vector<std::uint8_t>(junk.begin(), junk.end()));
  EXPECT_EQ(run({"decode", path("j.vcmf"), path("x.ppm")}), kDataError);
  EXPECT_NE(err_.str().find("bad-magic"), std::string::npos);
  EXPECT_EQ(run({"encode", path("j.vcmf"), path("x.vcmf")}), kDataError);
  EXPECT_FALSE(fs::exists(path("x.ppm")));
  EXPECT_FALSE(fs::exists(path("x.vcmf")));
  EXPECT_EQ(run({"--help"}), kOk);
}

TEST_F(CliTest, NoPartialOutputOnTruncatedStream) {
  ASSERT_EQ(run({"encode", path("in.ppm"), path("f.vcmf")}), kOk);
  auto bytes = read_file(path("f.vcmf"));
  bytes.resize(bytes.size() - 5);
  write_file(path("t.vcmf"), bytes);
  EXPECT_EQ(run({"decode", path("t.vcmf"), path("t.ppm")}), kDataError);
  EXPECT_EQ(run({"decode", "--mode", "export", path("t.vcmf"), path("tdir")}), kDataError);
  EXPECT_FALSE(fs::exists(path("t.ppm")));
  EXPECT_FALSE(fs::exists(path("tdir")));
  for (const auto& entry : fs::directory_iterator(dir_)) {
    EXPECT_EQ(entry.path().string().find(".partial"), std::string::npos) << entry.path();
  }
}

TEST_F(CliTest, GrayscaleInputIsAccepted) {
  save_image(to_grayscale(synth::face_like(2, 64)), path("g.pgm"));
  EXPECT_EQ(run({"encode", path("g.pgm"), path("g.vcmf")}), kOk) << err_.str();
}

}  // namespace
}  // namespace vcmf::cli
