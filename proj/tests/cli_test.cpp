#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "qrss/image_io.hpp"
#include "qrss/qrss_scheme.hpp"
#include "test_support.hpp"

namespace qrss {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qrss_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunResult run(const std::string& args) {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = std::string(QRSS_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path write_image(const std::string& name, const GrayImage& img) {
    const auto path = dir_ / name;
    write_file(path, write_pgm(img));
    return path;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

GrayImage sample_image() {
  SplitMix64 rng(123);
  return testing::random_image(rng, 32, 24);
}

TEST_F(CliTest, ShareAndRevealTwoOfFour) {
  const auto input = write_image("lena.pgm", sample_image());
  const auto r = run("share --scheme qrss --k 2 --n 4 --perm-seed 5 --coeff-seed 6 --out-dir " + path("out") + " " +
                     input.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("perm_seed=5"), std::string::npos);
  EXPECT_NE(r.out.find("coeff_seed=6"), std::string::npos);
  for (int x = 1; x <= 4; ++x) EXPECT_TRUE(fs::exists(path("out/lena_share_" + std::to_string(x) + ".qrs")));

  const auto rv = run("reveal " + path("out/lena_share_1.qrs") + " " + path("out/lena_share_3.qrs") + " --output " +
                      path("revealed.pgm"));
  ASSERT_EQ(rv.exit_code, 0) << rv.err;
  EXPECT_EQ(read_file(path("revealed.pgm")), write_pgm(clamp_image(sample_image())));
}

TEST_F(CliTest, ShareIsDeterministicWithSeeds) {
  const auto input = write_image("img.pgm", sample_image());
  ASSERT_EQ(run("share --k 2 --n 3 --perm-seed 1 --coeff-seed 2 --out-dir " + path("a") + " " + input.string()).exit_code, 0);
  ASSERT_EQ(run("share --k 2 --n 3 --perm-seed 1 --coeff-seed 2 --out-dir " + path("b") + " " + input.string()).exit_code, 0);
  for (int x = 1; x <= 3; ++x) {
    const auto name = "img_share_" + std::to_string(x) + ".qrs";
    EXPECT_EQ(read_file(path("a/" + name)), read_file(path("b/" + name)));
  }
}

TEST_F(CliTest, BadThresholdExitsOne) {
  const auto input = write_image("img.pgm", sample_image());
  const auto r = run("share --k 5 --n 4 --out-dir " + path("out") + " " + input.string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("BadThreshold"), std::string::npos);
}

TEST_F(CliTest, RevealErrors) {
  const auto input = write_image("img.pgm", sample_image());
  ASSERT_EQ(run("share --k 2 --n 4 --perm-seed 1 --coeff-seed 1 --out-dir " + path("a") + " " + input.string()).exit_code, 0);
  ASSERT_EQ(run("share --k 2 --n 4 --perm-seed 2 --coeff-seed 1 --out-dir " + path("b") + " " + input.string()).exit_code, 0);

  const auto single = run("reveal " + path("a/img_share_1.qrs") + " -o " + path("x.pgm"));
  EXPECT_EQ(single.exit_code, 1);
  EXPECT_NE(single.err.find("InsufficientShares"), std::string::npos);

  const auto mixed = run("reveal " + path("a/img_share_1.qrs") + " " + path("b/img_share_2.qrs") + " -o " + path("x.pgm"));
  EXPECT_EQ(mixed.exit_code, 1);
  EXPECT_NE(mixed.err.find("HeaderMismatch"), std::string::npos);

  const auto missing = run("reveal " + path("nope.qrs") + " -o " + path("x.pgm"));
  EXPECT_EQ(missing.exit_code, 1);
}

TEST_F(CliTest, ThienLinRoundTrip) {
  const auto input = write_image("img.pgm", sample_image());
  ASSERT_EQ(run("share --scheme thienlin --k 3 --n 4 --perm-seed 9 --out-dir " + path("tl") + " " + input.string()).exit_code, 0);
  const auto rv = run("reveal " + path("tl/img_share_4.qrs") + " " + path("tl/img_share_2.qrs") + " " +
                      path("tl/img_share_1.qrs") + " -o " + path("tl.pgm"));
  ASSERT_EQ(rv.exit_code, 0) << rv.err;
  EXPECT_EQ(read_file(path("tl.pgm")), write_pgm(truncate250(sample_image())));
}

TEST_F(CliTest, Psnr) {
  GrayImage a(512, 512, std::uint8_t{10});
  auto b = a;
  b.pixels[7] = 11;
  const auto pa = write_image("a.pgm", a);
  const auto pb = write_image("b.pgm", b);

  const auto same = run("psnr " + pa.string() + " " + pa.string());
  ASSERT_EQ(same.exit_code, 0);
  EXPECT_NE(same.out.find("PSNR: inf"), std::string::npos);

  const auto diff = run("psnr " + pa.string() + " " + pb.string());
  ASSERT_EQ(diff.exit_code, 0);
  EXPECT_NE(diff.out.find("PSNR: 102.32 dB"), std::string::npos) << diff.out;

  const auto small = write_image("small.pgm", GrayImage(2, 2));
  EXPECT_EQ(run("psnr " + pa.string() + " " + small.string()).exit_code, 1);
}

TEST_F(CliTest, DemoExample) {
  const auto first = run("demo-example");
  ASSERT_EQ(first.exit_code, 0) << first.out;
  EXPECT_NE(first.out.find("M = 52954"), std::string::npos);
  EXPECT_NE(first.out.find("recovered p = 150"), std::string::npos);
  EXPECT_EQ(run("demo-example").out, first.out);
}

TEST_F(CliTest, ArgumentErrorsExitTwo) {
  EXPECT_EQ(run("share --k 2").exit_code, 2);
  EXPECT_EQ(run("no-such-command").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("share --scheme rsa --k 2 --n 3 x.pgm").exit_code, 2);
}

TEST_F(CliTest, Selftest) {
  const auto r = run("selftest");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace qrss
