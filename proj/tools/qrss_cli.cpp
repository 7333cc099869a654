// Command-line front end: share, reveal, psnr, demo-example, selftest.
//
// Exit codes: 0 success, 1 operational failure, 2 bad arguments.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrss/qrss.hpp"

namespace fs = std::filesystem;

namespace {

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

struct ShareOptions {
  std::string input;
  std::string scheme = "qrss";
  std::size_t k = 0;
  std::size_t n = 0;
  std::optional<std::uint64_t> perm_seed;
  std::optional<std::uint64_t> coeff_seed;
  std::string out_dir = ".";
};

int cmd_share(const ShareOptions& opt) {
  const auto img = qrss::read_pgm(qrss::read_file(opt.input));
  qrss::SchemeParams params;
  params.k = opt.k;
  params.n_shares = opt.n;
  params.perm_seed = opt.perm_seed.value_or(entropy_seed());
  params.coeff_seed = opt.coeff_seed.value_or(entropy_seed());

  std::vector<qrss::Bytes> encoded;
  if (opt.scheme == "qrss") {
    for (const auto& s : qrss::share_image(img, params)) encoded.push_back(qrss::write_shadow(s));
  } else {
    for (const auto& s : qrss::tl_share(img, params)) encoded.push_back(qrss::write_shadow(s));
  }

  fs::create_directories(opt.out_dir);
  const auto stem = fs::path(opt.input).stem().string();
  std::cout << "scheme=" << opt.scheme << " k=" << params.k << " n=" << params.n_shares
            << " perm_seed=" << params.perm_seed << " coeff_seed=" << params.coeff_seed << "\n";
  for (std::size_t x = 1; x <= encoded.size(); ++x) {
    const auto path = fs::path(opt.out_dir) / (stem + "_share_" + std::to_string(x) + ".qrs");
    qrss::write_file(path, encoded[x - 1]);
    std::cout << path.string() << "\n";
  }
  return 0;
}

int cmd_reveal(const std::vector<std::string>& inputs, const std::string& output) {
  std::vector<qrss::ShadowImage> qr_shadows;
  std::vector<qrss::TLShadow> tl_shadows;
  for (const auto& path : inputs) {
    auto shadow = qrss::read_shadow(qrss::read_file(path));
    if (auto* s = std::get_if<qrss::ShadowImage>(&shadow)) {
      qr_shadows.push_back(std::move(*s));
    } else {
      tl_shadows.push_back(std::get<qrss::TLShadow>(std::move(shadow)));
    }
  }
  if (!qr_shadows.empty() && !tl_shadows.empty()) {
    throw qrss::Error(qrss::Errc::HeaderMismatch, "shadows from different schemes");
  }
  const auto img = qr_shadows.empty() ? qrss::tl_reveal(tl_shadows) : qrss::reveal_image(qr_shadows);
  qrss::write_file(output, qrss::write_pgm(img));
  std::cout << output << "\n";
  return 0;
}

std::string format_db(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

int cmd_psnr(const std::string& a_path, const std::string& b_path) {
  const auto a = qrss::read_pgm(qrss::read_file(a_path));
  const auto b = qrss::read_pgm(qrss::read_file(b_path));
  const auto report = qrss::psnr(a, b);
  std::cout << "MSE: " << report.mse << "\n";
  if (report.identical()) {
    std::cout << "PSNR: inf\n" << "PSNR (log2 variant): inf\n";
  } else {
    std::cout << "PSNR: " << format_db(report.psnr_db) << " dB\n"
              << "PSNR (log2 variant): " << format_db(report.psnr_log2) << "\n";
  }
  return 0;
}

int cmd_demo_example() {
  return qrss::run_worked_example(std::cout) ? 0 : 1;
}

int cmd_selftest() {
  bool all_ok = true;
  const auto report = [&](const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    all_ok = all_ok && ok;
  };

  const auto mp = qrss::build_modulus_pair();
  report("crt constants", mp.crt_a == 5020 && mp.crt_b == 54970 && (mp.crt_a + mp.crt_b) % mp.n == 1);

  const auto& cls = qrss::default_classifier();
  std::size_t qr_p = 0;
  std::size_t qr_q = 0;
  for (std::uint64_t x = 1; x < mp.p; ++x) qr_p += cls.qr_mod_p(x);
  for (std::uint64_t x = 1; x < mp.q; ++x) qr_q += cls.qr_mod_q(x);
  report("residue counts", qr_p == 119 && qr_q == 125);

  bool roundtrip = true;
  for (int v = 0; v <= qrss::kMaxCipherPixel; ++v) {
    const auto px = static_cast<std::uint8_t>(v);
    roundtrip = roundtrip && qrss::decrypt_root(qrss::encrypt_pixel(px).root) == px;
  }
  report("pixel cipher round trip", roundtrip);

  std::ostringstream sink;
  report("worked example", qrss::run_worked_example(sink));

  qrss::GrayImage img(8, 8);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 37);
  const auto shadows = qrss::share_image(img, {3, 5, 11, 13});
  const std::vector<qrss::ShadowImage> subset{shadows[4], shadows[0], shadows[2]};
  report("image share/reveal", qrss::reveal_image(subset) == qrss::clamp_image(img));

  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic-residue (k,n) threshold secret sharing for grayscale images"};
  app.require_subcommand(1);

  ShareOptions share_opt;
  auto* share = app.add_subcommand("share", "Split a PGM image into n shadow files");
  share->add_option("input", share_opt.input, "Secret image (binary PGM)")->required();
  share->add_option("--scheme", share_opt.scheme, "Sharing scheme")
      ->check(CLI::IsMember({"qrss", "thienlin"}));
  share->add_option("--k", share_opt.k, "Threshold")->required();
  share->add_option("--n", share_opt.n, "Number of shadows")->required();
  share->add_option("--perm-seed", share_opt.perm_seed, "Pixel permutation seed");
  share->add_option("--coeff-seed", share_opt.coeff_seed, "Shamir coefficient seed");
  share->add_option("--out-dir", share_opt.out_dir, "Directory for shadow files");

  std::vector<std::string> reveal_inputs;
  std::string reveal_output;
  auto* reveal = app.add_subcommand("reveal", "Reconstruct an image from k or more shadows");
  reveal->add_option("shadows", reveal_inputs, "Shadow files")->required();
  reveal->add_option("--output,-o", reveal_output, "Output PGM")->required();

  std::string psnr_a;
  std::string psnr_b;
  auto* psnr = app.add_subcommand("psnr", "Compare two PGM images");
  psnr->add_option("original", psnr_a)->required();
  psnr->add_option("reconstructed", psnr_b)->required();

  auto* demo = app.add_subcommand("demo-example", "Replay the single-pixel walkthrough");
  auto* selftest = app.add_subcommand("selftest", "Run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*share) return cmd_share(share_opt);
    if (*reveal) return cmd_reveal(reveal_inputs, reveal_output);
    if (*psnr) return cmd_psnr(psnr_a, psnr_b);
    if (*demo) return cmd_demo_example();
    if (*selftest) return cmd_selftest();
  } catch (const qrss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
