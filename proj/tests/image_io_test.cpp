#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gtest/gtest.h"
#include "qrss/image_io.hpp"
#include "test_support.hpp"

namespace qrss {
namespace {

Bytes bytes_of(const std::string& s) { return Bytes(s.begin(), s.end()); }

Bytes concat(Bytes a, const Bytes& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <typename Fn>
Errc error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no qrss::Error thrown";
  return Errc::InvalidArgument;
}

TEST(Pgm, ReadSimple) {
  const auto img = read_pgm(concat(bytes_of("P5\n2 2\n255\n"), {0, 128, 200, 255}));
  EXPECT_EQ(img, GrayImage(2, 2, {0, 128, 200, 255}));
}

TEST(Pgm, CommentsBetweenTokens) {
  const auto img = read_pgm(concat(bytes_of("P5\n# test\n2 # width\n2\n# maxval next\n255\n"), {0, 128, 200, 255}));
  EXPECT_EQ(img, GrayImage(2, 2, {0, 128, 200, 255}));
}

TEST(Pgm, Errors) {
  EXPECT_EQ(error_code_of([] { read_pgm(concat(bytes_of("P5\n2 2\n255\n"), {0, 1, 2})); }),
            Errc::TruncatedPayload);
  EXPECT_EQ(error_code_of([] { read_pgm(bytes_of("P2\n1 1\n255\n0")); }), Errc::MalformedHeader);
  EXPECT_EQ(error_code_of([] { read_pgm(bytes_of("P5\n1 1\n65535\n\0\0")); }), Errc::UnsupportedMaxval);
  EXPECT_EQ(error_code_of([] { read_pgm(bytes_of("P5\n0 1\n255\n")); }), Errc::MalformedHeader);
  EXPECT_EQ(error_code_of([] { read_pgm(bytes_of("P5\n1\n")); }), Errc::MalformedHeader);
  EXPECT_EQ(error_code_of([] { read_pgm(bytes_of("P5")); }), Errc::MalformedHeader);
}

TEST(Pgm, CanonicalWrite) {
  EXPECT_EQ(write_pgm(GrayImage(1, 1, {0})), concat(bytes_of("P5\n1 1\n255\n"), {0}));
  const auto big = write_pgm(GrayImage(512, 512));
  EXPECT_EQ(big.size(), 15u + 262144u);
}

TEST(Pgm, RoundTripRandom) {
  SplitMix64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto img = testing::random_image(rng, 1 + static_cast<std::uint32_t>(rng.uniform(64)),
                                           1 + static_cast<std::uint32_t>(rng.uniform(64)));
    ASSERT_EQ(read_pgm(write_pgm(img)), img);
  }
}

ShadowImage sample_shadow() {
  ShadowImage s;
  s.x_coord = 2;
  s.k = 2;
  s.n_shares = 3;
  s.width = 3;
  s.height = 1;
  s.perm_seed = 0x0102030405060708ULL;
  s.values = {0, 300, 65520};
  return s;
}

TEST(Shadow, ExactLayout) {
  const auto bytes = write_shadow(sample_shadow());
  const Bytes expected{'Q', 'R', 'S', '1', 1, 2, 3, 2, 0, 0, 0, 3, 0, 0, 0, 1,
                       1,   2,   3,   4,   5, 6, 7, 8, 2, 0, 0, 1, 44, 255, 240};
  EXPECT_EQ(bytes, expected);
}

TEST(Shadow, RoundTripRandom) {
  SplitMix64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto img = testing::random_image(rng, 1 + static_cast<std::uint32_t>(rng.uniform(20)),
                                           1 + static_cast<std::uint32_t>(rng.uniform(20)));
    const auto n = static_cast<std::size_t>(1 + rng.uniform(6));
    const auto k = static_cast<std::size_t>(1 + rng.uniform(n));
    const SchemeParams params{k, n, rng.next(), rng.next()};
    for (const auto& s : share_image(img, params)) {
      ASSERT_EQ(std::get<ShadowImage>(read_shadow(write_shadow(s))), s);
    }
    for (const auto& s : tl_share(img, params)) {
      ASSERT_EQ(std::get<TLShadow>(read_shadow(write_shadow(s))), s);
    }
  }
}

TEST(Shadow, ReaderErrors) {
  auto bytes = write_shadow(sample_shadow());

  auto bad_magic = bytes;
  bad_magic[3] = '0';
  EXPECT_EQ(error_code_of([&] { read_shadow(bad_magic); }), Errc::BadMagic);

  auto too_big = bytes;
  too_big[too_big.size() - 2] = 0xFF;
  too_big[too_big.size() - 1] = 0xF1;  // 65521
  EXPECT_EQ(error_code_of([&] { read_shadow(too_big); }), Errc::HeaderInvariantViolated);

  auto bad_x = bytes;
  bad_x[7] = 4;
  EXPECT_EQ(error_code_of([&] { read_shadow(bad_x); }), Errc::HeaderInvariantViolated);

  auto bad_k = bytes;
  bad_k[5] = 4;
  EXPECT_EQ(error_code_of([&] { read_shadow(bad_k); }), Errc::HeaderInvariantViolated);

  auto bad_width = bytes;
  bad_width[24] = 1;
  EXPECT_EQ(error_code_of([&] { read_shadow(bad_width); }), Errc::HeaderInvariantViolated);

  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_EQ(error_code_of([&] { read_shadow(truncated); }), Errc::TruncatedPayload);

  auto huge = bytes;
  huge[8] = 0xFF;  // width ~ 4e9 with a 6-byte payload
  EXPECT_EQ(error_code_of([&] { read_shadow(huge); }), Errc::TruncatedPayload);

  const Bytes header_only(bytes.begin(), bytes.begin() + 10);
  EXPECT_EQ(error_code_of([&] { read_shadow(header_only); }), Errc::TruncatedPayload);
}

TEST(Shadow, WriterRejectsInvalid) {
  auto s = sample_shadow();
  s.values.push_back(1);
  EXPECT_EQ(error_code_of([&] { write_shadow(s); }), Errc::HeaderInvariantViolated);
  s = sample_shadow();
  s.values[0] = 65521;
  EXPECT_EQ(error_code_of([&] { write_shadow(s); }), Errc::HeaderInvariantViolated);
}

// Mutated and random inputs must fail with a qrss::Error or parse cleanly.
TEST(Fuzz, MalformedInputsGiveTypedErrors) {
  SplitMix64 rng(3);
  const auto seeds = std::vector<Bytes>{
      write_pgm(testing::random_image(rng, 5, 4)),
      write_shadow(sample_shadow()),
      write_shadow(tl_share(GrayImage(5, 3, std::uint8_t{7}), {2, 3, 1, 0})[1]),
  };
  std::size_t errors = 0;
  for (int iter = 0; iter < 20000; ++iter) {
    Bytes data = seeds[rng.uniform(seeds.size())];
    switch (rng.uniform(4)) {
      case 0:
        for (std::uint64_t m = 0, count = 1 + rng.uniform(4); m < count; ++m) {
          data[rng.uniform(data.size())] = static_cast<std::uint8_t>(rng.next());
        }
        break;
      case 1:
        data.resize(rng.uniform(data.size() + 1));
        break;
      case 2:
        data.insert(data.begin() + static_cast<std::ptrdiff_t>(rng.uniform(data.size() + 1)),
                    static_cast<std::uint8_t>(rng.next()));
        break;
      default:
        data.resize(rng.uniform(64));
        for (auto& b : data) b = static_cast<std::uint8_t>(rng.next());
        break;
    }
    for (int reader = 0; reader < 2; ++reader) {
      try {
        if (reader == 0) {
          read_pgm(data);
        } else {
          read_shadow(data);
        }
      } catch (const Error&) {
        ++errors;
      }
    }
  }
  EXPECT_GT(errors, 0u);
}

}  // namespace
}  // namespace qrss
