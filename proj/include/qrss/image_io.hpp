#pragma once

// Binary PGM (P5) and the QRS1 shadow container.
//
// QRS1 layout, all integers big-endian:
//   offset  size  field
//        0     4  magic "QRS1"
//        4     1  scheme id (1 = quadratic-residue scheme, 2 = Thien-Lin)
//        5     1  k
//        6     1  n_shares
//        7     1  x_coord
//        8     4  width
//       12     4  height
//       16     8  perm_seed
//       24     1  value width in bytes (2 or 1)
//       25     -  payload
// Payload length is width*height values for scheme 1 and ceil(width*height/k)
// values for scheme 2.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qrss/error.hpp"
#include "qrss/field_shamir.hpp"
#include "qrss/image.hpp"
#include "qrss/qrss_scheme.hpp"
#include "qrss/thienlin.hpp"

namespace qrss {

using Bytes = std::vector<std::uint8_t>;

namespace detail {

class PgmCursor {
 public:
  explicit PgmCursor(std::span<const std::uint8_t> data) : data_(data) {}

  static bool is_space(std::uint8_t c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (is_space(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t read_uint(const char* what) {
    skip_space_and_comments();
    std::uint64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
      value = value * 10 + (data_[pos_] - '0');
      if (++digits > 10) throw Error(Errc::MalformedHeader, std::string(what) + " is too large");
      ++pos_;
    }
    if (digits == 0) throw Error(Errc::MalformedHeader, std::string("missing ") + what);
    return value;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance() noexcept { ++pos_; }
  bool at_end() const noexcept { return pos_ >= data_.size(); }
  std::uint8_t peek() const { return data_[pos_]; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

inline void put_be(Bytes& out, std::uint64_t v, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_be(std::span<const std::uint8_t> in, std::size_t offset, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 8) | in[offset + static_cast<std::size_t>(i)];
  return v;
}

}  // namespace detail

inline GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(Errc::MalformedHeader, "not a binary PGM (expected P5)");
  }
  detail::PgmCursor cur(bytes.subspan(2));
  if (cur.at_end() || !(detail::PgmCursor::is_space(cur.peek()) || cur.peek() == '#')) {
    throw Error(Errc::MalformedHeader, "missing separator after magic");
  }
  const auto width = cur.read_uint("width");
  const auto height = cur.read_uint("height");
  const auto maxval = cur.read_uint("maxval");
  if (width == 0 || height == 0 || width > UINT32_MAX || height > UINT32_MAX) {
    throw Error(Errc::MalformedHeader, "invalid image dimensions");
  }
  if (maxval == 0) throw Error(Errc::MalformedHeader, "maxval must be positive");
  if (maxval > 255) throw Error(Errc::UnsupportedMaxval, "maxval " + std::to_string(maxval) + " exceeds 255");
  if (cur.at_end() || !detail::PgmCursor::is_space(cur.peek())) {
    throw Error(Errc::MalformedHeader, "missing whitespace before raster");
  }
  cur.advance();

  const std::size_t offset = 2 + cur.pos();
  const std::uint64_t count = width * height;
  if (bytes.size() - offset < count) {
    throw Error(Errc::TruncatedPayload, "raster has " + std::to_string(bytes.size() - offset) +
                                            " bytes, expected " + std::to_string(count));
  }
  const auto raster = bytes.subspan(offset, static_cast<std::size_t>(count));
  return GrayImage(static_cast<std::uint32_t>(width), static_cast<std::uint32_t>(height),
                   std::vector<std::uint8_t>(raster.begin(), raster.end()));
}

inline Bytes write_pgm(const GrayImage& img) {
  img.validate();
  const std::string header =
      "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

enum class SchemeId : std::uint8_t { Qrss = 1, ThienLin = 2 };

inline constexpr std::array<std::uint8_t, 4> kShadowMagic{'Q', 'R', 'S', '1'};
inline constexpr std::size_t kShadowHeaderSize = 25;

struct ShadowFileHeader {
  SchemeId scheme = SchemeId::Qrss;
  std::uint8_t k = 1;
  std::uint8_t n_shares = 1;
  std::uint8_t x_coord = 1;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint64_t perm_seed = 0;
  std::uint8_t value_width = 2;

  std::uint64_t value_count() const noexcept {
    const std::uint64_t pixels = std::uint64_t{width} * height;
    return scheme == SchemeId::Qrss ? pixels : tl_shadow_length(pixels, k);
  }
};

namespace detail {

inline Bytes encode_header(const ShadowFileHeader& h) {
  Bytes out(kShadowMagic.begin(), kShadowMagic.end());
  out.push_back(static_cast<std::uint8_t>(h.scheme));
  out.push_back(h.k);
  out.push_back(h.n_shares);
  out.push_back(h.x_coord);
  put_be(out, h.width, 4);
  put_be(out, h.height, 4);
  put_be(out, h.perm_seed, 8);
  out.push_back(h.value_width);
  return out;
}

inline void check_header(const ShadowFileHeader& h) {
  const auto fail = [](const std::string& what) {
    throw Error(Errc::HeaderInvariantViolated, what);
  };
  if (h.scheme != SchemeId::Qrss && h.scheme != SchemeId::ThienLin) fail("unknown scheme id");
  if (h.k < 1 || h.k > h.n_shares) fail("k must satisfy 1 <= k <= n");
  if (h.x_coord < 1 || h.x_coord > h.n_shares) fail("x_coord must lie in [1, n]");
  if (h.width < 1 || h.height < 1) fail("dimensions must be positive");
  const std::uint8_t expected_width = h.scheme == SchemeId::Qrss ? 2 : 1;
  if (h.value_width != expected_width) fail("value width does not match scheme");
  if (h.scheme == SchemeId::ThienLin && h.n_shares > kMaxTlShares) fail("too many Thien-Lin shares");
}

template <typename Shadow>
ShadowFileHeader header_of(const Shadow& s, SchemeId scheme) {
  return ShadowFileHeader{scheme,  s.k,        s.n_shares, s.x_coord,
                          s.width, s.height,   s.perm_seed,
                          static_cast<std::uint8_t>(scheme == SchemeId::Qrss ? 2 : 1)};
}

template <typename Shadow>
void fill_from_header(Shadow& s, const ShadowFileHeader& h) {
  s.x_coord = h.x_coord;
  s.k = h.k;
  s.n_shares = h.n_shares;
  s.width = h.width;
  s.height = h.height;
  s.perm_seed = h.perm_seed;
}

}  // namespace detail

inline Bytes write_shadow(const ShadowImage& shadow) {
  const auto header = detail::header_of(shadow, SchemeId::Qrss);
  detail::check_header(header);
  if (shadow.values.size() != header.value_count()) {
    throw Error(Errc::HeaderInvariantViolated, "payload length does not match dimensions");
  }
  Bytes out = detail::encode_header(header);
  out.reserve(out.size() + 2 * shadow.values.size());
  for (const auto v : shadow.values) {
    if (v >= ShareField::modulus) {
      throw Error(Errc::HeaderInvariantViolated, "share value outside the field");
    }
    detail::put_be(out, v, 2);
  }
  return out;
}

inline Bytes write_shadow(const TLShadow& shadow) {
  const auto header = detail::header_of(shadow, SchemeId::ThienLin);
  detail::check_header(header);
  if (shadow.values.size() != header.value_count()) {
    throw Error(Errc::HeaderInvariantViolated, "payload length does not match dimensions");
  }
  Bytes out = detail::encode_header(header);
  for (const auto v : shadow.values) {
    if (v >= ByteField::modulus) {
      throw Error(Errc::HeaderInvariantViolated, "share value outside GF(251)");
    }
    out.push_back(v);
  }
  return out;
}

using AnyShadow = std::variant<ShadowImage, TLShadow>;

inline ShadowFileHeader read_shadow_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kShadowMagic.size() ||
      !std::equal(kShadowMagic.begin(), kShadowMagic.end(), bytes.begin())) {
    throw Error(Errc::BadMagic, "not a QRS1 shadow file");
  }
  if (bytes.size() < kShadowHeaderSize) throw Error(Errc::TruncatedPayload, "shadow header is truncated");
  ShadowFileHeader h;
  h.scheme = static_cast<SchemeId>(bytes[4]);
  h.k = bytes[5];
  h.n_shares = bytes[6];
  h.x_coord = bytes[7];
  h.width = static_cast<std::uint32_t>(detail::get_be(bytes, 8, 4));
  h.height = static_cast<std::uint32_t>(detail::get_be(bytes, 12, 4));
  h.perm_seed = detail::get_be(bytes, 16, 8);
  h.value_width = bytes[24];
  detail::check_header(h);
  return h;
}

inline AnyShadow read_shadow(std::span<const std::uint8_t> bytes) {
  const auto h = read_shadow_header(bytes);
  const auto payload = bytes.subspan(kShadowHeaderSize);
  const std::uint64_t count = h.value_count();
  // count < 2^64 / 2, so the byte length cannot overflow.
  if (payload.size() / h.value_width < count) {
    throw Error(Errc::TruncatedPayload, "shadow payload is truncated");
  }
  if (payload.size() != count * h.value_width) {
    throw Error(Errc::HeaderInvariantViolated, "trailing bytes after shadow payload");
  }

  if (h.scheme == SchemeId::Qrss) {
    ShadowImage s;
    detail::fill_from_header(s, h);
    s.values.resize(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const auto v = detail::get_be(payload, 2 * i, 2);
      if (v >= ShareField::modulus) {
        throw Error(Errc::HeaderInvariantViolated, "share value " + std::to_string(v) + " outside the field");
      }
      s.values[i] = static_cast<std::uint16_t>(v);
    }
    return s;
  }
  TLShadow s;
  detail::fill_from_header(s, h);
  s.values.assign(payload.begin(), payload.end());
  for (const auto v : s.values) {
    if (v >= ByteField::modulus) {
      throw Error(Errc::HeaderInvariantViolated, "share value " + std::to_string(v) + " outside GF(251)");
    }
  }
  return s;
}

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::InvalidArgument, "failed writing " + path.string());
}

}  // namespace qrss
