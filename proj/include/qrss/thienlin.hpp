#pragma once

// Thien-Lin (k, n) image sharing, kept as a baseline for comparison. Each
// run of k permuted pixels becomes the coefficient vector of one polynomial
// over GF(251), so every shadow holds ceil(w*h / k) bytes.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "qrss/error.hpp"
#include "qrss/field_shamir.hpp"
#include "qrss/image.hpp"
#include "qrss/qrss_scheme.hpp"
#include "qrss/splitmix.hpp"

namespace qrss {

inline constexpr std::uint8_t kMaxTlPixel = 250;
// x-coordinates must be distinct nonzero elements of GF(251).
inline constexpr std::size_t kMaxTlShares = 250;

struct TLShadow {
  std::uint8_t x_coord = 1;
  std::uint8_t k = 1;
  std::uint8_t n_shares = 1;
  std::uint32_t width = 0;   // of the original image
  std::uint32_t height = 0;
  std::uint64_t perm_seed = 0;
  std::vector<std::uint8_t> values;

  friend bool operator==(const TLShadow&, const TLShadow&) = default;
};

constexpr std::size_t tl_shadow_length(std::size_t pixel_count, std::size_t k) noexcept {
  return (pixel_count + k - 1) / k;
}

inline GrayImage truncate250(GrayImage img) {
  for (auto& v : img.pixels) v = std::min(v, kMaxTlPixel);
  return img;
}

inline std::vector<TLShadow> tl_share(const GrayImage& img, const SchemeParams& params) {
  check_threshold(params.k, params.n_shares, kMaxTlShares);
  img.validate();
  const std::size_t k = params.k;
  const GrayImage shuffled = permute_pixels(truncate250(img), params.perm_seed);
  const std::size_t chunks = tl_shadow_length(shuffled.pixel_count(), k);

  std::vector<TLShadow> shadows(params.n_shares);
  for (std::size_t j = 0; j < params.n_shares; ++j) {
    auto& s = shadows[j];
    s.x_coord = static_cast<std::uint8_t>(j + 1);
    s.k = static_cast<std::uint8_t>(k);
    s.n_shares = static_cast<std::uint8_t>(params.n_shares);
    s.width = img.width;
    s.height = img.height;
    s.perm_seed = params.perm_seed;
    s.values.resize(chunks);
  }

  SharingPolynomial poly{0, std::vector<std::uint32_t>(k - 1)};
  for (std::size_t c = 0; c < chunks; ++c) {
    // Tail chunk is zero-padded up to k coefficients.
    const auto coeff = [&](std::size_t d) -> std::uint32_t {
      const std::size_t idx = c * k + d;
      return idx < shuffled.pixels.size() ? shuffled.pixels[idx] : 0;
    };
    poly.secret = coeff(0);
    for (std::size_t d = 1; d < k; ++d) poly.coeffs[d - 1] = coeff(d);
    for (std::size_t j = 0; j < params.n_shares; ++j) {
      shadows[j].values[c] = static_cast<std::uint8_t>(
          poly_eval<ByteField>(poly, static_cast<std::uint32_t>(j + 1)));
    }
  }
  return shadows;
}

inline GrayImage tl_reveal(std::span<const TLShadow> shadows) {
  detail::check_shadow_set(shadows);
  const auto& ref = shadows.front();
  const std::size_t k = ref.k;
  const std::size_t count = std::size_t{ref.width} * ref.height;
  const std::size_t chunks = tl_shadow_length(count, k);
  for (std::size_t j = 0; j < k; ++j) {
    if (shadows[j].values.size() != chunks) {
      throw Error(Errc::HeaderMismatch, "shadow payload does not match its dimensions");
    }
  }

  std::vector<std::uint32_t> xs(k);
  for (std::size_t j = 0; j < k; ++j) xs[j] = shadows[j].x_coord;
  const auto basis = lagrange_basis<ByteField>(xs);

  std::vector<std::uint8_t> shuffled(chunks * k);
  for (std::size_t c = 0; c < chunks; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      std::uint32_t coeff = 0;
      for (std::size_t j = 0; j < k; ++j) {
        coeff = ByteField::add(coeff, ByteField::mul(ByteField::reduce(shadows[j].values[c]), basis[j][d]));
      }
      shuffled[c * k + d] = static_cast<std::uint8_t>(coeff);
    }
  }
  shuffled.resize(count);
  return GrayImage(ref.width, ref.height, undo_shuffle<std::uint8_t>(shuffled, ref.perm_seed));
}

}  // namespace qrss
