#pragma once

// The quadratic-residue (k, n) image sharing scheme.
//
// Sharing: clamp every pixel to [0, 238], shuffle the pixel list with the
// keyed Fisher-Yates order, encrypt each pixel to one of the four square
// roots of p * r_t (mod N), then split that root with Shamir over GF(65521).
// Revealing runs the same steps backwards.
//
// The coefficient stream is a single SplitMix64 seeded with coeff_seed and
// consumed sequentially: k - 1 draws per pixel, in permuted pixel order.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qrss/error.hpp"
#include "qrss/field_shamir.hpp"
#include "qrss/image.hpp"
#include "qrss/numtheory.hpp"
#include "qrss/splitmix.hpp"

namespace qrss {

inline constexpr std::uint8_t kMaxCipherPixel = 238;  // p - 1

constexpr std::uint8_t clamp_pixel(std::uint8_t v) noexcept {
  return std::min(v, kMaxCipherPixel);
}

inline GrayImage clamp_image(GrayImage img) {
  for (auto& v : img.pixels) v = clamp_pixel(v);
  return img;
}

inline GrayImage permute_pixels(const GrayImage& img, std::uint64_t seed) {
  return GrayImage(img.width, img.height,
                   apply_shuffle<std::uint8_t>(img.pixels, seed));
}

inline GrayImage depermute_pixels(const GrayImage& img, std::uint64_t seed) {
  return GrayImage(img.width, img.height,
                   undo_shuffle<std::uint8_t>(img.pixels, seed));
}

struct EncryptedPixel {
  std::uint32_t root = 0;
  ResidueCase case_t = ResidueCase::QrQr;

  friend bool operator==(const EncryptedPixel&, const EncryptedPixel&) = default;
};

/// Zero has no residue class; it maps to root 0 in case 1.
inline EncryptedPixel encrypt_pixel(std::uint8_t pixel,
                                    const ResidueClassifier& classifier = default_classifier()) {
  if (pixel > kMaxCipherPixel) {
    throw Error(Errc::InvalidArgument, "pixel " + std::to_string(pixel) + " exceeds 238");
  }
  if (pixel == 0) return {};
  const auto& mp = classifier.modulus();
  const ResidueCase t = classifier.classify(pixel);
  const std::uint64_t product = pixel * classifier.parameter(t) % mp.n;
  const auto roots = four_square_roots(product, mp);
  return {static_cast<std::uint32_t>(root_for(roots, t)), t};
}

/// Inverse of encrypt_pixel. Throws Errc::RootMismatch when `root` cannot
/// have come from encrypt_pixel (only possible with corrupted shares).
inline std::uint8_t decrypt_root(std::uint64_t root,
                                 const ResidueClassifier& classifier = default_classifier()) {
  const auto& mp = classifier.modulus();
  if (root == 0) return 0;
  if (root >= mp.n || root % mp.p == 0 || root % mp.q == 0) {
    throw Error(Errc::RootMismatch, "value " + std::to_string(root) + " is not a valid root");
  }
  const std::uint64_t square = root * root % mp.n;
  const auto roots = four_square_roots(square, mp);
  const auto pos = std::find(roots.begin(), roots.end(), root);
  if (pos == roots.end()) {
    throw Error(Errc::RootMismatch, "value " + std::to_string(root) + " matches no root index");
  }
  const auto t = static_cast<ResidueCase>(pos - roots.begin() + 1);
  const std::uint64_t pixel = square * mod_inv(classifier.parameter(t), mp.n) % mp.n;
  if (pixel > kMaxCipherPixel) {
    throw Error(Errc::RootMismatch, "root " + std::to_string(root) + " decrypts outside the pixel range");
  }
  return static_cast<std::uint8_t>(pixel);
}

/// One participant's share. values[i] is F_i(x_coord) for permuted pixel i.
struct ShadowImage {
  std::uint8_t x_coord = 1;
  std::uint8_t k = 1;
  std::uint8_t n_shares = 1;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint64_t perm_seed = 0;
  std::vector<std::uint16_t> values;

  friend bool operator==(const ShadowImage&, const ShadowImage&) = default;
};

/// Shares with an explicit coefficient source; params.coeff_seed is ignored.
template <CoefficientSource Source>
std::vector<ShadowImage> share_image(const GrayImage& img, const SchemeParams& params,
                                     Source& coeff_source) {
  params.validate();
  img.validate();
  const auto& classifier = default_classifier();
  const GrayImage shuffled = permute_pixels(clamp_image(img), params.perm_seed);

  std::vector<ShadowImage> shadows(params.n_shares);
  for (std::size_t j = 0; j < params.n_shares; ++j) {
    auto& s = shadows[j];
    s.x_coord = static_cast<std::uint8_t>(j + 1);
    s.k = static_cast<std::uint8_t>(params.k);
    s.n_shares = static_cast<std::uint8_t>(params.n_shares);
    s.width = img.width;
    s.height = img.height;
    s.perm_seed = params.perm_seed;
    s.values.resize(img.pixel_count());
  }

  for (std::size_t i = 0; i < shuffled.pixels.size(); ++i) {
    const auto root = encrypt_pixel(shuffled.pixels[i], classifier).root;
    const auto points = share_secret(root, params.k, params.n_shares, coeff_source);
    for (std::size_t j = 0; j < params.n_shares; ++j) {
      shadows[j].values[i] = static_cast<std::uint16_t>(points[j].y);
    }
  }
  return shadows;
}

inline std::vector<ShadowImage> share_image(const GrayImage& img, const SchemeParams& params) {
  SplitMix64 coeffs(params.coeff_seed);
  return share_image(img, params, coeffs);
}

namespace detail {

template <typename Shadow>
void check_shadow_set(std::span<const Shadow> shadows) {
  if (shadows.empty()) throw Error(Errc::InsufficientShares, "no shadows supplied");
  const auto& ref = shadows.front();
  for (const auto& s : shadows) {
    if (s.k != ref.k || s.n_shares != ref.n_shares || s.width != ref.width ||
        s.height != ref.height || s.perm_seed != ref.perm_seed) {
      throw Error(Errc::HeaderMismatch, "shadows come from different sharing runs");
    }
  }
  for (std::size_t i = 0; i < shadows.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (shadows[i].x_coord == shadows[j].x_coord) {
        throw Error(Errc::DuplicateX,
                    "two shadows carry x = " + std::to_string(shadows[i].x_coord));
      }
    }
  }
  if (shadows.size() < ref.k) {
    throw Error(Errc::InsufficientShares, "need " + std::to_string(ref.k) + " shadows, got " +
                                              std::to_string(shadows.size()));
  }
}

}  // namespace detail

/// Reconstructs from the first k shadows; any extra shadows only take part in
/// the header consistency check.
inline GrayImage reveal_image(std::span<const ShadowImage> shadows) {
  detail::check_shadow_set(shadows);
  const auto& ref = shadows.front();
  const std::size_t k = ref.k;
  const std::size_t count = std::size_t{ref.width} * ref.height;
  for (std::size_t j = 0; j < k; ++j) {
    if (shadows[j].values.size() != count) {
      throw Error(Errc::HeaderMismatch, "shadow payload does not match its dimensions");
    }
  }

  std::vector<std::uint32_t> xs(k);
  for (std::size_t j = 0; j < k; ++j) xs[j] = shadows[j].x_coord;
  const auto weights = lagrange_weights_at_zero<ShareField>(xs);

  const auto& classifier = default_classifier();
  std::vector<std::uint8_t> shuffled(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t root = 0;
    for (std::size_t j = 0; j < k; ++j) {
      root = ShareField::add(root, ShareField::mul(weights[j], ShareField::reduce(shadows[j].values[i])));
    }
    shuffled[i] = decrypt_root(root, classifier);
  }
  return GrayImage(ref.width, ref.height, undo_shuffle<std::uint8_t>(shuffled, ref.perm_seed));
}

}  // namespace qrss
