#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrss/error.hpp"
#include "qrss/field_shamir.hpp"

namespace qrss {

/// Row-major 8-bit grayscale raster.
struct GrayImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(std::uint32_t w, std::uint32_t h, std::vector<std::uint8_t> px)
      : width(w), height(h), pixels(std::move(px)) {
    validate();
  }
  GrayImage(std::uint32_t w, std::uint32_t h, std::uint8_t fill = 0)
      : GrayImage(w, h, std::vector<std::uint8_t>(std::size_t{w} * h, fill)) {}

  std::size_t pixel_count() const noexcept { return std::size_t{width} * height; }

  std::uint8_t& at(std::uint32_t row, std::uint32_t col) { return pixels[std::size_t{row} * width + col]; }
  std::uint8_t at(std::uint32_t row, std::uint32_t col) const { return pixels[std::size_t{row} * width + col]; }

  void validate() const {
    if (width < 1 || height < 1) {
      throw Error(Errc::InvalidArgument, "image dimensions must be positive");
    }
    if (pixels.size() != pixel_count()) {
      throw Error(Errc::InvalidArgument, "pixel buffer holds " + std::to_string(pixels.size()) +
                                             " values, expected " + std::to_string(pixel_count()));
    }
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct SchemeParams {
  std::size_t k = 2;
  std::size_t n_shares = 2;
  std::uint64_t perm_seed = 0;
  std::uint64_t coeff_seed = 0;

  /// Shares are addressed by a one-byte x-coordinate.
  static constexpr std::size_t kMaxShares = 255;

  void validate() const { check_threshold(k, n_shares, kMaxShares); }
};

}  // namespace qrss
