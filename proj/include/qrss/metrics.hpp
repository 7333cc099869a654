#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "qrss/error.hpp"
#include "qrss/image.hpp"

namespace qrss {

/// psnr_db uses the usual 10*log10(255^2 / MSE). psnr_log2 is the variant
/// log2(255^2 / MSE), reported alongside for comparison with published
/// tables that use it. Both are +infinity when the images are identical.
struct QualityReport {
  double mse = 0.0;
  double psnr_db = std::numeric_limits<double>::infinity();
  double psnr_log2 = std::numeric_limits<double>::infinity();

  bool identical() const noexcept { return mse == 0.0; }
};

inline void check_same_dimensions(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(Errc::DimensionMismatch, std::to_string(a.width) + "x" + std::to_string(a.height) +
                                             " vs " + std::to_string(b.width) + "x" +
                                             std::to_string(b.height));
  }
}

/// Sum of squared differences, exact.
inline std::uint64_t squared_error(const GrayImage& a, const GrayImage& b) {
  check_same_dimensions(a, b);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const std::int64_t d = std::int64_t{a.pixels[i]} - b.pixels[i];
    sum += static_cast<std::uint64_t>(d * d);
  }
  return sum;
}

inline double mse(const GrayImage& a, const GrayImage& b) {
  return static_cast<double>(squared_error(a, b)) / static_cast<double>(a.pixel_count());
}

inline QualityReport psnr(const GrayImage& a, const GrayImage& b) {
  const std::uint64_t sse = squared_error(a, b);
  QualityReport report;
  report.mse = static_cast<double>(sse) / static_cast<double>(a.pixel_count());
  if (sse == 0) return report;
  // 255^2 / MSE == 255^2 * w*h / SSE; keep the ratio in one division.
  const double ratio = 65025.0 * static_cast<double>(a.pixel_count()) / static_cast<double>(sse);
  report.psnr_db = 10.0 * std::log10(ratio);
  report.psnr_log2 = std::log2(ratio);
  return report;
}

}  // namespace qrss
