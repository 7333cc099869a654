#pragma once

// Replays the single-pixel walkthrough p = 150, (k, n) = (3, 5), with the
// sharing polynomial 52954 + 173x + 167x^2, and checks every intermediate
// value against a pinned table.

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "qrss/field_shamir.hpp"
#include "qrss/numtheory.hpp"
#include "qrss/qrss_scheme.hpp"

namespace qrss {

struct WorkedExample {
  std::uint8_t pixel = 150;
  std::size_t k = 3;
  std::size_t n_shares = 5;
  ResidueCase expected_case = ResidueCase::QrQnr;
  std::uint64_t expected_r = 2;
  std::uint64_t expected_product = 300;
  SquareRoots expected_roots{42677, 52954, 7035, 17312};
  std::uint64_t expected_root = 52954;
  std::vector<std::uint32_t> coefficients{173, 167};
  std::array<std::size_t, 3> reveal_subset{1, 3, 5};
};

/// Feeds a fixed list of coefficients to share_secret.
class FixedCoefficients {
 public:
  explicit FixedCoefficients(std::vector<std::uint32_t> values) : values_(std::move(values)) {}

  std::uint64_t uniform(std::uint64_t bound) {
    const std::uint64_t v = next_ < values_.size() ? values_[next_] : 0;
    ++next_;
    return v % bound;
  }

 private:
  std::vector<std::uint32_t> values_;
  std::size_t next_ = 0;
};

/// Prints the trace to `out` and returns false at the first stage that
/// disagrees with `ex`.
inline bool run_worked_example(std::ostream& out, const WorkedExample& ex = {}) {
  bool ok = true;
  const auto check = [&](bool cond, const char* stage) {
    if (!cond) {
      out << "MISMATCH at " << stage << "\n";
      ok = false;
    }
    return cond;
  };

  const auto& classifier = default_classifier();
  const std::uint64_t n = classifier.modulus().n;
  out << "pixel p = " << int{ex.pixel} << ", n = " << ex.n_shares << ", k = " << ex.k << "\n";

  const ResidueCase t = classifier.classify(ex.pixel);
  out << "case = " << case_number(t) << "\n";
  if (!check(t == ex.expected_case, "case")) return false;

  const std::uint64_t r = classifier.parameter(t);
  out << "r = " << r << "\n";
  if (!check(r == ex.expected_r, "case parameter")) return false;

  const std::uint64_t product = ex.pixel * r % n;
  out << "p_bar = " << product << "\n";
  if (!check(product == ex.expected_product, "product")) return false;

  const auto roots = four_square_roots(product);
  out << "roots mod " << n << " = (" << roots[0] << ", " << roots[1] << ", " << roots[2] << ", "
      << roots[3] << ")\n";
  if (!check(roots == ex.expected_roots, "square roots")) return false;

  const auto enc = encrypt_pixel(ex.pixel, classifier);
  out << "M = " << enc.root << "\n";
  if (!check(enc.root == ex.expected_root && enc.case_t == ex.expected_case, "chosen root")) return false;

  FixedCoefficients source(ex.coefficients);
  const auto points = share_secret(enc.root, ex.k, ex.n_shares, source);
  const SharingPolynomial poly{enc.root, ex.coefficients};
  out << "f(x) = " << enc.root;
  for (std::size_t d = 0; d < ex.coefficients.size(); ++d) {
    out << " + " << ex.coefficients[d] << "x";
    if (d > 0) out << "^" << d + 1;
  }
  out << " (mod " << ShareField::modulus << ")\n";
  for (const auto& pt : points) {
    out << "  share x = " << pt.x << ": " << pt.y << "\n";
    check(pt.y == poly_eval(poly, pt.x), "share evaluation");
  }
  if (!ok) return false;

  std::vector<SharePoint> subset;
  for (const auto x : ex.reveal_subset) {
    if (x < 1 || x > points.size()) {
      check(false, "reveal subset");
      return false;
    }
    subset.push_back(points[x - 1]);
  }
  const auto recovered_root = reconstruct_secret(subset, ex.k);
  out << "M' from shares {" << ex.reveal_subset[0] << ", " << ex.reveal_subset[1] << ", "
      << ex.reveal_subset[2] << "} = " << recovered_root << "\n";
  if (!check(recovered_root == ex.expected_root, "reconstruction")) return false;

  const std::uint64_t square = std::uint64_t{recovered_root} * recovered_root % n;
  out << "M'^2 mod " << n << " = " << square << "\n";
  if (!check(square == ex.expected_product, "reveal square")) return false;

  const auto pixel = decrypt_root(recovered_root, classifier);
  out << "recovered p = " << int{pixel} << "\n";
  check(pixel == ex.pixel, "recovered pixel");
  return ok;
}

}  // namespace qrss
