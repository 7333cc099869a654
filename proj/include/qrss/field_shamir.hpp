#pragma once

// Shamir (k, n) threshold sharing over a small prime field, with Lagrange
// reconstruction of the constant term and full-coefficient interpolation.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qrss/error.hpp"
#include "qrss/numtheory.hpp"

namespace qrss {

template <std::uint32_t Modulus>
struct PrimeField {
  static_assert(Modulus > 2 && Modulus < (1u << 16), "field elements must fit in 16 bits");

  using value_type = std::uint32_t;
  static constexpr value_type modulus = Modulus;

  static constexpr value_type add(value_type a, value_type b) noexcept {
    return static_cast<value_type>((std::uint64_t{a} + b) % Modulus);
  }
  static constexpr value_type sub(value_type a, value_type b) noexcept {
    return static_cast<value_type>((std::uint64_t{a} + Modulus - b) % Modulus);
  }
  static constexpr value_type mul(value_type a, value_type b) noexcept {
    return static_cast<value_type>(std::uint64_t{a} * b % Modulus);
  }
  static constexpr value_type reduce(std::uint64_t v) noexcept {
    return static_cast<value_type>(v % Modulus);
  }
  /// Throws Errc::NotInvertible for zero.
  static constexpr value_type inv(value_type a) {
    return static_cast<value_type>(mod_inv(a, Modulus));
  }
};

/// Field for sharing the QR-encrypted roots: largest prime below 2^16, and
/// larger than N = 59989 so every root is a field element.
using ShareField = PrimeField<65521>;
static_assert(ShareField::modulus > kModulus.n);

/// Field of the Thien-Lin comparison scheme.
using ByteField = PrimeField<251>;

struct SharePoint {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  friend bool operator==(const SharePoint&, const SharePoint&) = default;
};

struct SharingPolynomial {
  std::uint32_t secret = 0;
  std::vector<std::uint32_t> coeffs;  // m1 .. m_{k-1}

  std::size_t threshold() const noexcept { return coeffs.size() + 1; }
};

/// Anything that hands out uniform integers below a bound, e.g. SplitMix64.
template <typename S>
concept CoefficientSource = requires(S& s, std::uint64_t bound) {
  { s.uniform(bound) } -> std::convertible_to<std::uint64_t>;
};

template <typename Field = ShareField>
constexpr std::uint32_t poly_eval(const SharingPolynomial& poly, std::uint32_t x) {
  const auto xf = Field::reduce(x);
  std::uint32_t acc = 0;
  for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) {
    acc = Field::add(Field::mul(acc, xf), Field::reduce(*it));
  }
  return Field::add(Field::mul(acc, xf), Field::reduce(poly.secret));
}

inline void check_threshold(std::size_t k, std::size_t n_shares, std::size_t max_shares) {
  if (k < 1 || k > n_shares || n_shares > max_shares) {
    throw Error(Errc::BadThreshold, "need 1 <= k <= n <= " + std::to_string(max_shares) +
                                        ", got k=" + std::to_string(k) +
                                        " n=" + std::to_string(n_shares));
  }
}

/// Draws k-1 coefficients from `source` and evaluates at x = 1..n_shares.
template <typename Field = ShareField, CoefficientSource Source>
std::vector<SharePoint> share_secret(std::uint32_t secret, std::size_t k,
                                     std::size_t n_shares, Source& source) {
  check_threshold(k, n_shares, Field::modulus - 1);
  if (secret >= Field::modulus) {
    throw Error(Errc::InvalidArgument, "secret is not a field element");
  }
  SharingPolynomial poly{secret, std::vector<std::uint32_t>(k - 1)};
  for (auto& c : poly.coeffs) {
    c = static_cast<std::uint32_t>(source.uniform(Field::modulus));
  }
  std::vector<SharePoint> points;
  points.reserve(n_shares);
  for (std::uint32_t x = 1; x <= n_shares; ++x) {
    points.push_back({x, poly_eval<Field>(poly, x)});
  }
  return points;
}

namespace detail {

template <typename Field>
void check_points(std::span<const std::uint32_t> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0 || xs[i] >= Field::modulus) {
      throw Error(Errc::InvalidArgument,
                  "x-coordinate " + std::to_string(xs[i]) + " outside [1, modulus)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (xs[i] == xs[j]) {
        throw Error(Errc::DuplicateX, "x-coordinate " + std::to_string(xs[i]) + " repeated");
      }
    }
  }
}

}  // namespace detail

/// Weights w_i with F(0) = sum_i w_i * y_i for the given evaluation points:
/// w_i = prod_{j != i} x_j / (x_j - x_i). Divisions are modular inverses.
template <typename Field = ShareField>
std::vector<std::uint32_t> lagrange_weights_at_zero(std::span<const std::uint32_t> xs) {
  detail::check_points<Field>(xs);
  std::vector<std::uint32_t> weights(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::uint32_t num = 1;
    std::uint32_t den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      num = Field::mul(num, xs[j]);
      den = Field::mul(den, Field::sub(xs[j], xs[i]));
    }
    weights[i] = Field::mul(num, Field::inv(den));
  }
  return weights;
}

/// F(0) from the first k of `points`. Extra points are ignored.
template <typename Field = ShareField>
std::uint32_t reconstruct_secret(std::span<const SharePoint> points, std::size_t k) {
  if (k < 1) throw Error(Errc::BadThreshold, "k must be at least 1");
  if (points.size() < k) {
    throw Error(Errc::InsufficientShares, "need " + std::to_string(k) + " points, got " +
                                              std::to_string(points.size()));
  }
  std::vector<std::uint32_t> xs(k);
  for (std::size_t i = 0; i < k; ++i) xs[i] = points[i].x;
  const auto weights = lagrange_weights_at_zero<Field>(xs);
  std::uint32_t secret = 0;
  for (std::size_t i = 0; i < k; ++i) {
    secret = Field::add(secret, Field::mul(weights[i], Field::reduce(points[i].y)));
  }
  return secret;
}

/// Lagrange basis polynomials for distinct xs, as coefficient rows:
/// basis[i][d] is the x^d coefficient of L_i(x). Interpolating values y then
/// gives coefficient d = sum_i y_i * basis[i][d].
template <typename Field>
std::vector<std::vector<std::uint32_t>> lagrange_basis(std::span<const std::uint32_t> xs) {
  detail::check_points<Field>(xs);
  const std::size_t k = xs.size();
  std::vector<std::vector<std::uint32_t>> basis(k, std::vector<std::uint32_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    // Expand prod_{j != i} (x - x_j) one factor at a time.
    std::vector<std::uint32_t> poly{1};
    std::uint32_t den = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      std::vector<std::uint32_t> next(poly.size() + 1, 0);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] = Field::add(next[d + 1], poly[d]);
        next[d] = Field::sub(next[d], Field::mul(poly[d], xs[j]));
      }
      poly = std::move(next);
      den = Field::mul(den, Field::sub(xs[i], xs[j]));
    }
    const auto den_inv = Field::inv(den);
    for (std::size_t d = 0; d < k; ++d) basis[i][d] = Field::mul(poly[d], den_inv);
  }
  return basis;
}

/// All k coefficients of the unique degree < k polynomial through `points`.
template <typename Field>
std::vector<std::uint32_t> interpolate_coefficients(std::span<const SharePoint> points) {
  std::vector<std::uint32_t> xs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) xs[i] = points[i].x;
  const auto basis = lagrange_basis<Field>(xs);
  std::vector<std::uint32_t> coeffs(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t d = 0; d < points.size(); ++d) {
      coeffs[d] = Field::add(coeffs[d], Field::mul(Field::reduce(points[i].y), basis[i][d]));
    }
  }
  return coeffs;
}

}  // namespace qrss
