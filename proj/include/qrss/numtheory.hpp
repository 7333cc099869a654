#pragma once

// Modular arithmetic and quadratic-residue machinery for the composite
// modulus N = p*q with p = 239, q = 251 (both congruent to 3 mod 4).
//
// Every modulus used by this library is below 2^17, so all intermediate
// products fit comfortably in 64-bit unsigned arithmetic.

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qrss/error.hpp"

namespace qrss {

/// base^exp mod m by square-and-multiply. Requires m >= 1 and m < 2^32.
constexpr std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp,
                                std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

/// Inverse of x modulo m via the extended Euclidean algorithm.
/// Throws Errc::NotInvertible when gcd(x, m) != 1.
constexpr std::uint64_t mod_inv(std::uint64_t x, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = static_cast<std::int64_t>(x % m);
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t quotient = old_r / r;
    std::int64_t tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(Errc::NotInvertible, std::to_string(x) + " has no inverse modulo " +
                                         std::to_string(m));
  }
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((old_s % sm) + sm) % sm);
}

/// Euler's criterion: x^((prime-1)/2) == 1 (mod prime).
/// Throws Errc::NotCoprime when prime divides x.
constexpr bool is_qr(std::uint64_t x, std::uint64_t prime) {
  x %= prime;
  if (x == 0) {
    throw Error(Errc::NotCoprime,
                "value is divisible by " + std::to_string(prime));
  }
  return mod_pow(x, (prime - 1) / 2, prime) == 1;
}

struct ModulusPair {
  std::uint64_t p;
  std::uint64_t q;
  std::uint64_t n;
  std::uint64_t crt_a;  // == 1 mod p, == 0 mod q
  std::uint64_t crt_b;  // == 0 mod p, == 1 mod q
};

/// Builds the pair for two distinct primes p, q with p == q == 3 (mod 4).
/// Primality is the caller's responsibility.
constexpr ModulusPair make_modulus_pair(std::uint64_t p, std::uint64_t q) {
  if ((p + 1) % 4 != 0 || (q + 1) % 4 != 0 || p == q) {
    throw Error(Errc::InvalidArgument,
                "modulus primes must be distinct and congruent to 3 mod 4");
  }
  const std::uint64_t n = p * q;
  return ModulusPair{p, q, n, q * mod_inv(q, p) % n, p * mod_inv(p, q) % n};
}

constexpr ModulusPair build_modulus_pair() { return make_modulus_pair(239, 251); }

inline constexpr ModulusPair kModulus = build_modulus_pair();

static_assert(kModulus.n == 59989);
static_assert((kModulus.crt_a + kModulus.crt_b) % kModulus.n == 1);

/// Which of the four QR/QNR combinations (mod p, mod q) a value falls into.
/// The numeric value is the 1-based case index t.
enum class ResidueCase : std::uint8_t {
  QrQr = 1,
  QrQnr = 2,
  QnrQr = 3,
  QnrQnr = 4,
};

constexpr int case_number(ResidueCase c) noexcept { return static_cast<int>(c); }

/// Root tuple (M1, M2, M3, M4) in the CRT combination order
/// M1 = a*m1 + b*m3, M2 = a*m1 + b*m4, M3 = a*m2 + b*m3, M4 = a*m2 + b*m4.
using SquareRoots = std::array<std::uint64_t, 4>;

constexpr std::uint64_t root_for(const SquareRoots& roots, ResidueCase c) noexcept {
  return roots[static_cast<std::size_t>(case_number(c) - 1)];
}

/// Precomputed QR membership tables for p and q plus the case parameters
/// r1..r4. Each r_t is the smallest positive integer of case t, so that
/// multiplying a case-t value by r_t makes it a residue modulo both primes.
/// Immutable after construction.
class ResidueClassifier {
 public:
  explicit ResidueClassifier(const ModulusPair& mp = kModulus)
      : mp_(mp), qr_p_(mp.p, 0), qr_q_(mp.q, 0) {
    for (std::uint64_t x = 1; x < mp.p; ++x) qr_p_[x] = is_qr(x, mp.p) ? 1 : 0;
    for (std::uint64_t x = 1; x < mp.q; ++x) qr_q_[x] = is_qr(x, mp.q) ? 1 : 0;

    bool found[4] = {false, false, false, false};
    int remaining = 4;
    for (std::uint64_t x = 1; remaining > 0; ++x) {
      if (x % mp.p == 0 || x % mp.q == 0) continue;
      const auto idx = static_cast<std::size_t>(case_number(classify(x)) - 1);
      if (!found[idx]) {
        found[idx] = true;
        r_params_[idx] = x;
        --remaining;
      }
    }
  }

  const ModulusPair& modulus() const noexcept { return mp_; }

  bool qr_mod_p(std::uint64_t x) const {
    check_coprime(x % mp_.p, mp_.p);
    return qr_p_[x % mp_.p] != 0;
  }

  bool qr_mod_q(std::uint64_t x) const {
    check_coprime(x % mp_.q, mp_.q);
    return qr_q_[x % mp_.q] != 0;
  }

  /// Throws Errc::NotCoprime if gcd(x, N) != 1.
  ResidueCase classify(std::uint64_t x) const {
    const bool rp = qr_mod_p(x);
    const bool rq = qr_mod_q(x);
    if (rp) return rq ? ResidueCase::QrQr : ResidueCase::QrQnr;
    return rq ? ResidueCase::QnrQr : ResidueCase::QnrQnr;
  }

  std::uint64_t parameter(ResidueCase c) const noexcept {
    return r_params_[static_cast<std::size_t>(case_number(c) - 1)];
  }

  const std::array<std::uint64_t, 4>& parameters() const noexcept { return r_params_; }

 private:
  static void check_coprime(std::uint64_t residue, std::uint64_t prime) {
    if (residue == 0) {
      throw Error(Errc::NotCoprime, "value is divisible by " + std::to_string(prime));
    }
  }

  ModulusPair mp_;
  std::vector<std::uint8_t> qr_p_;
  std::vector<std::uint8_t> qr_q_;
  std::array<std::uint64_t, 4> r_params_{};
};

inline const ResidueClassifier& default_classifier() {
  static const ResidueClassifier classifier{kModulus};
  return classifier;
}

inline ResidueCase classify_case(std::uint64_t x) {
  return default_classifier().classify(x);
}

inline std::uint64_t case_parameter(ResidueCase c) {
  return default_classifier().parameter(c);
}

/// The four square roots of x modulo N. x must be a residue modulo both
/// primes, or 0 (which yields four zero roots).
/// Throws Errc::NotQuadraticResidue otherwise.
constexpr SquareRoots four_square_roots(std::uint64_t x,
                                        const ModulusPair& mp = kModulus) {
  x %= mp.n;
  if (x == 0) return SquareRoots{0, 0, 0, 0};
  const std::uint64_t xp = x % mp.p;
  const std::uint64_t xq = x % mp.q;
  if (xp == 0 || xq == 0 || mod_pow(xp, (mp.p - 1) / 2, mp.p) != 1 ||
      mod_pow(xq, (mp.q - 1) / 2, mp.q) != 1) {
    throw Error(Errc::NotQuadraticResidue,
                std::to_string(x) + " is not a residue modulo both primes");
  }
  const std::uint64_t m1 = mod_pow(xp, (mp.p + 1) / 4, mp.p);
  const std::uint64_t m2 = (mp.p - m1) % mp.p;
  const std::uint64_t m3 = mod_pow(xq, (mp.q + 1) / 4, mp.q);
  const std::uint64_t m4 = (mp.q - m3) % mp.q;
  const auto combine = [&](std::uint64_t rp, std::uint64_t rq) {
    return (mp.crt_a * rp + mp.crt_b * rq) % mp.n;
  };
  return SquareRoots{combine(m1, m3), combine(m1, m4), combine(m2, m3),
                     combine(m2, m4)};
}

}  // namespace qrss
