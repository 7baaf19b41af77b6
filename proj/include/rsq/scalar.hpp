#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rsq {

// Exact rational scalar. mpq_class keeps denominator > 0 and gcd(num,den) = 1
// as long as values are produced through arithmetic or the canonicalizing
// helpers below.
using Scalar = mpq_class;

inline Scalar scal(long num, long den = 1) {
  if (den == 0) throw std::domain_error("scalar: zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

// Accepts "a" or "a/b" with arbitrary-precision integers.
inline Scalar scal_from_string(const std::string& text) {
  Scalar s;
  if (s.set_str(text, 10) != 0)
    throw std::invalid_argument("scalar: cannot parse '" + text + "'");
  if (s.get_den() == 0) throw std::domain_error("scalar: zero denominator");
  s.canonicalize();
  return s;
}

inline bool scal_is_zero(const Scalar& s) { return sgn(s) == 0; }

inline std::string scal_str(const Scalar& s) { return s.get_str(); }

// --- modular arithmetic for probabilistic screens ---------------------------
//
// Screens evaluate polynomials mod a fixed 62-bit prime at pseudo-random
// points. They only ever short-circuit work (skip a hopeless trial division,
// flag a residual as nonzero early); every verdict is recomputed exactly.

inline constexpr std::uint64_t kScreenPrime = 0x1fffffffffffffffULL;  // 2^61-1

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= kScreenPrime) s -= kScreenPrime;
  return s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kScreenPrime - b;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kScreenPrime);
}

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  base %= kScreenPrime;
  while (exp) {
    if (exp & 1) acc = mod_mul(acc, base);
    base = mod_mul(base, base);
    exp >>= 1;
  }
  return acc;
}

inline std::uint64_t mod_inv(std::uint64_t a) {
  if (a % kScreenPrime == 0) throw std::domain_error("mod_inv: zero");
  return mod_pow(a, kScreenPrime - 2);
}

// Image of an exact rational mod the screen prime.
inline std::uint64_t mod_of_scalar(const Scalar& s) {
  std::uint64_t n = mpz_fdiv_ui(s.get_num().get_mpz_t(), kScreenPrime);
  std::uint64_t d = mpz_fdiv_ui(s.get_den().get_mpz_t(), kScreenPrime);
  return mod_mul(n, mod_inv(d));
}

// Deterministic point source for screens and property tests.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : eng_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t mod_value() {
    // avoid 0 so screen points stay away from trivial vanishing
    return eng_() % (kScreenPrime - 2) + 1;
  }

  // small exact rationals for property tests
  Scalar rational(long span = 40) {
    long num = static_cast<long>(eng_() % (2 * span + 1)) - span;
    long den = static_cast<long>(eng_() % span) + 1;
    return scal(num, den);
  }

  std::uint64_t integer(std::uint64_t bound) { return eng_() % bound; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rsq
