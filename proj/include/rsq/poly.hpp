#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rsq/scalar.hpp"
#include "rsq/varspace.hpp"

namespace rsq {

// Exponent vector, fixed capacity kMaxVars. Unused slots stay zero.
struct Mono {
  std::array<std::uint16_t, kMaxVars> e{};

  static Mono unit(int var, std::uint16_t exp = 1) {
    Mono m;
    m.e[static_cast<std::size_t>(var)] = exp;
    return m;
  }

  bool is_constant() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }

  int total_degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }

  Mono times(const Mono& o) const;  // throws on exponent overflow
  bool divisible_by(const Mono& o) const;
  Mono divide(const Mono& o) const;

  // lex order, variable 0 most significant
  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
  friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
  friend bool operator>(const Mono& a, const Mono& b) { return b < a; }
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto x : m.e) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Sparse polynomial with exact rational coefficients. Terms are kept sorted
// in descending lex order (leading term first) and never hold a zero
// coefficient, so representations are canonical.
class Poly {
 public:
  using Term = std::pair<Mono, Scalar>;

  Poly() = default;
  static Poly zero() { return Poly(); }
  static Poly constant(const Scalar& c);
  static Poly variable(int idx);
  static Poly monomial(Mono m, Scalar c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_constant());
  }
  int total_degree() const;
  int degree_in(int var) const;
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);

  Poly scaled(const Scalar& c) const;
  Poly times_monomial(const Mono& m, const Scalar& c) const;
  Poly pow(int k) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // d/d(var)
  Poly derive(int var) const;

  // substitute variable `var` by `repl` (which may mention `var` itself);
  // evaluated by Horner on the grouped coefficients
  Poly substitute(int var, const Poly& repl) const;

  Scalar eval(const std::vector<Scalar>& point) const;
  std::uint64_t eval_mod(const std::array<std::uint64_t, kMaxVars>& point) const;

  // exact division; nullopt if the divisor does not divide exactly
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  // gcd of all coefficient numerators over lcm of denominators, sign of the
  // leading coefficient: this is the unit making the poly integer, content 1,
  // leading coefficient positive. Returns {unit u, P/u}.
  std::pair<Scalar, Poly> normalized() const;

  std::string str(const VarSpace& space) const;

  // raw construction from possibly unsorted/duplicated terms
  static Poly collect(std::vector<Term> raw);

 private:
  std::vector<Term> terms_;
};

}  // namespace rsq
