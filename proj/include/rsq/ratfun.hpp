#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rsq/linform.hpp"
#include "rsq/poly.hpp"
#include "rsq/varspace.hpp"

namespace rsq {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct FactorMismatch : std::domain_error {
  using std::domain_error::domain_error;
};

struct ZeroDivision : std::domain_error {
  using std::domain_error::domain_error;
};

// sorted by atom, unique atoms, powers >= 1
using DenFactors = std::vector<std::pair<LinForm, int>>;

// Rational function kept as numerator polynomial over a multiset of
// denominator atoms. Invariants: numerator zero implies empty denominator;
// no denominator atom divides the numerator (enforced by mod-p screened
// trial division at construction). There is no general gcd anywhere; the
// only inversion is rf_inv_factored below.
class RatFun {
 public:
  // usable additive zero that adopts the peer's space in arithmetic
  RatFun() = default;

  static RatFun zero(const VarSpacePtr& space);
  static RatFun one(const VarSpacePtr& space);
  static RatFun constant(const VarSpacePtr& space, const Scalar& c);
  static RatFun from_poly(const VarSpacePtr& space, Poly p);
  // normalizing constructor: merges duplicate atoms, cancels what divides
  static RatFun make(const VarSpacePtr& space, Poly num, DenFactors den);

  const VarSpacePtr& space() const { return space_; }
  bool is_zero() const { return !rep_ || rep_->num.is_zero(); }
  bool is_constant() const;
  const Poly& num() const;
  const DenFactors& den() const;
  std::size_t num_terms() const { return rep_ ? rep_->num.term_count() : 0; }

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  RatFun scaled(const Scalar& c) const;

  bool operator==(const RatFun& o) const;
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  // plain partial d/d(var)
  RatFun derive(int var) const;
  // flavor derivation at position pos: d/dq_pos, or (v_pos/2) d/dv_pos
  RatFun derivation(int pos) const;
  // substitute q_k -> q_k - amount[k] * hbar for every position k (Q flavor)
  RatFun shift(const std::array<long, kMaxVars>& amount) const;

  Scalar eval(const std::vector<Scalar>& point) const;  // PoleError at poles
  std::uint64_t eval_mod(const std::array<std::uint64_t, kMaxVars>& point) const;

  std::string str() const;

 private:
  struct Rep {
    Poly num;
    DenFactors den;
  };

  RatFun(VarSpacePtr space, std::shared_ptr<const Rep> rep)
      : space_(std::move(space)), rep_(std::move(rep)) {}

  // bypasses cancellation; caller guarantees the invariants already hold
  static RatFun trusted(VarSpacePtr space, Poly num, DenFactors den);

  VarSpacePtr space_;
  std::shared_ptr<const Rep> rep_;
};

// 1/f from the caller-supplied factorization f.num == unit * prod(atom^pow),
// verified by exact expansion; FactorMismatch if it does not hold or f == 0.
RatFun rf_inv_factored(const RatFun& f, const Scalar& unit, const DenFactors& num_factors);

// auto-factorizing wrapper for numerators that are a constant or unit * atom
RatFun rf_reciprocal(const RatFun& f);

RatFun rf_var(const VarSpacePtr& space, int var);
RatFun rf_hbar(const VarSpacePtr& space);   // bound value or the symbol
RatFun rf_gamma(const VarSpacePtr& space);  // bound value or the symbol

// q_i - q_j + hmult*hbar + gmult*gamma + c, as a function
RatFun rf_posdiff(const VarSpacePtr& space, int i, int j, long hmult = 0, long gmult = 0,
                  const Scalar& c = Scalar(0));
// its reciprocal (the pervasive 1/(q_i - q_j + ...))
RatFun rf_recip_posdiff(const VarSpacePtr& space, int i, int j, long hmult = 0, long gmult = 0,
                        const Scalar& c = Scalar(0));
// 1/(v_i^2 - v_j^2), V flavor
RatFun rf_recip_sqdiff(const VarSpacePtr& space, int i, int j);

}  // namespace rsq
