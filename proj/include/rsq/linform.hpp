#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "rsq/poly.hpp"
#include "rsq/varspace.hpp"

namespace rsq {

// Denominator atom. Either an integer-coefficient affine-linear form in the
// variables (content 1, first nonzero variable coefficient positive), or the
// v-space binomial v_i^2 - v_j^2 with i < j. Builders return (atom, unit)
// with input = unit * atom; units are folded into numerators by callers.
class LinForm {
 public:
  enum class Kind { Linear, SqDiff };

  // q_i - q_j + hmult*hbar + gmult*gamma + c. Bound couplings fold into the
  // constant term. Works for both flavors (positions are v_i in V flavor).
  static std::pair<LinForm, Scalar> position_diff(const VarSpacePtr& space, int i, int j,
                                                  long hmult = 0, long gmult = 0,
                                                  const Scalar& c = Scalar(0));

  // single variable as an atom (v_i, or an unbound coupling)
  static std::pair<LinForm, Scalar> single_var(const VarSpacePtr& space, int var);

  // generic affine form over all variables with rational coefficients
  static std::pair<LinForm, Scalar> affine(const VarSpacePtr& space,
                                           const std::array<Scalar, kMaxVars>& coeff,
                                           const Scalar& c0);

  // v_i^2 - v_j^2 (V flavor only)
  static std::pair<LinForm, Scalar> sq_diff(const VarSpacePtr& space, int i, int j);

  // recognize c * atom; nullopt if the poly has neither supported shape
  static std::optional<std::pair<LinForm, Scalar>> from_poly(const VarSpacePtr& space,
                                                             const Poly& p);

  Kind kind() const { return kind_; }
  Poly to_poly() const;
  Poly derive(int var) const;
  bool depends_on(int var) const;

  // substitute q_k -> q_k - a_k * hbar; Q flavor only
  std::pair<LinForm, Scalar> shift(const VarSpacePtr& space,
                                   const std::array<long, kMaxVars>& amount) const;

  Scalar eval(const std::vector<Scalar>& point) const;
  std::uint64_t eval_mod(const std::array<std::uint64_t, kMaxVars>& point) const;

  // a pseudo-random point (mod p) on the atom's zero set; branch selects the
  // sheet for SqDiff (v_i = v_j vs v_i = -v_j)
  std::optional<std::array<std::uint64_t, kMaxVars>> screen_root(RandomSource& rng,
                                                                 int nvars,
                                                                 int branch) const;

  std::string str(const VarSpace& space) const;

  friend bool operator==(const LinForm& a, const LinForm& b);
  friend bool operator<(const LinForm& a, const LinForm& b);

 private:
  Kind kind_ = Kind::Linear;
  std::array<long long, kMaxVars> c_{};  // Linear coefficients
  long long c0_ = 0;                     // Linear constant
  int i_ = -1, j_ = -1;                  // SqDiff variables
};

}  // namespace rsq
