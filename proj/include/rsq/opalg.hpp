#pragma once

#include <map>

#include "rsq/rmat.hpp"

namespace rsq {

struct FlavorMismatch : std::domain_error {
  using std::domain_error::domain_error;
};

enum class OpFlavor {
  Shift,  // monomial S^a, S_i : q_i -> q_i - hbar, exponents any sign
  Deriv,  // monomial D^a over the flavor derivations, exponents >= 0
};

// multi-index over positions
struct OpMonomial {
  std::array<int, kMaxVars> a{};

  static OpMonomial unit(int pos, int k = 1) {
    OpMonomial m;
    m.a[static_cast<std::size_t>(pos)] = k;
    return m;
  }

  bool is_identity() const {
    for (int x : a)
      if (x) return false;
    return true;
  }

  OpMonomial plus(const OpMonomial& o) const {
    OpMonomial r;
    for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] + o.a[k];
    return r;
  }

  friend bool operator==(const OpMonomial& x, const OpMonomial& y) { return x.a == y.a; }
  friend bool operator<(const OpMonomial& x, const OpMonomial& y) { return x.a < y.a; }
};

// Finite sum of (matrix coefficient) * (monomial), coefficients kept left of
// monomials; no zero coefficient is stored, so zero testing is per-monomial.
class MatOperator {
 public:
  MatOperator() = default;
  MatOperator(VarSpacePtr space, int base, int legs, OpFlavor flavor)
      : space_(std::move(space)), base_(base), legs_(legs), flavor_(flavor) {}

  static MatOperator identity(const VarSpacePtr& space, int base, int legs, OpFlavor flavor) {
    MatOperator op(space, base, legs, flavor);
    op.add_term(OpMonomial{}, RMat::identity(space, base, legs));
    return op;
  }
  static MatOperator from_mat(const RMat& m, OpFlavor flavor) {
    MatOperator op(m.space(), m.base(), m.legs(), flavor);
    op.add_term(OpMonomial{}, m);
    return op;
  }
  static MatOperator monomial(const RMat& coeff, const OpMonomial& m, OpFlavor flavor) {
    MatOperator op(coeff.space(), coeff.base(), coeff.legs(), flavor);
    op.add_term(m, coeff);
    return op;
  }
  // sum_i (E_ii on the given leg) S_i^dir, dir = +1 or -1
  static MatOperator shift_perm(const VarSpacePtr& space, int base, int legs, int leg, int dir);

  const VarSpacePtr& space() const { return space_; }
  int base() const { return base_; }
  int legs() const { return legs_; }
  OpFlavor flavor() const { return flavor_; }
  const std::map<OpMonomial, RMat>& terms() const { return terms_; }

  void add_term(const OpMonomial& m, const RMat& coeff);

  MatOperator operator+(const MatOperator& o) const;
  MatOperator operator-(const MatOperator& o) const;
  MatOperator operator-() const;
  MatOperator operator*(const MatOperator& o) const;
  MatOperator& operator+=(const MatOperator& o);
  MatOperator& operator-=(const MatOperator& o);
  MatOperator times(const RatFun& f) const;  // multiply coefficients on the left
  MatOperator scaled(const Scalar& c) const;

  MatOperator embed(const std::vector<int>& positions, int total_legs) const;
  MatOperator partial_trace(const std::vector<int>& traced_legs) const;
  MatOperator partial_transpose(int leg) const;

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  // total numerator term count over all coefficients (residual size metric)
  std::size_t residual_terms() const;

  // act on a matrix-valued test function: sum_a C_a * sigma^a(F) (shift) or
  // sum_a C_a * D^a(F) (deriv); satisfies (ab)(F) = a(b(F))
  RMat apply(const RMat& F) const;
  RMat apply(const RatFun& f) const;

  std::string str() const;

 private:
  void check_compatible(const MatOperator& o) const;

  VarSpacePtr space_;
  int base_ = 0, legs_ = 0;
  OpFlavor flavor_ = OpFlavor::Shift;
  std::map<OpMonomial, RMat> terms_;
};

MatOperator op_commutator(const MatOperator& a, const MatOperator& b);

// coefficient helpers: plain matrices acting as monomial-free operators
MatOperator operator*(const RMat& m, const MatOperator& op);
MatOperator operator*(const MatOperator& op, const RMat& m);

// entrywise q_k -> q_k - a_k hbar
RMat mat_shift(const RMat& m, const OpMonomial& a);
// entrywise flavor derivation D^mu (all exponents >= 0)
RMat mat_derive(const RMat& m, const OpMonomial& mu);

}  // namespace rsq
