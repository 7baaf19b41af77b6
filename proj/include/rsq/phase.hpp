#pragma once

#include <map>

#include "rsq/opalg.hpp"

namespace rsq {

// Function on classical phase space: polynomial in the momentum symbols with
// RatFun coefficients. Q flavor pairs q_i with multiplicative momenta
// PP_i = e^{p_i}; V flavor pairs v_i with additive momenta p_i.
class PhaseFun {
 public:
  PhaseFun() = default;
  explicit PhaseFun(VarSpacePtr space) : space_(std::move(space)) {}

  static PhaseFun zero(const VarSpacePtr& space) { return PhaseFun(space); }
  static PhaseFun from_rf(const RatFun& f);
  static PhaseFun one(const VarSpacePtr& space) { return from_rf(RatFun::one(space)); }
  // the momentum symbol at a position, to the k-th power
  static PhaseFun momentum(const VarSpacePtr& space, int pos, int k = 1);

  const VarSpacePtr& space() const { return space_; }
  const std::map<OpMonomial, RatFun>& terms() const { return terms_; }
  void add_term(const OpMonomial& m, const RatFun& c);

  bool is_zero() const { return terms_.empty(); }
  bool momentum_free() const;

  PhaseFun operator+(const PhaseFun& o) const;
  PhaseFun operator-(const PhaseFun& o) const;
  PhaseFun operator-() const;
  PhaseFun operator*(const PhaseFun& o) const;
  PhaseFun& operator+=(const PhaseFun& o);
  PhaseFun& operator-=(const PhaseFun& o);
  PhaseFun times(const RatFun& f) const;
  PhaseFun scaled(const Scalar& c) const;

  bool operator==(const PhaseFun& o) const;
  bool operator!=(const PhaseFun& o) const { return !(*this == o); }

  // coefficient-wise position derivative (flavor derivation for V)
  PhaseFun derive_pos(int i) const;
  // Q flavor: PP_i d/dPP_i (Euler weight); V flavor: d/dp_i
  PhaseFun derive_mom(int i) const;

  Scalar eval(const std::vector<Scalar>& qpoint, const std::vector<Scalar>& ppoint) const;
  std::size_t residual_terms() const;
  std::string str() const;

 private:
  VarSpacePtr space_;
  std::map<OpMonomial, RatFun> terms_;
};

PhaseFun pbracket(const PhaseFun& f, const PhaseFun& g);

// Matrix over PhaseFun with the same tensor-leg layout as RMat.
class PhaseMat {
 public:
  PhaseMat() = default;
  PhaseMat(VarSpacePtr space, int base, int legs);

  static PhaseMat identity(const VarSpacePtr& space, int base, int legs);
  static PhaseMat from_rmat(const RMat& m);

  const VarSpacePtr& space() const { return space_; }
  int base() const { return base_; }
  int legs() const { return legs_; }
  int dim() const { return dim_; }

  PhaseFun& at(int r, int c) { return ent_[static_cast<std::size_t>(r) * dim_ + c]; }
  const PhaseFun& at(int r, int c) const {
    return ent_[static_cast<std::size_t>(r) * dim_ + c];
  }

  PhaseMat operator+(const PhaseMat& o) const;
  PhaseMat operator-(const PhaseMat& o) const;
  PhaseMat operator-() const;
  PhaseMat operator*(const PhaseMat& o) const;
  PhaseMat& operator+=(const PhaseMat& o);
  PhaseMat& operator-=(const PhaseMat& o);
  PhaseMat times(const PhaseFun& f) const;
  PhaseMat scaled(const Scalar& c) const;
  PhaseMat kron(const PhaseMat& o) const;
  PhaseMat embed(const std::vector<int>& positions, int total_legs) const;
  PhaseMat swap_legs(int a, int b) const;
  PhaseFun trace() const;

  bool operator==(const PhaseMat& o) const;
  bool operator!=(const PhaseMat& o) const { return !(*this == o); }
  bool is_zero() const;
  std::size_t residual_terms() const;

 private:
  void check_same_shape(const PhaseMat& o) const;

  VarSpacePtr space_;
  int base_ = 0, legs_ = 0, dim_ = 0;
  std::vector<PhaseFun> ent_;
};

// {M_1, N_2}: entrywise brackets arranged on concatenated legs
PhaseMat pbracket_tensor(const PhaseMat& m, const PhaseMat& n);

PhaseMat operator*(const RMat& a, const PhaseMat& b);
PhaseMat operator*(const PhaseMat& a, const RMat& b);

}  // namespace rsq
