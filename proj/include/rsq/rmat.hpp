#pragma once

#include <vector>

#include "rsq/ratfun.hpp"

namespace rsq {

struct BadPositions : std::domain_error {
  using std::domain_error::domain_error;
};

// Square matrix over RatFun with explicit tensor-leg structure. Dimension is
// base^legs; rows/columns are flattened row-major with leg 1 most
// significant. Legs are 1-based at the interface. legs = 0 is a scalar.
class RMat {
 public:
  RMat() = default;
  RMat(VarSpacePtr space, int base, int legs);  // zero matrix

  static RMat identity(const VarSpacePtr& space, int base, int legs);
  // E_ij on one leg
  static RMat elem(const VarSpacePtr& space, int base, int i, int j);
  // permutation operator sum_ij E_ij (x) E_ji on two legs
  static RMat perm_C(const VarSpacePtr& space, int base);

  const VarSpacePtr& space() const { return space_; }
  int base() const { return base_; }
  int legs() const { return legs_; }
  int dim() const { return dim_; }

  RatFun& at(int r, int c) { return ent_[static_cast<std::size_t>(r) * dim_ + c]; }
  const RatFun& at(int r, int c) const {
    return ent_[static_cast<std::size_t>(r) * dim_ + c];
  }

  RMat operator+(const RMat& o) const;
  RMat operator-(const RMat& o) const;
  RMat operator-() const;
  RMat operator*(const RMat& o) const;  // matrix product
  RMat& operator+=(const RMat& o);
  RMat& operator-=(const RMat& o);
  RMat times(const RatFun& f) const;  // entrywise scale
  RMat scaled(const Scalar& c) const;

  RMat kron(const RMat& o) const;  // legs concatenate, this first
  // act as *this on the named legs (distinct, 1-based), identity elsewhere
  RMat embed(const std::vector<int>& positions, int total_legs) const;
  RMat transpose() const;
  RMat partial_transpose(int leg) const;
  RMat partial_trace(const std::vector<int>& traced_legs) const;  // removes legs
  RatFun trace() const;
  RMat swap_legs(int a, int b) const;

  bool operator==(const RMat& o) const;
  bool operator!=(const RMat& o) const { return !(*this == o); }
  bool is_zero() const;
  // largest numerator term count over all entries (residual size reporting)
  std::size_t max_entry_terms() const;

  std::string str() const;

 private:
  void decode(int flat, int* digits) const;  // legs_ digits, leg 1 first
  int encode(const int* digits) const;
  void check_same_shape(const RMat& o) const;

  VarSpacePtr space_;
  int base_ = 0, legs_ = 0, dim_ = 0;
  std::vector<RatFun> ent_;
};

// Gauss-Jordan inverse. Every pivot encountered must have an atom-or-constant
// numerator (rf_reciprocal applies); throws FactorMismatch otherwise and
// BadPositions if the matrix is singular.
RMat gauss_inverse(const RMat& m);

}  // namespace rsq
