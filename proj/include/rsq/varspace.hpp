#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "rsq/scalar.hpp"

namespace rsq {

// Hard cap: N <= 6 positions plus the two couplings.
inline constexpr int kMaxVars = 8;

enum class Flavor {
  Q,  // positions q_1..q_N, shift-friendly
  V,  // multiplicative v_i = e^{q_i/2}; position derivation is (v_i/2) d/dv_i
};

struct FlavorError : std::domain_error {
  using std::domain_error::domain_error;
};
struct DimensionMismatch : std::domain_error {
  using std::domain_error::domain_error;
};

// Variable layout: indices 0..n-1 are positions, index n is hbar, n+1 is
// gamma. A coupling may be bound to an exact rational, in which case it never
// appears as a variable anywhere downstream.
class VarSpace {
 public:
  VarSpace(int n, Flavor flavor, std::optional<Scalar> hbar_value = std::nullopt,
           std::optional<Scalar> gamma_value = std::nullopt)
      : n_(n), flavor_(flavor), hbar_(std::move(hbar_value)), gamma_(std::move(gamma_value)) {
    if (n < 2 || n + 2 > kMaxVars)
      throw DimensionMismatch("VarSpace: need 2 <= N <= " + std::to_string(kMaxVars - 2));
  }

  int n() const { return n_; }
  Flavor flavor() const { return flavor_; }
  int nvars() const { return n_ + 2; }
  int hbar_index() const { return n_; }
  int gamma_index() const { return n_ + 1; }
  const std::optional<Scalar>& hbar_bound() const { return hbar_; }
  const std::optional<Scalar>& gamma_bound() const { return gamma_; }

  std::string var_name(int idx) const {
    if (idx == hbar_index()) return "hbar";
    if (idx == gamma_index()) return "gamma";
    if (idx < 0 || idx >= n_) throw DimensionMismatch("VarSpace: bad variable index");
    return (flavor_ == Flavor::Q ? "q" : "v") + std::to_string(idx + 1);
  }

  bool operator==(const VarSpace& o) const {
    return n_ == o.n_ && flavor_ == o.flavor_ && hbar_ == o.hbar_ && gamma_ == o.gamma_;
  }
  bool operator!=(const VarSpace& o) const { return !(*this == o); }

 private:
  int n_;
  Flavor flavor_;
  std::optional<Scalar> hbar_, gamma_;
};

using VarSpacePtr = std::shared_ptr<const VarSpace>;

inline VarSpacePtr make_space(int n, Flavor flavor = Flavor::Q,
                              std::optional<Scalar> hbar = std::nullopt,
                              std::optional<Scalar> gamma = std::nullopt) {
  return std::make_shared<const VarSpace>(n, flavor, std::move(hbar), std::move(gamma));
}

inline void require_same_space(const VarSpacePtr& a, const VarSpacePtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || *a != *b) throw DimensionMismatch("values live on different variable spaces");
}

}  // namespace rsq
