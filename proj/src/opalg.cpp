#include "rsq/opalg.hpp"

namespace rsq {

namespace {

Scalar binom(int n, int k) {
  Scalar acc(1);
  for (int i = 0; i < k; ++i) acc *= Scalar(n - i, i + 1);
  return acc;
}

// product of per-position binomials for mu <= alpha
Scalar multi_binom(const OpMonomial& alpha, const OpMonomial& mu) {
  Scalar acc(1);
  for (std::size_t k = 0; k < alpha.a.size(); ++k) acc *= binom(alpha.a[k], mu.a[k]);
  return acc;
}

bool next_below(OpMonomial& mu, const OpMonomial& alpha, int npos) {
  // odometer over 0 <= mu <= alpha componentwise
  for (int k = 0; k < npos; ++k) {
    auto ks = static_cast<std::size_t>(k);
    if (mu.a[ks] < alpha.a[ks]) {
      ++mu.a[ks];
      for (int l = 0; l < k; ++l) mu.a[static_cast<std::size_t>(l)] = 0;
      return true;
    }
  }
  return false;
}

}  // namespace

RMat mat_shift(const RMat& m, const OpMonomial& a) {
  if (a.is_identity()) return m;
  std::array<long, kMaxVars> amt{};
  for (std::size_t k = 0; k < amt.size(); ++k) amt[k] = a.a[k];
  RMat r(m.space(), m.base(), m.legs());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (!m.at(i, j).is_zero()) r.at(i, j) = m.at(i, j).shift(amt);
  return r;
}

RMat mat_derive(const RMat& m, const OpMonomial& mu) {
  if (mu.is_identity()) return m;
  RMat r(m.space(), m.base(), m.legs());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      RatFun v = m.at(i, j);
      for (int pos = 0; pos < m.space()->n() && !v.is_zero(); ++pos)
        for (int rep = 0; rep < mu.a[static_cast<std::size_t>(pos)]; ++rep)
          v = v.derivation(pos);
      r.at(i, j) = v;
    }
  return r;
}

MatOperator MatOperator::shift_perm(const VarSpacePtr& space, int base, int legs, int leg,
                                    int dir) {
  if (dir != 1 && dir != -1) throw BadPositions("shift_perm: dir must be +-1");
  MatOperator op(space, base, legs, OpFlavor::Shift);
  for (int i = 0; i < base; ++i)
    op.add_term(OpMonomial::unit(i, dir), RMat::elem(space, base, i, i).embed({leg}, legs));
  return op;
}

void MatOperator::add_term(const OpMonomial& m, const RMat& coeff) {
  if (coeff.base() != base_ || coeff.legs() != legs_)
    throw DimensionMismatch("MatOperator: coefficient shape mismatch");
  require_same_space(space_, coeff.space());
  if (flavor_ == OpFlavor::Deriv)
    for (int x : m.a)
      if (x < 0) throw FlavorMismatch("MatOperator: negative derivation exponent");
  if (coeff.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MatOperator::check_compatible(const MatOperator& o) const {
  if (base_ != o.base_ || legs_ != o.legs_) throw DimensionMismatch("MatOperator: shape mismatch");
  if (flavor_ != o.flavor_) throw FlavorMismatch("MatOperator: flavor mismatch");
  require_same_space(space_, o.space_);
}

MatOperator MatOperator::operator+(const MatOperator& o) const {
  check_compatible(o);
  MatOperator r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MatOperator MatOperator::operator-(const MatOperator& o) const { return *this + (-o); }

MatOperator MatOperator::operator-() const {
  MatOperator r(space_, base_, legs_, flavor_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MatOperator& MatOperator::operator+=(const MatOperator& o) { return *this = *this + o; }
MatOperator& MatOperator::operator-=(const MatOperator& o) { return *this = *this - o; }

MatOperator MatOperator::operator*(const MatOperator& o) const {
  check_compatible(o);
  MatOperator r(space_, base_, legs_, flavor_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      if (flavor_ == OpFlavor::Shift) {
        r.add_term(ma.plus(mb), ca * mat_shift(cb, ma));
      } else {
        // (C D^alpha)(B D^beta) = sum_{mu <= alpha} binom(alpha,mu)
        //                         C (D^mu B) D^{alpha+beta-mu}
        OpMonomial mu;
        const int npos = space_->n();
        do {
          Scalar w = multi_binom(ma, mu);
          RMat coeff = (ca * mat_derive(cb, mu)).scaled(w);
          OpMonomial mout = ma.plus(mb);
          for (std::size_t k = 0; k < mout.a.size(); ++k) mout.a[k] -= mu.a[k];
          r.add_term(mout, coeff);
        } while (next_below(mu, ma, npos));
      }
    }
  }
  return r;
}

MatOperator MatOperator::times(const RatFun& f) const {
  MatOperator r(space_, base_, legs_, flavor_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.times(f));
  return r;
}

MatOperator MatOperator::scaled(const Scalar& s) const {
  MatOperator r(space_, base_, legs_, flavor_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.scaled(s));
  return r;
}

MatOperator MatOperator::embed(const std::vector<int>& positions, int total_legs) const {
  MatOperator r(space_, base_, total_legs, flavor_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.embed(positions, total_legs));
  return r;
}

MatOperator MatOperator::partial_trace(const std::vector<int>& traced_legs) const {
  MatOperator r(space_, base_, legs_ - static_cast<int>(traced_legs.size()), flavor_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.partial_trace(traced_legs));
  return r;
}

MatOperator MatOperator::partial_transpose(int leg) const {
  MatOperator r(space_, base_, legs_, flavor_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.partial_transpose(leg));
  return r;
}

std::size_t MatOperator::residual_terms() const {
  std::size_t total = 0;
  for (const auto& [m, c] : terms_) {
    (void)m;
    for (int i = 0; i < c.dim(); ++i)
      for (int j = 0; j < c.dim(); ++j) total += c.at(i, j).num_terms();
  }
  return total;
}

RMat MatOperator::apply(const RMat& F) const {
  RMat out(space_, base_, legs_);
  for (const auto& [m, c] : terms_)
    out += c * (flavor_ == OpFlavor::Shift ? mat_shift(F, m) : mat_derive(F, m));
  return out;
}

RMat MatOperator::apply(const RatFun& f) const {
  return apply(RMat::identity(space_, base_, legs_).times(f));
}

std::string MatOperator::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += "+ ";
    s += "coeff\n" + c.str();
    std::string mono;
    for (int k = 0; k < space_->n(); ++k) {
      int e = m.a[static_cast<std::size_t>(k)];
      if (!e) continue;
      mono += (flavor_ == OpFlavor::Shift ? " S" : " D") + std::to_string(k + 1);
      if (e != 1) mono += "^" + std::to_string(e);
    }
    s += mono.empty() ? "* 1\n" : "*" + mono + "\n";
  }
  return s;
}

MatOperator op_commutator(const MatOperator& a, const MatOperator& b) { return a * b - b * a; }

MatOperator operator*(const RMat& m, const MatOperator& op) {
  return MatOperator::from_mat(m, op.flavor()) * op;
}

MatOperator operator*(const MatOperator& op, const RMat& m) {
  return op * MatOperator::from_mat(m, op.flavor());
}

}  // namespace rsq
