#include "rsq/phase.hpp"

namespace rsq {

namespace {

int ipow_int(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Scalar scalar_ipow(const Scalar& s, int k) {
  Scalar acc(1);
  for (int i = 0; i < k; ++i) acc *= s;
  return acc;
}

}  // namespace

PhaseFun PhaseFun::from_rf(const RatFun& f) {
  PhaseFun p(f.space());
  p.add_term(OpMonomial{}, f);
  return p;
}

PhaseFun PhaseFun::momentum(const VarSpacePtr& space, int pos, int k) {
  if (pos < 0 || pos >= space->n()) throw BadPositions("momentum: bad position");
  if (k < 0) throw std::domain_error("momentum: negative power");
  PhaseFun p(space);
  p.add_term(OpMonomial::unit(pos, k), RatFun::one(space));
  return p;
}

void PhaseFun::add_term(const OpMonomial& m, const RatFun& c) {
  if (!space_) space_ = c.space();
  for (int x : m.a)
    if (x < 0) throw std::domain_error("PhaseFun: negative momentum exponent");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PhaseFun::momentum_free() const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (!m.is_identity()) return false;
  }
  return true;
}

PhaseFun PhaseFun::operator+(const PhaseFun& o) const {
  if (space_ && o.space_) require_same_space(space_, o.space_);
  PhaseFun r = *this;
  if (!r.space_) r.space_ = o.space_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

PhaseFun PhaseFun::operator-(const PhaseFun& o) const { return *this + (-o); }

PhaseFun PhaseFun::operator-() const {
  PhaseFun r(space_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

PhaseFun PhaseFun::operator*(const PhaseFun& o) const {
  if (space_ && o.space_) require_same_space(space_, o.space_);
  PhaseFun r(space_ ? space_ : o.space_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma.plus(mb), ca * cb);
  return r;
}

PhaseFun& PhaseFun::operator+=(const PhaseFun& o) { return *this = *this + o; }
PhaseFun& PhaseFun::operator-=(const PhaseFun& o) { return *this = *this - o; }

PhaseFun PhaseFun::times(const RatFun& f) const {
  PhaseFun r(space_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * f);
  return r;
}

PhaseFun PhaseFun::scaled(const Scalar& s) const {
  PhaseFun r(space_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.scaled(s));
  return r;
}

bool PhaseFun::operator==(const PhaseFun& o) const { return (*this - o).is_zero(); }

PhaseFun PhaseFun::derive_pos(int i) const {
  PhaseFun r(space_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.derivation(i));
  return r;
}

PhaseFun PhaseFun::derive_mom(int i) const {
  PhaseFun r(space_);
  const auto idx = static_cast<std::size_t>(i);
  for (const auto& [m, c] : terms_) {
    const int e = m.a[idx];
    if (e == 0) continue;
    if (space_->flavor() == Flavor::Q) {
      r.add_term(m, c.scaled(Scalar(e)));  // PP_i d/dPP_i keeps the exponent
    } else {
      OpMonomial down = m;
      --down.a[idx];
      r.add_term(down, c.scaled(Scalar(e)));
    }
  }
  return r;
}

Scalar PhaseFun::eval(const std::vector<Scalar>& qpoint, const std::vector<Scalar>& ppoint) const {
  Scalar acc(0);
  for (const auto& [m, c] : terms_) {
    Scalar t = c.eval(qpoint);
    for (int k = 0; k < space_->n(); ++k)
      t *= scalar_ipow(ppoint[static_cast<std::size_t>(k)], m.a[static_cast<std::size_t>(k)]);
    acc += t;
  }
  return acc;
}

std::size_t PhaseFun::residual_terms() const {
  std::size_t total = 0;
  for (const auto& [m, c] : terms_) {
    (void)m;
    total += c.num_terms();
  }
  return total;
}

std::string PhaseFun::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  const char* sym = space_->flavor() == Flavor::Q ? "P" : "p";
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    for (int k = 0; k < space_->n(); ++k) {
      const int e = m.a[static_cast<std::size_t>(k)];
      if (!e) continue;
      s += "*" + std::string(sym) + std::to_string(k + 1);
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

PhaseFun pbracket(const PhaseFun& f, const PhaseFun& g) {
  require_same_space(f.space(), g.space());
  const VarSpacePtr& sp = f.space();
  PhaseFun acc(sp);
  for (int i = 0; i < sp->n(); ++i) {
    acc += f.derive_pos(i) * g.derive_mom(i);
    acc -= f.derive_mom(i) * g.derive_pos(i);
  }
  return acc;
}

PhaseMat::PhaseMat(VarSpacePtr space, int base, int legs)
    : space_(std::move(space)), base_(base), legs_(legs), dim_(ipow_int(base, legs)) {
  if (!space_) throw std::logic_error("PhaseMat: null space");
  ent_.assign(static_cast<std::size_t>(dim_) * dim_, PhaseFun(space_));
}

PhaseMat PhaseMat::identity(const VarSpacePtr& space, int base, int legs) {
  PhaseMat m(space, base, legs);
  for (int i = 0; i < m.dim_; ++i) m.at(i, i) = PhaseFun::one(space);
  return m;
}

PhaseMat PhaseMat::from_rmat(const RMat& m) {
  PhaseMat r(m.space(), m.base(), m.legs());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (!m.at(i, j).is_zero()) r.at(i, j) = PhaseFun::from_rf(m.at(i, j));
  return r;
}

void PhaseMat::check_same_shape(const PhaseMat& o) const {
  if (base_ != o.base_ || legs_ != o.legs_)
    throw DimensionMismatch("PhaseMat: shape mismatch");
  require_same_space(space_, o.space_);
}

PhaseMat PhaseMat::operator+(const PhaseMat& o) const {
  check_same_shape(o);
  PhaseMat r = *this;
  for (std::size_t k = 0; k < ent_.size(); ++k) r.ent_[k] += o.ent_[k];
  return r;
}

PhaseMat PhaseMat::operator-(const PhaseMat& o) const {
  check_same_shape(o);
  PhaseMat r = *this;
  for (std::size_t k = 0; k < ent_.size(); ++k) r.ent_[k] -= o.ent_[k];
  return r;
}

PhaseMat PhaseMat::operator-() const {
  PhaseMat r = *this;
  for (auto& e : r.ent_) e = -e;
  return r;
}

PhaseMat PhaseMat::operator*(const PhaseMat& o) const {
  check_same_shape(o);
  PhaseMat r(space_, base_, legs_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const PhaseFun& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < dim_; ++j) {
        const PhaseFun& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

PhaseMat& PhaseMat::operator+=(const PhaseMat& o) { return *this = *this + o; }
PhaseMat& PhaseMat::operator-=(const PhaseMat& o) { return *this = *this - o; }

PhaseMat PhaseMat::times(const PhaseFun& f) const {
  PhaseMat r = *this;
  for (auto& e : r.ent_) e = e * f;
  return r;
}

PhaseMat PhaseMat::scaled(const Scalar& c) const {
  PhaseMat r = *this;
  for (auto& e : r.ent_) e = e.scaled(c);
  return r;
}

PhaseMat PhaseMat::kron(const PhaseMat& o) const {
  if (base_ != o.base_) throw DimensionMismatch("PhaseMat kron: base mismatch");
  require_same_space(space_, o.space_);
  PhaseMat r(space_, base_, legs_ + o.legs_);
  for (int i1 = 0; i1 < dim_; ++i1)
    for (int j1 = 0; j1 < dim_; ++j1) {
      const PhaseFun& a = at(i1, j1);
      if (a.is_zero()) continue;
      for (int i2 = 0; i2 < o.dim_; ++i2)
        for (int j2 = 0; j2 < o.dim_; ++j2) {
          const PhaseFun& b = o.at(i2, j2);
          if (b.is_zero()) continue;
          r.at(i1 * o.dim_ + i2, j1 * o.dim_ + j2) = a * b;
        }
    }
  return r;
}

PhaseMat PhaseMat::embed(const std::vector<int>& positions, int total_legs) const {
  // piggyback on the RMat index bookkeeping via a marker expansion would cost
  // more than redoing the digit walk; keep it direct
  if (static_cast<int>(positions.size()) != legs_)
    throw BadPositions("PhaseMat embed: positions must match legs");
  std::vector<bool> used(static_cast<std::size_t>(total_legs), false);
  for (int p : positions) {
    if (p < 1 || p > total_legs || used[static_cast<std::size_t>(p - 1)])
      throw BadPositions("PhaseMat embed: bad leg positions");
    used[static_cast<std::size_t>(p - 1)] = true;
  }
  PhaseMat r(space_, base_, total_legs);
  std::vector<int> ri(static_cast<std::size_t>(total_legs)),
      ci(static_cast<std::size_t>(total_legs));
  for (int row = 0; row < r.dim_; ++row) {
    int f = row;
    for (int l = total_legs - 1; l >= 0; --l) {
      ri[static_cast<std::size_t>(l)] = f % base_;
      f /= base_;
    }
    for (int col = 0; col < r.dim_; ++col) {
      f = col;
      for (int l = total_legs - 1; l >= 0; --l) {
        ci[static_cast<std::size_t>(l)] = f % base_;
        f /= base_;
      }
      bool delta_ok = true;
      for (int l = 0; l < total_legs && delta_ok; ++l)
        if (!used[static_cast<std::size_t>(l)] &&
            ri[static_cast<std::size_t>(l)] != ci[static_cast<std::size_t>(l)])
          delta_ok = false;
      if (!delta_ok) continue;
      int ai = 0, aj = 0;
      for (int l = 0; l < legs_; ++l) {
        ai = ai * base_ + ri[static_cast<std::size_t>(positions[static_cast<std::size_t>(l)] - 1)];
        aj = aj * base_ + ci[static_cast<std::size_t>(positions[static_cast<std::size_t>(l)] - 1)];
      }
      const PhaseFun& v = at(ai, aj);
      if (!v.is_zero()) r.at(row, col) = v;
    }
  }
  return r;
}

PhaseMat PhaseMat::swap_legs(int a, int b) const {
  if (a < 1 || a > legs_ || b < 1 || b > legs_) throw BadPositions("PhaseMat swap: bad legs");
  if (a == b) return *this;
  std::vector<int> digits(static_cast<std::size_t>(legs_));
  auto permute = [&](int flat) {
    for (int l = legs_ - 1; l >= 0; --l) {
      digits[static_cast<std::size_t>(l)] = flat % base_;
      flat /= base_;
    }
    std::swap(digits[static_cast<std::size_t>(a - 1)], digits[static_cast<std::size_t>(b - 1)]);
    int out = 0;
    for (int l = 0; l < legs_; ++l) out = out * base_ + digits[static_cast<std::size_t>(l)];
    return out;
  };
  PhaseMat r(space_, base_, legs_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (!at(i, j).is_zero()) r.at(permute(i), permute(j)) = at(i, j);
  return r;
}

PhaseFun PhaseMat::trace() const {
  PhaseFun t(space_);
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

bool PhaseMat::operator==(const PhaseMat& o) const {
  if (base_ != o.base_ || legs_ != o.legs_) return false;
  for (std::size_t k = 0; k < ent_.size(); ++k)
    if (ent_[k] != o.ent_[k]) return false;
  return true;
}

bool PhaseMat::is_zero() const {
  for (const auto& e : ent_)
    if (!e.is_zero()) return false;
  return true;
}

std::size_t PhaseMat::residual_terms() const {
  std::size_t total = 0;
  for (const auto& e : ent_) total += e.residual_terms();
  return total;
}

PhaseMat pbracket_tensor(const PhaseMat& m, const PhaseMat& n) {
  require_same_space(m.space(), n.space());
  if (m.base() != n.base()) throw DimensionMismatch("pbracket_tensor: base mismatch");
  PhaseMat r(m.space(), m.base(), m.legs() + n.legs());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      const PhaseFun& a = m.at(i, j);
      if (a.is_zero()) continue;
      for (int k = 0; k < n.dim(); ++k)
        for (int l = 0; l < n.dim(); ++l) {
          const PhaseFun& b = n.at(k, l);
          if (b.is_zero()) continue;
          PhaseFun br = pbracket(a, b);
          if (!br.is_zero()) r.at(i * n.dim() + k, j * n.dim() + l) += br;
        }
    }
  return r;
}

PhaseMat operator*(const RMat& a, const PhaseMat& b) { return PhaseMat::from_rmat(a) * b; }
PhaseMat operator*(const PhaseMat& a, const RMat& b) { return a * PhaseMat::from_rmat(b); }

}  // namespace rsq
