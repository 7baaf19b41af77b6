#include "rsq/rmat.hpp"

#include <algorithm>

namespace rsq {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

RMat::RMat(VarSpacePtr space, int base, int legs)
    : space_(std::move(space)), base_(base), legs_(legs), dim_(ipow(base, legs)) {
  if (!space_) throw std::logic_error("RMat: null space");
  if (base < 1 || legs < 0) throw BadPositions("RMat: bad shape");
  ent_.assign(static_cast<std::size_t>(dim_) * dim_, RatFun::zero(space_));
}

RMat RMat::identity(const VarSpacePtr& space, int base, int legs) {
  RMat m(space, base, legs);
  for (int i = 0; i < m.dim_; ++i) m.at(i, i) = RatFun::one(space);
  return m;
}

RMat RMat::elem(const VarSpacePtr& space, int base, int i, int j) {
  if (i < 0 || i >= base || j < 0 || j >= base) throw BadPositions("elem: bad indices");
  RMat m(space, base, 1);
  m.at(i, j) = RatFun::one(space);
  return m;
}

RMat RMat::perm_C(const VarSpacePtr& space, int base) {
  RMat m(space, base, 2);
  for (int i = 0; i < base; ++i)
    for (int j = 0; j < base; ++j) m.at(i * base + j, j * base + i) = RatFun::one(space);
  return m;
}

void RMat::decode(int flat, int* digits) const {
  for (int l = legs_ - 1; l >= 0; --l) {
    digits[l] = flat % base_;
    flat /= base_;
  }
}

int RMat::encode(const int* digits) const {
  int f = 0;
  for (int l = 0; l < legs_; ++l) f = f * base_ + digits[l];
  return f;
}

void RMat::check_same_shape(const RMat& o) const {
  if (base_ != o.base_ || legs_ != o.legs_) throw DimensionMismatch("RMat: shape mismatch");
  require_same_space(space_, o.space_);
}

RMat RMat::operator+(const RMat& o) const {
  check_same_shape(o);
  RMat r = *this;
  for (std::size_t k = 0; k < ent_.size(); ++k) r.ent_[k] += o.ent_[k];
  return r;
}

RMat RMat::operator-(const RMat& o) const {
  check_same_shape(o);
  RMat r = *this;
  for (std::size_t k = 0; k < ent_.size(); ++k) r.ent_[k] -= o.ent_[k];
  return r;
}

RMat RMat::operator-() const {
  RMat r = *this;
  for (auto& e : r.ent_) e = -e;
  return r;
}

RMat RMat::operator*(const RMat& o) const {
  check_same_shape(o);
  RMat r(space_, base_, legs_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const RatFun& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < dim_; ++j) {
        const RatFun& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

RMat& RMat::operator+=(const RMat& o) { return *this = *this + o; }
RMat& RMat::operator-=(const RMat& o) { return *this = *this - o; }

RMat RMat::times(const RatFun& f) const {
  RMat r = *this;
  for (auto& e : r.ent_) e = e * f;
  return r;
}

RMat RMat::scaled(const Scalar& c) const {
  RMat r = *this;
  for (auto& e : r.ent_) e = e.scaled(c);
  return r;
}

RMat RMat::kron(const RMat& o) const {
  if (base_ != o.base_) throw DimensionMismatch("kron: base mismatch");
  require_same_space(space_, o.space_);
  RMat r(space_, base_, legs_ + o.legs_);
  for (int i1 = 0; i1 < dim_; ++i1)
    for (int j1 = 0; j1 < dim_; ++j1) {
      const RatFun& a = at(i1, j1);
      if (a.is_zero()) continue;
      for (int i2 = 0; i2 < o.dim_; ++i2)
        for (int j2 = 0; j2 < o.dim_; ++j2) {
          const RatFun& b = o.at(i2, j2);
          if (b.is_zero()) continue;
          r.at(i1 * o.dim_ + i2, j1 * o.dim_ + j2) = a * b;
        }
    }
  return r;
}

RMat RMat::embed(const std::vector<int>& positions, int total_legs) const {
  if (static_cast<int>(positions.size()) != legs_)
    throw BadPositions("embed: positions must match legs");
  std::vector<bool> used(static_cast<std::size_t>(total_legs), false);
  for (int p : positions) {
    if (p < 1 || p > total_legs || used[static_cast<std::size_t>(p - 1)])
      throw BadPositions("embed: bad leg positions");
    used[static_cast<std::size_t>(p - 1)] = true;
  }
  RMat r(space_, base_, total_legs);
  std::vector<int> ri(static_cast<std::size_t>(total_legs)),
      ci(static_cast<std::size_t>(total_legs));
  std::vector<int> ai(static_cast<std::size_t>(legs_)), aj(static_cast<std::size_t>(legs_));
  for (int row = 0; row < r.dim_; ++row) {
    r.decode(row, ri.data());
    for (int col = 0; col < r.dim_; ++col) {
      r.decode(col, ci.data());
      bool delta_ok = true;
      for (int l = 0; l < total_legs && delta_ok; ++l)
        if (!used[static_cast<std::size_t>(l)] &&
            ri[static_cast<std::size_t>(l)] != ci[static_cast<std::size_t>(l)])
          delta_ok = false;
      if (!delta_ok) continue;
      for (int l = 0; l < legs_; ++l) {
        ai[static_cast<std::size_t>(l)] = ri[static_cast<std::size_t>(positions[static_cast<std::size_t>(l)] - 1)];
        aj[static_cast<std::size_t>(l)] = ci[static_cast<std::size_t>(positions[static_cast<std::size_t>(l)] - 1)];
      }
      const RatFun& v = at(encode(ai.data()), encode(aj.data()));
      if (!v.is_zero()) r.at(row, col) = v;
    }
  }
  return r;
}

RMat RMat::transpose() const {
  RMat r(space_, base_, legs_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(j, i) = at(i, j);
  return r;
}

RMat RMat::partial_transpose(int leg) const {
  if (leg < 1 || leg > legs_) throw BadPositions("partial_transpose: bad leg");
  RMat r(space_, base_, legs_);
  std::vector<int> ri(static_cast<std::size_t>(legs_)), ci(static_cast<std::size_t>(legs_));
  for (int row = 0; row < dim_; ++row) {
    decode(row, ri.data());
    for (int col = 0; col < dim_; ++col) {
      decode(col, ci.data());
      std::swap(ri[static_cast<std::size_t>(leg - 1)], ci[static_cast<std::size_t>(leg - 1)]);
      r.at(encode(ri.data()), encode(ci.data())) = at(row, col);
      std::swap(ri[static_cast<std::size_t>(leg - 1)], ci[static_cast<std::size_t>(leg - 1)]);
    }
  }
  return r;
}

RMat RMat::partial_trace(const std::vector<int>& traced_legs) const {
  std::vector<bool> traced(static_cast<std::size_t>(legs_), false);
  for (int l : traced_legs) {
    if (l < 1 || l > legs_ || traced[static_cast<std::size_t>(l - 1)])
      throw BadPositions("partial_trace: bad legs");
    traced[static_cast<std::size_t>(l - 1)] = true;
  }
  const int kept = legs_ - static_cast<int>(traced_legs.size());
  RMat r(space_, base_, kept);
  std::vector<int> ri(static_cast<std::size_t>(legs_)), ci(static_cast<std::size_t>(legs_));
  std::vector<int> ki(static_cast<std::size_t>(kept)), kj(static_cast<std::size_t>(kept));
  for (int row = 0; row < dim_; ++row) {
    decode(row, ri.data());
    for (int col = 0; col < dim_; ++col) {
      const RatFun& v = at(row, col);
      if (v.is_zero()) continue;
      decode(col, ci.data());
      bool diag = true;
      for (int l = 0; l < legs_ && diag; ++l)
        if (traced[static_cast<std::size_t>(l)] &&
            ri[static_cast<std::size_t>(l)] != ci[static_cast<std::size_t>(l)])
          diag = false;
      if (!diag) continue;
      int t = 0;
      for (int l = 0; l < legs_; ++l)
        if (!traced[static_cast<std::size_t>(l)]) {
          ki[static_cast<std::size_t>(t)] = ri[static_cast<std::size_t>(l)];
          kj[static_cast<std::size_t>(t)] = ci[static_cast<std::size_t>(l)];
          ++t;
        }
      r.at(r.encode(ki.data()), r.encode(kj.data())) += v;
    }
  }
  return r;
}

RatFun RMat::trace() const {
  RatFun t = RatFun::zero(space_);
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

RMat RMat::swap_legs(int a, int b) const {
  if (a < 1 || a > legs_ || b < 1 || b > legs_) throw BadPositions("swap_legs: bad legs");
  if (a == b) return *this;
  RMat r(space_, base_, legs_);
  std::vector<int> ri(static_cast<std::size_t>(legs_)), ci(static_cast<std::size_t>(legs_));
  for (int row = 0; row < dim_; ++row) {
    decode(row, ri.data());
    for (int col = 0; col < dim_; ++col) {
      const RatFun& v = at(row, col);
      if (v.is_zero()) continue;
      decode(col, ci.data());
      std::swap(ri[static_cast<std::size_t>(a - 1)], ri[static_cast<std::size_t>(b - 1)]);
      std::swap(ci[static_cast<std::size_t>(a - 1)], ci[static_cast<std::size_t>(b - 1)]);
      r.at(encode(ri.data()), encode(ci.data())) = v;
      std::swap(ri[static_cast<std::size_t>(a - 1)], ri[static_cast<std::size_t>(b - 1)]);
      std::swap(ci[static_cast<std::size_t>(a - 1)], ci[static_cast<std::size_t>(b - 1)]);
    }
  }
  return r;
}

bool RMat::operator==(const RMat& o) const {
  if (base_ != o.base_ || legs_ != o.legs_) return false;
  for (std::size_t k = 0; k < ent_.size(); ++k)
    if (ent_[k] != o.ent_[k]) return false;
  return true;
}

bool RMat::is_zero() const {
  for (const auto& e : ent_)
    if (!e.is_zero()) return false;
  return true;
}

std::size_t RMat::max_entry_terms() const {
  std::size_t m = 0;
  for (const auto& e : ent_) m = std::max(m, e.num_terms());
  return m;
}

std::string RMat::str() const {
  std::string s;
  for (int i = 0; i < dim_; ++i) {
    s += "[ ";
    for (int j = 0; j < dim_; ++j) {
      s += at(i, j).str();
      if (j + 1 < dim_) s += ", ";
    }
    s += " ]\n";
  }
  return s;
}

RMat gauss_inverse(const RMat& m) {
  const int d = m.dim();
  RMat a = m;
  RMat inv = RMat::identity(m.space(), m.base(), m.legs());
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int r = col; r < d; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw BadPositions("gauss_inverse: singular matrix");
    if (pivot != col)
      for (int c = 0; c < d; ++c) {
        std::swap(a.at(pivot, c), a.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    RatFun pinv = rf_reciprocal(a.at(col, col));
    for (int c = 0; c < d; ++c) {
      a.at(col, c) = a.at(col, c) * pinv;
      inv.at(col, c) = inv.at(col, c) * pinv;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      RatFun f = a.at(r, col);
      if (f.is_zero()) continue;
      for (int c = 0; c < d; ++c) {
        a.at(r, c) -= f * a.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

}  // namespace rsq
