#include "rsq/linform.hpp"

#include <numeric>
#include <stdexcept>

namespace rsq {

namespace {

std::uint64_t mod_of_ll(long long v) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % kScreenPrime;
  std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;  // |v| without UB
  m %= kScreenPrime;
  return m == 0 ? 0 : kScreenPrime - m;
}

}  // namespace

std::pair<LinForm, Scalar> LinForm::affine(const VarSpacePtr& space,
                                           const std::array<Scalar, kMaxVars>& coeff,
                                           const Scalar& c0) {
  // clear denominators
  mpz_class den_lcm(1);
  for (int k = 0; k < space->nvars(); ++k)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), coeff[static_cast<std::size_t>(k)].get_den().get_mpz_t());
  mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c0.get_den().get_mpz_t());

  std::array<mpz_class, kMaxVars> ic{};
  mpz_class icc;
  mpz_class content(0);
  for (int k = 0; k < space->nvars(); ++k) {
    Scalar s = coeff[static_cast<std::size_t>(k)] * Scalar(den_lcm);
    ic[static_cast<std::size_t>(k)] = s.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ic[static_cast<std::size_t>(k)].get_mpz_t());
  }
  {
    Scalar s = c0 * Scalar(den_lcm);
    icc = s.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), icc.get_mpz_t());
  }
  if (content == 0) throw std::domain_error("LinForm: constant form is not an atom");

  // sign: first nonzero variable coefficient positive
  int lead = -1;
  for (int k = 0; k < space->nvars(); ++k)
    if (ic[static_cast<std::size_t>(k)] != 0) {
      lead = k;
      break;
    }
  if (lead < 0) throw std::domain_error("LinForm: constant form is not an atom");
  if (sgn(ic[static_cast<std::size_t>(lead)]) < 0) content = -content;

  LinForm f;
  f.kind_ = Kind::Linear;
  for (int k = 0; k < space->nvars(); ++k) {
    mpz_class q = ic[static_cast<std::size_t>(k)] / content;
    if (!q.fits_slong_p()) throw std::overflow_error("LinForm: coefficient overflow");
    f.c_[static_cast<std::size_t>(k)] = q.get_si();
  }
  {
    mpz_class q = icc / content;
    if (!q.fits_slong_p()) throw std::overflow_error("LinForm: coefficient overflow");
    f.c0_ = q.get_si();
  }
  Scalar unit(content, den_lcm);
  unit.canonicalize();
  return {f, unit};
}

std::pair<LinForm, Scalar> LinForm::position_diff(const VarSpacePtr& space, int i, int j,
                                                  long hmult, long gmult, const Scalar& c) {
  if (i < 0 || i >= space->n() || j < 0 || j >= space->n() || i == j)
    throw DimensionMismatch("LinForm: bad position pair");
  std::array<Scalar, kMaxVars> coeff{};
  Scalar c0 = c;
  coeff[static_cast<std::size_t>(i)] = Scalar(1);
  coeff[static_cast<std::size_t>(j)] = Scalar(-1);
  if (hmult != 0) {
    if (space->hbar_bound())
      c0 += Scalar(hmult) * *space->hbar_bound();
    else
      coeff[static_cast<std::size_t>(space->hbar_index())] = Scalar(hmult);
  }
  if (gmult != 0) {
    if (space->gamma_bound())
      c0 += Scalar(gmult) * *space->gamma_bound();
    else
      coeff[static_cast<std::size_t>(space->gamma_index())] = Scalar(gmult);
  }
  return affine(space, coeff, c0);
}

std::pair<LinForm, Scalar> LinForm::single_var(const VarSpacePtr& space, int var) {
  if (var < 0 || var >= space->nvars()) throw DimensionMismatch("LinForm: bad variable");
  if ((var == space->hbar_index() && space->hbar_bound()) ||
      (var == space->gamma_index() && space->gamma_bound()))
    throw std::domain_error("LinForm: bound coupling is a constant, not an atom");
  LinForm f;
  f.kind_ = Kind::Linear;
  f.c_[static_cast<std::size_t>(var)] = 1;
  return {f, Scalar(1)};
}

std::pair<LinForm, Scalar> LinForm::sq_diff(const VarSpacePtr& space, int i, int j) {
  if (space->flavor() != Flavor::V) throw FlavorError("LinForm: sq_diff needs V flavor");
  if (i < 0 || i >= space->n() || j < 0 || j >= space->n() || i == j)
    throw DimensionMismatch("LinForm: bad position pair");
  LinForm f;
  f.kind_ = Kind::SqDiff;
  Scalar unit(1);
  if (i < j) {
    f.i_ = i;
    f.j_ = j;
  } else {
    f.i_ = j;
    f.j_ = i;
    unit = Scalar(-1);
  }
  return {f, unit};
}

std::optional<std::pair<LinForm, Scalar>> LinForm::from_poly(const VarSpacePtr& space,
                                                             const Poly& p) {
  if (p.is_zero() || p.is_constant()) return std::nullopt;
  if (p.total_degree() == 1) {
    std::array<Scalar, kMaxVars> coeff{};
    Scalar c0(0);
    for (const auto& [m, c] : p.terms()) {
      if (m.is_constant()) {
        c0 = c;
        continue;
      }
      for (int k = 0; k < space->nvars(); ++k)
        if (m.e[static_cast<std::size_t>(k)] == 1) coeff[static_cast<std::size_t>(k)] = c;
    }
    return affine(space, coeff, c0);
  }
  // c * (v_i^2 - v_j^2)?
  if (space->flavor() == Flavor::V && p.term_count() == 2) {
    const auto& ta = p.terms()[0];
    const auto& tb = p.terms()[1];
    int va = -1, vb = -1;
    for (int k = 0; k < space->n(); ++k) {
      if (ta.first.e[static_cast<std::size_t>(k)] == 2 && ta.first.total_degree() == 2) va = k;
      if (tb.first.e[static_cast<std::size_t>(k)] == 2 && tb.first.total_degree() == 2) vb = k;
    }
    if (va >= 0 && vb >= 0 && va != vb && ta.second == -tb.second) {
      // ta is the lex-leading term, so va < vb and the atom needs no swap
      auto [atom, u] = sq_diff(space, va, vb);
      return std::make_pair(atom, ta.second * u);
    }
  }
  return std::nullopt;
}

Poly LinForm::to_poly() const {
  if (kind_ == Kind::SqDiff) {
    Mono mi = Mono::unit(i_, 2), mj = Mono::unit(j_, 2);
    return Poly::monomial(mi, Scalar(1)) + Poly::monomial(mj, Scalar(-1));
  }
  std::vector<Poly::Term> t;
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (c_[k] != 0) t.emplace_back(Mono::unit(static_cast<int>(k)), Scalar(static_cast<long>(c_[k])));
  if (c0_ != 0) t.emplace_back(Mono{}, Scalar(static_cast<long>(c0_)));
  return Poly::collect(std::move(t));
}

Poly LinForm::derive(int var) const {
  if (kind_ == Kind::Linear) return Poly::constant(Scalar(static_cast<long>(c_[static_cast<std::size_t>(var)])));
  if (var == i_) return Poly::monomial(Mono::unit(i_), Scalar(2));
  if (var == j_) return Poly::monomial(Mono::unit(j_), Scalar(-2));
  return Poly();
}

bool LinForm::depends_on(int var) const {
  if (kind_ == Kind::Linear) return c_[static_cast<std::size_t>(var)] != 0;
  return var == i_ || var == j_;
}

std::pair<LinForm, Scalar> LinForm::shift(const VarSpacePtr& space,
                                          const std::array<long, kMaxVars>& amount) const {
  if (space->flavor() != Flavor::Q) throw FlavorError("LinForm: shift needs Q flavor");
  if (kind_ != Kind::Linear) throw FlavorError("LinForm: cannot shift a SqDiff atom");
  long long s = 0;
  for (int k = 0; k < space->n(); ++k) s += c_[static_cast<std::size_t>(k)] * amount[static_cast<std::size_t>(k)];
  if (s == 0) return {*this, Scalar(1)};
  std::array<Scalar, kMaxVars> coeff{};
  for (int k = 0; k < space->nvars(); ++k) coeff[static_cast<std::size_t>(k)] = Scalar(static_cast<long>(c_[static_cast<std::size_t>(k)]));
  Scalar c0(static_cast<long>(c0_));
  if (space->hbar_bound()) {
    c0 -= Scalar(static_cast<long>(s)) * *space->hbar_bound();
  } else {
    coeff[static_cast<std::size_t>(space->hbar_index())] -= Scalar(static_cast<long>(s));
  }
  return affine(space, coeff, c0);
}

Scalar LinForm::eval(const std::vector<Scalar>& point) const {
  if (kind_ == Kind::SqDiff) {
    return point.at(static_cast<std::size_t>(i_)) * point.at(static_cast<std::size_t>(i_)) -
           point.at(static_cast<std::size_t>(j_)) * point.at(static_cast<std::size_t>(j_));
  }
  Scalar acc(static_cast<long>(c0_));
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (c_[k] != 0) acc += Scalar(static_cast<long>(c_[k])) * point.at(k);
  return acc;
}

std::uint64_t LinForm::eval_mod(const std::array<std::uint64_t, kMaxVars>& point) const {
  if (kind_ == Kind::SqDiff) {
    return mod_sub(mod_mul(point[static_cast<std::size_t>(i_)], point[static_cast<std::size_t>(i_)]),
                   mod_mul(point[static_cast<std::size_t>(j_)], point[static_cast<std::size_t>(j_)]));
  }
  std::uint64_t acc = mod_of_ll(c0_);
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (c_[k] != 0) acc = mod_add(acc, mod_mul(mod_of_ll(c_[k]), point[k]));
  return acc;
}

std::optional<std::array<std::uint64_t, kMaxVars>> LinForm::screen_root(RandomSource& rng,
                                                                        int nvars,
                                                                        int branch) const {
  std::array<std::uint64_t, kMaxVars> pt{};
  for (int k = 0; k < nvars; ++k) pt[static_cast<std::size_t>(k)] = rng.mod_value();
  if (kind_ == Kind::SqDiff) {
    pt[static_cast<std::size_t>(i_)] =
        branch % 2 == 0 ? pt[static_cast<std::size_t>(j_)]
                        : mod_sub(0, pt[static_cast<std::size_t>(j_)]);
    return pt;
  }
  int pivot = -1;
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (c_[k] != 0) {
      pivot = static_cast<int>(k);
      break;
    }
  if (pivot < 0) return std::nullopt;
  std::uint64_t cp = mod_of_ll(c_[static_cast<std::size_t>(pivot)]);
  if (cp == 0) return std::nullopt;
  std::uint64_t rest = mod_of_ll(c0_);
  for (std::size_t k = 0; k < kMaxVars; ++k) {
    if (static_cast<int>(k) == pivot || c_[k] == 0) continue;
    rest = mod_add(rest, mod_mul(mod_of_ll(c_[k]), pt[k]));
  }
  pt[static_cast<std::size_t>(pivot)] = mod_mul(mod_sub(0, rest), mod_inv(cp));
  return pt;
}

std::string LinForm::str(const VarSpace& space) const { return to_poly().str(space); }

bool operator==(const LinForm& a, const LinForm& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == LinForm::Kind::SqDiff) return a.i_ == b.i_ && a.j_ == b.j_;
  return a.c_ == b.c_ && a.c0_ == b.c0_;
}

bool operator<(const LinForm& a, const LinForm& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.kind_ == LinForm::Kind::SqDiff) {
    return std::tie(a.i_, a.j_) < std::tie(b.i_, b.j_);
  }
  if (a.c_ != b.c_) return a.c_ < b.c_;
  return a.c0_ < b.c0_;
}

}  // namespace rsq
