#include "rsq/ratfun.hpp"

#include <algorithm>

namespace rsq {

namespace {

// Screen points are only an accelerator: a nonzero value at a point of the
// atom's zero set certifies non-divisibility; a zero value merely admits the
// exact trial division that makes the actual decision.
thread_local RandomSource g_screen_rng(0x5eedULL);

bool screen_says_divisible(const Poly& num, const LinForm& atom, int nvars) {
  const int branches = atom.kind() == LinForm::Kind::SqDiff ? 2 : 1;
  for (int b = 0; b < branches; ++b) {
    bool settled = false;
    for (int attempt = 0; attempt < 3 && !settled; ++attempt) {
      auto pt = atom.screen_root(g_screen_rng, nvars, b);
      if (!pt) continue;
      try {
        if (num.eval_mod(*pt) != 0) return false;
        settled = true;
      } catch (const std::domain_error&) {
        // screen prime hit a coefficient denominator; resample
      }
    }
    // unsettled branch: inconclusive, let trial division decide
  }
  return true;
}

bool atom_vars_supported(const LinForm& atom, const std::array<bool, kMaxVars>& support) {
  for (int v = 0; v < kMaxVars; ++v)
    if (atom.depends_on(v) && !support[static_cast<std::size_t>(v)]) return false;
  return true;
}

Scalar scalar_pow(const Scalar& s, int k) {
  Scalar acc(1);
  for (int i = 0; i < k; ++i) acc *= s;
  return acc;
}

}  // namespace

RatFun RatFun::trusted(VarSpacePtr space, Poly num, DenFactors den) {
  auto rep = std::make_shared<Rep>();
  rep->num = std::move(num);
  rep->den = std::move(den);
  return RatFun(std::move(space), std::move(rep));
}

RatFun RatFun::zero(const VarSpacePtr& space) { return trusted(space, Poly::zero(), {}); }

RatFun RatFun::one(const VarSpacePtr& space) {
  return trusted(space, Poly::constant(Scalar(1)), {});
}

RatFun RatFun::constant(const VarSpacePtr& space, const Scalar& c) {
  return trusted(space, Poly::constant(c), {});
}

RatFun RatFun::from_poly(const VarSpacePtr& space, Poly p) {
  return trusted(space, std::move(p), {});
}

RatFun RatFun::make(const VarSpacePtr& space, Poly num, DenFactors den) {
  if (!space) throw std::logic_error("RatFun: null space");
  if (num.is_zero()) return zero(space);

  std::sort(den.begin(), den.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  DenFactors merged;
  for (auto& [atom, pow] : den) {
    if (pow <= 0) throw std::logic_error("RatFun: nonpositive denominator power");
    if (!merged.empty() && merged.back().first == atom)
      merged.back().second += pow;
    else
      merged.emplace_back(atom, pow);
  }

  std::array<bool, kMaxVars> support{};
  auto refresh_support = [&support](const Poly& p) {
    support.fill(false);
    for (const auto& [m, c] : p.terms()) {
      (void)c;
      for (int v = 0; v < kMaxVars; ++v)
        if (m.e[static_cast<std::size_t>(v)]) support[static_cast<std::size_t>(v)] = true;
    }
  };
  refresh_support(num);

  DenFactors out;
  out.reserve(merged.size());
  const int nv = space->nvars();
  for (auto& [atom, pow] : merged) {
    while (pow > 0 && !num.is_constant()) {
      if (!atom_vars_supported(atom, support)) break;
      if (!screen_says_divisible(num, atom, nv)) break;
      auto quot = num.divide_exact(atom.to_poly());
      if (!quot) break;
      num = std::move(*quot);
      refresh_support(num);
      --pow;
    }
    if (pow > 0) out.emplace_back(atom, pow);
  }
  return trusted(space, std::move(num), std::move(out));
}

bool RatFun::is_constant() const {
  return is_zero() || (rep_->den.empty() && rep_->num.is_constant());
}

const Poly& RatFun::num() const {
  static const Poly kZero;
  return rep_ ? rep_->num : kZero;
}

const DenFactors& RatFun::den() const {
  static const DenFactors kEmpty;
  return rep_ ? rep_->den : kEmpty;
}

RatFun RatFun::operator-() const {
  if (is_zero()) return *this;
  return trusted(space_, -rep_->num, rep_->den);
}

RatFun RatFun::operator+(const RatFun& o) const {
  if (!space_) return o;
  if (!o.space_) return *this;
  require_same_space(space_, o.space_);
  if (is_zero()) return o;
  if (o.is_zero()) return *this;

  const DenFactors& da = rep_->den;
  const DenFactors& db = o.rep_->den;
  if (da == db) return make(space_, rep_->num + o.rep_->num, da);

  DenFactors lcm;
  Poly cof_a = Poly::constant(Scalar(1));
  Poly cof_b = Poly::constant(Scalar(1));
  std::size_t i = 0, j = 0;
  while (i < da.size() || j < db.size()) {
    if (j == db.size() || (i < da.size() && da[i].first < db[j].first)) {
      lcm.push_back(da[i]);
      cof_b = cof_b * da[i].first.to_poly().pow(da[i].second);
      ++i;
    } else if (i == da.size() || db[j].first < da[i].first) {
      lcm.push_back(db[j]);
      cof_a = cof_a * db[j].first.to_poly().pow(db[j].second);
      ++j;
    } else {
      const int pa = da[i].second, pb = db[j].second, p = std::max(pa, pb);
      lcm.emplace_back(da[i].first, p);
      if (p > pa) cof_a = cof_a * da[i].first.to_poly().pow(p - pa);
      if (p > pb) cof_b = cof_b * db[j].first.to_poly().pow(p - pb);
      ++i;
      ++j;
    }
  }
  return make(space_, rep_->num * cof_a + o.rep_->num * cof_b, std::move(lcm));
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  if (is_zero()) return o.space_ ? zero(o.space_) : *this;
  if (o.is_zero()) return space_ ? zero(space_) : o;
  require_same_space(space_, o.space_);

  DenFactors den;
  den.reserve(rep_->den.size() + o.rep_->den.size());
  std::size_t i = 0, j = 0;
  const DenFactors& da = rep_->den;
  const DenFactors& db = o.rep_->den;
  while (i < da.size() || j < db.size()) {
    if (j == db.size() || (i < da.size() && da[i].first < db[j].first))
      den.push_back(da[i++]);
    else if (i == da.size() || db[j].first < da[i].first)
      den.push_back(db[j++]);
    else {
      den.emplace_back(da[i].first, da[i].second + db[j].second);
      ++i;
      ++j;
    }
  }
  return make(space_, rep_->num * o.rep_->num, std::move(den));
}

RatFun& RatFun::operator+=(const RatFun& o) { return *this = *this + o; }
RatFun& RatFun::operator-=(const RatFun& o) { return *this = *this - o; }

RatFun RatFun::scaled(const Scalar& c) const {
  if (is_zero()) return *this;
  if (scal_is_zero(c)) return zero(space_);
  return trusted(space_, rep_->num.scaled(c), rep_->den);
}

bool RatFun::operator==(const RatFun& o) const {
  if (rep_ == o.rep_) return true;
  if (is_zero()) return o.is_zero();
  if (o.is_zero()) return false;
  if (rep_->den == o.rep_->den) return rep_->num == o.rep_->num;
  return (*this - o).is_zero();
}

RatFun RatFun::derive(int var) const {
  if (is_zero()) return *this;
  const DenFactors& den = rep_->den;
  if (den.empty()) return trusted(space_, rep_->num.derive(var), {});

  const std::size_t m = den.size();
  std::vector<Poly> atom_poly(m);
  for (std::size_t t = 0; t < m; ++t) atom_poly[t] = den[t].first.to_poly();
  // prefix[t] = prod_{s<t} atom_s, suffix[t] = prod_{s>t} atom_s
  std::vector<Poly> prefix(m + 1), suffix(m + 1);
  prefix[0] = Poly::constant(Scalar(1));
  suffix[m] = Poly::constant(Scalar(1));
  for (std::size_t t = 0; t < m; ++t) prefix[t + 1] = prefix[t] * atom_poly[t];
  for (std::size_t t = m; t-- > 0;) suffix[t] = suffix[t + 1] * atom_poly[t];

  Poly num_new = rep_->num.derive(var) * prefix[m];
  for (std::size_t t = 0; t < m; ++t) {
    Poly da = den[t].first.derive(var);
    if (da.is_zero()) continue;
    num_new -= (rep_->num * da * (prefix[t] * suffix[t + 1])).scaled(Scalar(den[t].second));
  }
  DenFactors den_new;
  den_new.reserve(m);
  for (const auto& [atom, pow] : den) den_new.emplace_back(atom, pow + 1);
  return make(space_, std::move(num_new), std::move(den_new));
}

RatFun RatFun::derivation(int pos) const {
  if (!space_) return *this;
  if (pos < 0 || pos >= space_->n()) throw std::out_of_range("derivation: bad position");
  RatFun d = derive(pos);
  if (space_->flavor() == Flavor::Q) return d;
  return d * from_poly(space_, Poly::monomial(Mono::unit(pos), scal(1, 2)));
}

RatFun RatFun::shift(const std::array<long, kMaxVars>& amount) const {
  if (is_zero()) return *this;
  if (space_->flavor() != Flavor::Q)
    throw FlavorError("shift: positions are not additive in this flavor");
  bool trivial = true;
  for (int k = 0; k < space_->n(); ++k)
    if (amount[static_cast<std::size_t>(k)]) trivial = false;
  if (trivial) return *this;

  Poly hbar = space_->hbar_bound() ? Poly::constant(*space_->hbar_bound())
                                   : Poly::variable(space_->hbar_index());
  Poly n = rep_->num;
  for (int k = 0; k < space_->n(); ++k) {
    const long a = amount[static_cast<std::size_t>(k)];
    if (!a || n.degree_in(k) == 0) continue;
    n = n.substitute(k, Poly::variable(k) - hbar.scaled(Scalar(a)));
  }

  DenFactors den_new;
  den_new.reserve(rep_->den.size());
  Scalar unit_acc(1);
  for (const auto& [atom, pow] : rep_->den) {
    auto [shifted, u] = atom.shift(space_, amount);
    den_new.emplace_back(shifted, pow);
    unit_acc *= scalar_pow(u, pow);
  }
  return make(space_, n.scaled(Scalar(1) / unit_acc), std::move(den_new));
}

Scalar RatFun::eval(const std::vector<Scalar>& point) const {
  if (is_zero()) return Scalar(0);
  Scalar acc = rep_->num.eval(point);
  for (const auto& [atom, pow] : rep_->den) {
    Scalar av = atom.eval(point);
    if (scal_is_zero(av)) throw PoleError("eval: denominator atom vanishes at point");
    acc /= scalar_pow(av, pow);
  }
  return acc;
}

std::uint64_t RatFun::eval_mod(const std::array<std::uint64_t, kMaxVars>& point) const {
  if (is_zero()) return 0;
  std::uint64_t acc = rep_->num.eval_mod(point);
  for (const auto& [atom, pow] : rep_->den) {
    std::uint64_t av = atom.eval_mod(point);
    if (av == 0) throw PoleError("eval_mod: denominator atom vanishes at point");
    acc = mod_mul(acc, mod_pow(mod_inv(av), static_cast<std::uint64_t>(pow)));
  }
  return acc;
}

std::string RatFun::str() const {
  if (is_zero()) return "0";
  std::string ns = rep_->num.str(*space_);
  if (rep_->den.empty()) return ns;
  if (rep_->num.term_count() > 1) ns = "(" + ns + ")";
  std::string ds;
  for (const auto& [atom, pow] : rep_->den) {
    if (!ds.empty()) ds += "*";
    ds += "(" + atom.str(*space_) + ")";
    if (pow > 1) ds += "^" + std::to_string(pow);
  }
  return ns + " / " + ds;
}

RatFun rf_inv_factored(const RatFun& f, const Scalar& unit, const DenFactors& num_factors) {
  if (f.is_zero()) throw ZeroDivision("rf_inv_factored: inverse of zero");
  if (scal_is_zero(unit)) throw FactorMismatch("rf_inv_factored: zero unit");
  Poly expanded = Poly::constant(unit);
  for (const auto& [atom, pow] : num_factors) {
    if (pow <= 0) throw FactorMismatch("rf_inv_factored: nonpositive factor power");
    expanded = expanded * atom.to_poly().pow(pow);
  }
  if (expanded != f.num())
    throw FactorMismatch("rf_inv_factored: factorization does not match numerator");

  Poly inv_num = Poly::constant(Scalar(1) / unit);
  for (const auto& [atom, pow] : f.den()) inv_num = inv_num * atom.to_poly().pow(pow);
  return RatFun::make(f.space(), std::move(inv_num), num_factors);
}

RatFun rf_reciprocal(const RatFun& f) {
  if (f.is_zero()) throw ZeroDivision("rf_reciprocal: inverse of zero");
  const Poly& n = f.num();
  if (n.is_constant()) return rf_inv_factored(f, n.leading().second, {});
  auto m = LinForm::from_poly(f.space(), n);
  if (!m) throw FactorMismatch("rf_reciprocal: numerator is not an atom");
  return rf_inv_factored(f, m->second, {{m->first, 1}});
}

RatFun rf_var(const VarSpacePtr& space, int var) {
  return RatFun::from_poly(space, Poly::variable(var));
}

RatFun rf_hbar(const VarSpacePtr& space) {
  if (space->hbar_bound()) return RatFun::constant(space, *space->hbar_bound());
  return rf_var(space, space->hbar_index());
}

RatFun rf_gamma(const VarSpacePtr& space) {
  if (space->gamma_bound()) return RatFun::constant(space, *space->gamma_bound());
  return rf_var(space, space->gamma_index());
}

RatFun rf_posdiff(const VarSpacePtr& space, int i, int j, long hmult, long gmult,
                  const Scalar& c) {
  auto [atom, unit] = LinForm::position_diff(space, i, j, hmult, gmult, c);
  return RatFun::from_poly(space, atom.to_poly().scaled(unit));
}

RatFun rf_recip_posdiff(const VarSpacePtr& space, int i, int j, long hmult, long gmult,
                        const Scalar& c) {
  auto [atom, unit] = LinForm::position_diff(space, i, j, hmult, gmult, c);
  return RatFun::make(space, Poly::constant(Scalar(1) / unit), {{atom, 1}});
}

RatFun rf_recip_sqdiff(const VarSpacePtr& space, int i, int j) {
  auto [atom, unit] = LinForm::sq_diff(space, i, j);
  return RatFun::make(space, Poly::constant(Scalar(1) / unit), {{atom, 1}});
}

}  // namespace rsq
