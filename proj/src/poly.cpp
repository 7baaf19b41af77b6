#include "rsq/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rsq {

Mono Mono::times(const Mono& o) const {
  Mono r;
  for (std::size_t k = 0; k < kMaxVars; ++k) {
    std::uint32_t s = static_cast<std::uint32_t>(e[k]) + o.e[k];
    if (s > 0xffffu) throw std::overflow_error("Mono: exponent overflow");
    r.e[k] = static_cast<std::uint16_t>(s);
  }
  return r;
}

bool Mono::divisible_by(const Mono& o) const {
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (e[k] < o.e[k]) return false;
  return true;
}

Mono Mono::divide(const Mono& o) const {
  Mono r;
  for (std::size_t k = 0; k < kMaxVars; ++k) r.e[k] = static_cast<std::uint16_t>(e[k] - o.e[k]);
  return r;
}

Poly Poly::constant(const Scalar& c) {
  Poly p;
  if (!scal_is_zero(c)) p.terms_.emplace_back(Mono{}, c);
  return p;
}

Poly Poly::variable(int idx) {
  Poly p;
  p.terms_.emplace_back(Mono::unit(idx), Scalar(1));
  return p;
}

Poly Poly::monomial(Mono m, Scalar c) {
  Poly p;
  if (!scal_is_zero(c)) p.terms_.emplace_back(m, std::move(c));
  return p;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m.e[static_cast<std::size_t>(var)]);
  return d;
}

const Poly::Term& Poly::leading() const {
  if (terms_.empty()) throw std::domain_error("Poly: leading term of zero");
  return terms_.front();
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].first == o.terms_[j].first) {
      Scalar c = terms_[i].second + o.terms_[j].second;
      if (!scal_is_zero(c)) r.terms_.emplace_back(terms_[i].first, std::move(c));
      ++i, ++j;
    } else if (terms_[i].first > o.terms_[j].first) {
      r.terms_.push_back(terms_[i++]);
    } else {
      r.terms_.push_back(o.terms_[j++]);
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly& Poly::operator+=(const Poly& o) {
  *this = *this + o;
  return *this;
}
Poly& Poly::operator-=(const Poly& o) {
  *this = *this - o;
  return *this;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].first, o.terms_[0].second);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].first, terms_[0].second);

  std::unordered_map<Mono, Scalar, MonoHash> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 4);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      acc[ma.times(mb)] += ca * cb;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!scal_is_zero(c)) out.emplace_back(m, std::move(c));
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.first > b.first; });
  Poly r;
  r.terms_ = std::move(out);
  return r;
}

Poly Poly::scaled(const Scalar& c) const {
  if (scal_is_zero(c)) return Poly();
  Poly r(*this);
  for (auto& [m, k] : r.terms_) k *= c;
  return r;
}

Poly Poly::times_monomial(const Mono& m, const Scalar& c) const {
  if (scal_is_zero(c)) return Poly();
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_back(mm.times(m), cc * c);
  return r;  // multiplying by a fixed monomial preserves lex order
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::domain_error("Poly: negative power");
  Poly acc = Poly::constant(Scalar(1));
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

Poly Poly::derive(int var) const {
  const auto v = static_cast<std::size_t>(var);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    if (m.e[v] == 0) continue;
    Mono d = m;
    d.e[v] -= 1;
    out.emplace_back(d, c * Scalar(static_cast<long>(m.e[v])));
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  Poly r;
  r.terms_ = std::move(out);
  return r;
}

Poly Poly::substitute(int var, const Poly& repl) const {
  const auto v = static_cast<std::size_t>(var);
  int dmax = degree_in(var);
  if (dmax == 0) return *this;

  // group by power of var, exponent stripped
  std::vector<Poly> grouped(static_cast<std::size_t>(dmax) + 1);
  for (const auto& [m, c] : terms_) {
    Mono stripped = m;
    int d = m.e[v];
    stripped.e[v] = 0;
    grouped[static_cast<std::size_t>(d)] += Poly::monomial(stripped, c);
  }
  // Horner: result = (((g_d * R) + g_{d-1}) * R + ...) + g_0
  Poly acc = grouped[static_cast<std::size_t>(dmax)];
  for (int d = dmax - 1; d >= 0; --d) {
    acc = acc * repl + grouped[static_cast<std::size_t>(d)];
  }
  return acc;
}

Scalar Poly::eval(const std::vector<Scalar>& point) const {
  Scalar acc(0);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t k = 0; k < kMaxVars; ++k) {
      for (int rep = 0; rep < m.e[k]; ++rep) {
        if (k >= point.size()) throw std::domain_error("Poly: eval point too short");
        t *= point[k];
      }
    }
    acc += t;
  }
  return acc;
}

std::uint64_t Poly::eval_mod(const std::array<std::uint64_t, kMaxVars>& point) const {
  std::uint64_t acc = 0;
  for (const auto& [m, c] : terms_) {
    std::uint64_t t = mod_of_scalar(c);
    for (std::size_t k = 0; k < kMaxVars; ++k)
      if (m.e[k]) t = mod_mul(t, mod_pow(point[k], m.e[k]));
    acc = mod_add(acc, t);
  }
  return acc;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("Poly: division by zero poly");
  if (is_zero()) return Poly();
  const auto& [dm, dc] = divisor.leading();
  Poly rem(*this);
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const auto& [lm, lc] = rem.leading();
    if (!lm.divisible_by(dm)) return std::nullopt;
    Mono qm = lm.divide(dm);
    Scalar qc = lc / dc;
    quot.emplace_back(qm, qc);
    rem -= divisor.times_monomial(qm, qc);
  }
  std::sort(quot.begin(), quot.end(),
            [](const Term& a, const Term& b) { return a.first > b.first; });
  Poly q;
  q.terms_ = std::move(quot);
  return q;
}

std::pair<Scalar, Poly> Poly::normalized() const {
  if (is_zero()) return {Scalar(1), Poly()};
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Scalar unit(num_gcd, den_lcm);
  unit.canonicalize();
  if (sgn(terms_.front().second) < 0) unit = -unit;
  Poly body = scaled(Scalar(1) / unit);
  return {unit, std::move(body)};
}

Poly Poly::collect(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  std::vector<Term> out;
  for (auto& [m, c] : raw) {
    if (!out.empty() && out.back().first == m) {
      out.back().second += c;
      if (scal_is_zero(out.back().second)) out.pop_back();
    } else if (!scal_is_zero(c)) {
      out.emplace_back(m, std::move(c));
    }
  }
  Poly p;
  p.terms_ = std::move(out);
  return p;
}

std::string Poly::str(const VarSpace& space) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    bool coeff_is_one = (a == 1);
    bool wrote = false;
    if (!coeff_is_one || m.is_constant()) {
      os << scal_str(a);
      wrote = true;
    }
    for (int k = 0; k < space.nvars(); ++k) {
      auto exp = m.e[static_cast<std::size_t>(k)];
      if (!exp) continue;
      if (wrote) os << "*";
      os << space.var_name(k);
      if (exp > 1) os << "^" << exp;
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace rsq
