#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rsq/phase.hpp"

using namespace rsq;

namespace {

PhaseFun random_pf(const VarSpacePtr& sp, RandomSource& rng) {
  PhaseFun f(sp);
  const std::size_t nterms = 1 + rng.integer(2);
  for (std::size_t t = 0; t < nterms; ++t) {
    OpMonomial m;
    m.a[rng.integer(static_cast<std::uint64_t>(sp->n()))] = static_cast<int>(rng.integer(3));
    RatFun c = RatFun::constant(sp, rng.rational(4));
    if (rng.integer(2)) c = c * rf_var(sp, static_cast<int>(rng.integer(static_cast<std::uint64_t>(sp->n()))));
    if (rng.integer(3) == 0) c = c * rf_recip_posdiff(sp, 0, 1);
    f.add_term(m, c);
  }
  return f;
}

}  // namespace

TEST_CASE("canonical pairs") {
  auto sp = make_space(2);
  PhaseFun q1 = PhaseFun::from_rf(rf_var(sp, 0));
  PhaseFun q2 = PhaseFun::from_rf(rf_var(sp, 1));
  PhaseFun P1 = PhaseFun::momentum(sp, 0), P2 = PhaseFun::momentum(sp, 1);
  CHECK(pbracket(q1, P1) == P1);
  CHECK(pbracket(q1, P2).is_zero());
  CHECK(pbracket(q1, q2).is_zero());
  CHECK(pbracket(P1, P2).is_zero());
  CHECK(pbracket(q1, P1 * P1) == (P1 * P1).scaled(Scalar(2)));
}

TEST_CASE("bracket against an off-diagonal coefficient") {
  auto sp = make_space(2);
  RatFun w12 = rf_gamma(sp) * rf_recip_posdiff(sp, 0, 1);
  PhaseFun f = PhaseFun::from_rf(w12);
  PhaseFun P2 = PhaseFun::momentum(sp, 1);
  // d/dq2 [gamma/(q1-q2)] = +gamma/(q1-q2)^2
  RatFun dref = rf_gamma(sp) * rf_recip_posdiff(sp, 0, 1) * rf_recip_posdiff(sp, 0, 1);
  CHECK(pbracket(f, P2) == P2.times(dref));
  CHECK(w12.derive(1) == dref);
}

TEST_CASE("antisymmetry, bilinearity, Leibniz, Jacobi") {
  for (Flavor fl : {Flavor::Q, Flavor::V}) {
    auto sp = make_space(2, fl);
    RandomSource rng(fl == Flavor::Q ? 61 : 67);
    for (int t = 0; t < 25; ++t) {
      PhaseFun f = random_pf(sp, rng), g = random_pf(sp, rng), h = random_pf(sp, rng);
      CHECK((pbracket(f, g) + pbracket(g, f)).is_zero());
      CHECK(pbracket(f + g, h) == pbracket(f, h) + pbracket(g, h));
      CHECK(pbracket(f, g * h) == pbracket(f, g) * h + g * pbracket(f, h));
      PhaseFun jac = pbracket(f, pbracket(g, h)) + pbracket(g, pbracket(h, f)) +
                     pbracket(h, pbracket(f, g));
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("momentum representation consistency") {
  auto sp = make_space(3);
  RandomSource rng(71);
  for (int t = 0; t < 10; ++t) {
    RatFun c = rf_recip_posdiff(sp, 0, 1) * rf_var(sp, 2) + rf_var(sp, static_cast<int>(rng.integer(3)));
    PhaseFun f = PhaseFun::from_rf(c);
    for (int k = 0; k < 3; ++k) {
      PhaseFun Pk = PhaseFun::momentum(sp, k);
      CHECK(pbracket(f, Pk) == Pk.times(c.derive(k)));
    }
  }
}

TEST_CASE("v-flavor pairs") {
  auto sp = make_space(2, Flavor::V);
  PhaseFun v1 = PhaseFun::from_rf(rf_var(sp, 0));
  PhaseFun p1 = PhaseFun::momentum(sp, 0), p2 = PhaseFun::momentum(sp, 1);
  // v = e^{q/2}: {v, p} = dv/dq = v/2
  CHECK(pbracket(v1, p1) == PhaseFun::from_rf(rf_var(sp, 0).scaled(scal(1, 2))));
  CHECK(pbracket(v1, p2).is_zero());
  CHECK(pbracket(p1, p1 * p2).is_zero());
}

TEST_CASE("tensor brackets") {
  auto sp = make_space(2);
  const int n = 2;
  PhaseMat Q(sp, n, 1);
  for (int i = 0; i < n; ++i) Q.at(i, i) = PhaseFun::from_rf(rf_var(sp, i));

  CHECK(pbracket_tensor(Q, Q).is_zero());

  // L = W diag(PP)
  auto W = [&](int i, int j) -> RatFun {
    if (i == 0 && j == 0) return rf_posdiff(sp, 1, 0, 0, 1) * rf_recip_posdiff(sp, 1, 0);
    if (i == 1 && j == 1) return rf_posdiff(sp, 0, 1, 0, 1) * rf_recip_posdiff(sp, 0, 1);
    if (i == 0 && j == 1) return rf_gamma(sp) * rf_recip_posdiff(sp, 0, 1);
    return rf_gamma(sp) * rf_recip_posdiff(sp, 1, 0);
  };
  PhaseMat L(sp, n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      L.at(i, j) = PhaseFun::momentum(sp, j).times(W(i, j));

  PhaseMat lhs = pbracket_tensor(Q, L);
  RMat diag(sp, n, 2);
  for (int i = 0; i < n; ++i) diag += RMat::elem(sp, n, i, i).kron(RMat::elem(sp, n, i, i));
  PhaseMat rhs = L.embed({2}, 2) * diag;
  CHECK(lhs == rhs);

  // antisymmetry at the tensor level: {M1, N2} = -swap {N1, M2}
  RandomSource rng(83);
  PhaseMat M(sp, n, 1), Np(sp, n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M.at(i, j) = random_pf(sp, rng);
      Np.at(i, j) = random_pf(sp, rng);
    }
  PhaseMat a = pbracket_tensor(M, Np);
  PhaseMat b = pbracket_tensor(Np, M).swap_legs(1, 2);
  CHECK((a + b).is_zero());
}

TEST_CASE("eval over phase points") {
  auto sp = make_space(2);
  PhaseFun f = PhaseFun::momentum(sp, 0, 2).times(rf_recip_posdiff(sp, 0, 1)) +
               PhaseFun::from_rf(rf_gamma(sp));
  std::vector<Scalar> q{Scalar(5), Scalar(2), Scalar(0), Scalar(7)};  // hbar slot unused
  std::vector<Scalar> p{Scalar(3), Scalar(4)};
  // 9/3 + 7
  CHECK(f.eval(q, p) == Scalar(10));
}
