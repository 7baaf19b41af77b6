#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rsq/models.hpp"

using namespace rsq;

namespace {

// sum_i E_ii (x) E_ii
RMat diag_corr(const VarSpacePtr& sp) {
  const int n = sp->n();
  RMat m(sp, n, 2);
  for (int i = 0; i < n; ++i) m += RMat::elem(sp, n, i, i).kron(RMat::elem(sp, n, i, i));
  return m;
}

MatOperator scalar_term(const VarSpacePtr& sp, int base, OpFlavor flavor, const RatFun& f,
                        const OpMonomial& m = OpMonomial{}) {
  RMat c(sp, base, 0);
  c.at(0, 0) = f;
  return MatOperator::monomial(c, m, flavor);
}

}  // namespace

TEST_CASE("frobenius basis") {
  auto sp = make_space(3);
  auto basis = frobenius_basis(sp);
  REQUIRE(basis.size() == 6);
  CHECK(basis[static_cast<std::size_t>(frobenius_index(3, 0, 1))] ==
        RMat::elem(sp, 3, 0, 0) - RMat::elem(sp, 3, 0, 1));
  // every row of every F_ij kills the all-ones vector
  for (const auto& f : basis)
    for (int r = 0; r < 3; ++r) {
      RatFun s = RatFun::zero(sp);
      for (int c = 0; c < 3; ++c) s += f.at(r, c);
      CHECK(s.is_zero());
    }
}

TEST_CASE("w matrix frozen entries at N=2") {
  auto sp = make_space(2);
  RMat w = w_matrix(sp);
  CHECK(w.at(0, 0) == rf_posdiff(sp, 1, 0, 0, 1) * rf_recip_posdiff(sp, 1, 0));
  CHECK(w.at(0, 1) == rf_gamma(sp) * rf_recip_posdiff(sp, 0, 1));
  CHECK(w.at(1, 0) == rf_gamma(sp) * rf_recip_posdiff(sp, 1, 0));
  CHECK(w.at(1, 1) == rf_posdiff(sp, 0, 1, 0, 1) * rf_recip_posdiff(sp, 0, 1));
}

TEST_CASE("w matrix rows sum to one") {
  for (int n = 2; n <= 5; ++n) {
    auto sp = make_space(n);
    RMat w = w_matrix(sp);
    for (int i = 0; i < n; ++i) {
      RatFun s = RatFun::zero(sp);
      for (int j = 0; j < n; ++j) s += w.at(i, j);
      CHECK(s == RatFun::one(sp));
    }
  }
}

TEST_CASE("w matrix at gamma=0 is the identity") {
  auto sp = make_space(3, Flavor::Q, std::nullopt, Scalar(0));
  CHECK(w_matrix(sp) == RMat::identity(sp, 3, 1));
}

TEST_CASE("b vector solves the moment equation entrywise") {
  for (int n : {2, 3}) {
    auto sp = make_space(n);
    RMat w = w_matrix(sp);
    auto b = b_vector(sp);
    const RatFun g = rf_gamma(sp);
    // W_ij (gamma + q_ij) = gamma b_j, including i = j where q_ii = 0
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RatFun lhs = i == j ? w.at(i, j) * g : w.at(i, j) * rf_posdiff(sp, i, j, 0, 1);
        CHECK(lhs == g * b[static_cast<std::size_t>(j)]);
      }
  }
}

TEST_CASE("moment residual vanishes") {
  for (int n : {2, 3}) CHECK(moment_residual(make_space(n)).is_zero());
  auto sp0 = make_space(3, Flavor::Q, std::nullopt, Scalar(0));
  CHECK(moment_residual(sp0).is_zero());
}

TEST_CASE("classical r skew symmetry and nilpotency") {
  for (int n : {2, 3}) {
    auto sp = make_space(n);
    RMat r = classical_r(sp);
    CHECK(r.swap_legs(1, 2) == -r);
    CHECK((r * r).is_zero());
  }
  auto sp = make_space(2);
  // coefficient of F_12 (x) F_21 read off one matrix entry: E_00 (x) E_11
  CHECK(classical_r(sp).at(1, 1) == rf_recip_posdiff(sp, 0, 1));
}

TEST_CASE("quantum R and Rbar invert exactly") {
  for (int n : {2, 3}) {
    auto sp = make_space(n);
    RMat one = RMat::identity(sp, n, 2);
    CHECK(quantum_R(sp) * quantum_R_inv(sp) == one);
    CHECK(quantum_Rbar(sp) * quantum_Rbar_inv(sp) == one);
    CHECK(quantum_Rbar_inv(sp) * quantum_Rbar(sp) == one);
  }
}

TEST_CASE("quantum R at hbar=0 is the identity") {
  auto sp = make_space(3, Flavor::Q, Scalar(0));
  CHECK(quantum_R(sp) == RMat::identity(sp, 3, 2));
  CHECK(quantum_Rbar(sp) == RMat::identity(sp, 3, 2));
}

TEST_CASE("Rbar expands to first order as hbar rbar") {
  auto sp = make_space(3);
  const RatFun h = rf_hbar(sp);
  RMat rest = quantum_Rbar(sp) - RMat::identity(sp, 3, 2) - classical_rbar(sp).times(h);
  // remainder is exactly hbar^2 / (q_ij (q_ij - hbar)) on the rbar support
  RMat expect(sp, 3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      RatFun c = h * h * rf_recip_posdiff(sp, i, j) * rf_recip_posdiff(sp, i, j, -1);
      expect += (RMat::elem(sp, 3, i, i) - RMat::elem(sp, 3, i, j))
                    .kron(RMat::elem(sp, 3, j, j))
                    .times(c);
    }
  CHECK(rest == expect);
}

TEST_CASE("rs L frozen entries and free limit") {
  auto sp = make_space(2);
  MatOperator l = rs_L(sp);
  auto it = l.terms().find(OpMonomial::unit(1));
  REQUIRE(it != l.terms().end());
  CHECK(it->second.at(0, 1) == rf_gamma(sp) * rf_recip_posdiff(sp, 0, 1));

  auto sp0 = make_space(3, Flavor::Q, std::nullopt, Scalar(0));
  MatOperator free = rs_L(sp0);
  MatOperator expect(sp0, 3, 1, OpFlavor::Shift);
  for (int j = 0; j < 3; ++j) expect.add_term(OpMonomial::unit(j), RMat::elem(sp0, 3, j, j));
  CHECK((free - expect).is_zero());
}

TEST_CASE("QTL permutation relation") {
  for (int n : {2, 3}) {
    auto sp = make_space(n);
    MatOperator q1 = MatOperator::from_mat(position_matrix(sp).embed({1}, 2), OpFlavor::Shift);
    MatOperator l2 = rs_L(sp).embed({2}, 2);
    MatOperator rhs = l2 * diag_corr(sp).times(rf_hbar(sp));
    CHECK((op_commutator(q1, l2) - rhs).is_zero());
  }
}

TEST_CASE("first quantum integral is the trace of L") {
  for (int n : {2, 3}) {
    auto sp = make_space(n);
    RMat w = w_matrix(sp);
    MatOperator expect(sp, n, 0, OpFlavor::Shift);
    for (int j = 0; j < n; ++j)
      expect += scalar_term(sp, n, OpFlavor::Shift, w.at(j, j), OpMonomial::unit(j));
    CHECK((rs_integral(sp, 1) - expect).is_zero());
  }
}

TEST_CASE("free integrals are pure shift sums") {
  auto sp0 = make_space(2, Flavor::Q, std::nullopt, Scalar(0));
  for (int n = 1; n <= 3; ++n) {
    MatOperator expect(sp0, 2, 0, OpFlavor::Shift);
    for (int j = 0; j < 2; ++j)
      expect += scalar_term(sp0, 2, OpFlavor::Shift, RatFun::one(sp0), OpMonomial::unit(j, n));
    CHECK((rs_integral(sp0, n) - expect).is_zero());
  }
}

TEST_CASE("frobenius J values") {
  for (int n : {2, 3, 4}) {
    auto sp = make_space(n);
    MatOperator j1 = frobenius_J(sp, 1);
    MatOperator expect = scalar_term(sp, n, OpFlavor::Shift, RatFun::constant(sp, Scalar(n)));
    CHECK((j1 - expect).is_zero());
  }
  // at gamma = 0 the J are q-independent constants
  auto sp0 = make_space(3, Flavor::Q, std::nullopt, Scalar(0));
  MatOperator j2 = frobenius_J(sp0, 2);
  CHECK((j2 - scalar_term(sp0, 3, OpFlavor::Shift, RatFun::constant(sp0, Scalar(3)))).is_zero());
  MatOperator j3 = frobenius_J(sp0, 3);
  REQUIRE(j3.term_count() == 1);
  CHECK(j3.terms().begin()->second.at(0, 0).is_constant());
}

TEST_CASE("cocycle pairing and reconstruction") {
  auto sp = make_space(2);
  RMat q = position_matrix(sp);
  auto basis = frobenius_basis(sp);
  const RMat& f01 = basis[static_cast<std::size_t>(frobenius_index(2, 0, 1))];
  const RMat& f10 = basis[static_cast<std::size_t>(frobenius_index(2, 1, 0))];
  RatFun w = (q * (f01 * f10 - f10 * f01)).trace();
  CHECK(w == rf_posdiff(sp, 0, 1));
  CHECK((q * (f10 * f01 - f01 * f10)).trace() == -w);

  for (int n : {2, 3}) {
    auto spn = make_space(n);
    CHECK(cocycle_reconstruct_r(spn) == classical_r(spn));
  }
}

TEST_CASE("cm operator entries and position bracket") {
  auto sp = make_space(2);
  MatOperator l = cm_rational_L(sp);
  auto it = l.terms().find(OpMonomial{});
  REQUIRE(it != l.terms().end());
  CHECK(it->second.at(0, 1) == rf_recip_posdiff(sp, 0, 1));

  for (int n : {2, 3}) {
    auto spn = make_space(n);
    MatOperator q1 =
        MatOperator::from_mat(position_matrix(spn).embed({1}, 2), OpFlavor::Deriv);
    MatOperator l2 = cm_rational_L(spn).embed({2}, 2);
    MatOperator rhs = MatOperator::from_mat(diag_corr(spn).times(rf_hbar(spn)), OpFlavor::Deriv);
    CHECK((op_commutator(q1, l2) - rhs).is_zero());
  }
}

TEST_CASE("trig s identity") {
  for (int n : {2, 3}) {
    auto sp = make_space(n, Flavor::V);
    TrigObjects t = trig_objects(sp);
    RMat d1 = t.D.embed({1}, 2);
    RMat d1inv(sp, n, 1);
    for (int i = 0; i < n; ++i)
      d1inv.at(i, i) = RatFun::make(sp, Poly::constant(Scalar(1)),
                                    {{LinForm::single_var(sp, i).first, 2}});
    RMat lhs = t.s12 - d1inv.embed({1}, 2) * t.s12 * d1 + diag_corr(sp);
    CHECK(lhs == RMat::perm_C(sp, n));
  }
}

TEST_CASE("R tilde equals the conjugated r tilde") {
  for (int n : {2, 3}) {
    auto sp = make_space(n, Flavor::V);
    TrigObjects t = trig_objects(sp);
    RMat v(sp, n, 1), vinv(sp, n, 1);
    for (int i = 0; i < n; ++i) {
      v.at(i, i) = rf_var(sp, i);
      vinv.at(i, i) = rf_reciprocal(rf_var(sp, i));
    }
    RMat v12 = v.embed({1}, 2) * v.embed({2}, 2);
    RMat v12inv = vinv.embed({1}, 2) * vinv.embed({2}, 2);
    RMat conj = v12 * t.r_tilde * v12inv - diag_corr(sp).scaled(Scalar(1, 2));
    CHECK(conj == t.R_tilde);
  }
}

TEST_CASE("trig L operator entries") {
  auto sp = make_space(2, Flavor::V);
  TrigObjects t = trig_objects(sp);
  auto it = t.L_cm.terms().find(OpMonomial{});
  REQUIRE(it != t.L_cm.terms().end());
  // momentum-free part has zero diagonal and 1/(2 sinh(q_12/2)) off it
  CHECK(it->second.at(0, 0).is_zero());
  CHECK(it->second.at(1, 1).is_zero());
  RatFun expect = RatFun::from_poly(sp, Poly::monomial(Mono::unit(0).times(Mono::unit(1)), Scalar(1))) *
                  rf_recip_sqdiff(sp, 0, 1);
  CHECK(it->second.at(0, 1) == expect);
  CHECK(it->second.at(1, 0) == -expect);
}

TEST_CASE("trig first integral") {
  for (int n : {2, 3}) {
    auto sp = make_space(n, Flavor::V);
    const RatFun h = rf_hbar(sp);
    MatOperator expect(sp, n, 0, OpFlavor::Deriv);
    for (int i = 0; i < n; ++i)
      expect += scalar_term(sp, n, OpFlavor::Deriv, h, OpMonomial::unit(i));
    expect += scalar_term(sp, n, OpFlavor::Deriv,
                          h.scaled(Scalar(n * (n - 1), 2)));
    CHECK((trig_integral(sp, 1) - expect).is_zero());
    CHECK((trig_integral_component(sp, 1) - expect).is_zero());
  }
}

TEST_CASE("trig tensor and component integrals agree") {
  for (int n : {2, 3}) {
    auto sp = make_space(n, Flavor::V);
    CHECK((trig_integral(sp, 2) - trig_integral_component(sp, 2)).is_zero());
  }
}

TEST_CASE("constructors are deterministic") {
  auto sp = make_space(3);
  CHECK(w_matrix(sp) == w_matrix(sp));
  CHECK(quantum_Rbar(sp).str() == quantum_Rbar(sp).str());
  CHECK((rs_integral(sp, 2) - rs_integral(sp, 2)).is_zero());
  auto spv = make_space(2, Flavor::V);
  CHECK(trig_objects(spv).r_tilde == trig_objects(spv).r_tilde);
}

TEST_CASE("flavor guards") {
  auto spv = make_space(2, Flavor::V);
  CHECK_THROWS_AS(w_matrix(spv), FlavorError);
  CHECK_THROWS_AS(classical_r(spv), FlavorError);
  auto spq = make_space(2);
  CHECK_THROWS_AS(trig_objects(spq), FlavorError);
  CHECK_THROWS_AS(rs_integral(spq, 0), std::domain_error);
}
