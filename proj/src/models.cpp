#include "rsq/models.hpp"

namespace rsq {

namespace {

void need_flavor(const VarSpacePtr& space, Flavor f, const char* who) {
  if (!space) throw std::logic_error(std::string(who) + ": null space");
  if (space->flavor() != f) throw FlavorError(std::string(who) + ": wrong variable flavor");
}

RMat fmat(const VarSpacePtr& space, int n, int i, int j) {
  return RMat::elem(space, n, i, i) - RMat::elem(space, n, i, j);
}

// gamma as a polynomial factor (bound spaces fold it to a constant)
Poly gamma_poly(const VarSpacePtr& space) {
  if (space->gamma_bound()) return Poly::constant(*space->gamma_bound());
  return Poly::variable(space->gamma_index());
}

// prod over the given a of (q_a - q_j + gamma) as one polynomial; a = j
// contributes the bare gamma factor
Poly qdiff_gamma_product(const VarSpacePtr& space, const std::vector<int>& as, int j) {
  Poly prod = Poly::constant(Scalar(1));
  const Poly g = gamma_poly(space);
  const Poly qj = Poly::variable(j);
  for (int a : as) {
    Poly f = a == j ? g : Poly::variable(a) - qj + g;
    prod = prod * f;
  }
  return prod;
}

// denominator prod_{a!=j} q_aj as (atoms, unit)
std::pair<DenFactors, Scalar> qdiff_product_den(const VarSpacePtr& space, int j) {
  DenFactors den;
  Scalar unit(1);
  for (int a = 0; a < space->n(); ++a) {
    if (a == j) continue;
    auto [atom, u] = LinForm::position_diff(space, a, j);
    den.emplace_back(atom, 1);
    unit *= u;
  }
  return {den, unit};
}

MatOperator scalar_op(const VarSpacePtr& space, int base, OpFlavor flavor, const RatFun& f) {
  MatOperator op(space, base, 0, flavor);
  RMat c(space, base, 0);
  c.at(0, 0) = f;
  op.add_term(OpMonomial{}, c);
  return op;
}

}  // namespace

int frobenius_index(int n, int i, int j) { return i * (n - 1) + (j < i ? j : j - 1); }

std::vector<RMat> frobenius_basis(const VarSpacePtr& space) {
  const int n = space->n();
  std::vector<RMat> basis;
  basis.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) basis.push_back(fmat(space, n, i, j));
  return basis;
}

RMat position_matrix(const VarSpacePtr& space) {
  const int n = space->n();
  RMat q(space, n, 1);
  for (int i = 0; i < n; ++i) q.at(i, i) = rf_var(space, i);
  return q;
}

RMat classical_r(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "classical_r");
  const int n = space->n();
  RMat r(space, n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r += fmat(space, n, i, j).kron(fmat(space, n, j, i)).times(rf_recip_posdiff(space, i, j));
    }
  return r;
}

RMat classical_rbar(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "classical_rbar");
  const int n = space->n();
  RMat r(space, n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r += fmat(space, n, i, j)
               .kron(RMat::elem(space, n, j, j))
               .times(rf_recip_posdiff(space, i, j));
    }
  return r;
}

RMat quantum_R(const VarSpacePtr& space) {
  return RMat::identity(space, space->n(), 2) + classical_r(space).times(rf_hbar(space));
}

RMat quantum_R_inv(const VarSpacePtr& space) {
  return RMat::identity(space, space->n(), 2) - classical_r(space).times(rf_hbar(space));
}

RMat quantum_Rbar(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "quantum_Rbar");
  const int n = space->n();
  RMat m = RMat::identity(space, n, 2);
  const RatFun h = rf_hbar(space);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // hbar/(q_ij - hbar)
      RatFun c = h * rf_recip_posdiff(space, i, j, -1);
      m += fmat(space, n, i, j).kron(RMat::elem(space, n, j, j)).times(c);
    }
  return m;
}

RMat quantum_Rbar_inv(const VarSpacePtr& space) {
  return RMat::identity(space, space->n(), 2) - classical_rbar(space).times(rf_hbar(space));
}

RMat w_matrix(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "w_matrix");
  const int n = space->n();
  RMat w(space, n, 1);
  for (int j = 0; j < n; ++j) {
    auto [den, unit] = qdiff_product_den(space, j);
    for (int i = 0; i < n; ++i) {
      std::vector<int> as;
      for (int a = 0; a < n; ++a)
        if (a != i) as.push_back(a);
      Poly num = qdiff_gamma_product(space, as, j);
      w.at(i, j) = RatFun::make(space, num.scaled(Scalar(1) / unit), den);
    }
  }
  return w;
}

std::vector<RatFun> b_vector(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "b_vector");
  const int n = space->n();
  std::vector<RatFun> b;
  b.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<int> as;
    for (int a = 0; a < n; ++a)
      if (a != j) as.push_back(a);
    Poly num = qdiff_gamma_product(space, as, j);
    auto [den, unit] = qdiff_product_den(space, j);
    b.push_back(RatFun::make(space, num.scaled(Scalar(1) / unit), den));
  }
  return b;
}

RMat moment_residual(const VarSpacePtr& space) {
  const int n = space->n();
  const RMat w = w_matrix(space);
  const RMat q = position_matrix(space);
  const RatFun g = rf_gamma(space);
  const std::vector<RatFun> b = b_vector(space);
  RMat eb(space, n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) eb.at(i, j) = b[static_cast<std::size_t>(j)];
  return w * q - q * w - w.times(g) + eb.times(g);
}

MatOperator rs_L(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "rs_L");
  const int n = space->n();
  const RMat w = w_matrix(space);
  MatOperator op(space, n, 1, OpFlavor::Shift);
  for (int j = 0; j < n; ++j) {
    RMat col(space, n, 1);
    for (int i = 0; i < n; ++i) col.at(i, j) = w.at(i, j);
    op.add_term(OpMonomial::unit(j), col);
  }
  return op;
}

MatOperator rs_integral(const VarSpacePtr& space, int n) {
  if (n < 1) throw std::domain_error("rs_integral: n must be positive");
  const int N = space->n();
  const MatOperator l1 = rs_L(space).embed({1}, 2);
  const RMat hop =
      quantum_Rbar(space).swap_legs(1, 2).partial_transpose(2) *
      quantum_R(space).partial_transpose(2);
  const MatOperator hopop = MatOperator::from_mat(hop, OpFlavor::Shift);
  MatOperator prod = l1;
  for (int k = 1; k < n; ++k) prod = prod * hopop * l1;
  const RMat ct2 = RMat::perm_C(space, N).partial_transpose(2);
  return (ct2 * prod).partial_trace({1, 2});
}

MatOperator frobenius_J(const VarSpacePtr& space, int n) {
  if (n < 1) throw std::domain_error("frobenius_J: n must be positive");
  const int N = space->n();
  const RMat w = w_matrix(space);
  if (n == 1) return scalar_op(space, N, OpFlavor::Shift, w.trace());
  const RMat rhat = quantum_R(space) * RMat::perm_C(space, N);
  RMat prod = rhat.embed({1, 2}, n);
  for (int k = 2; k < n; ++k) prod = prod * rhat.embed({k, k + 1}, n);
  for (int k = 1; k <= n; ++k) prod = prod * w.embed({k}, n);
  return scalar_op(space, N, OpFlavor::Shift, prod.trace());
}

RMat cocycle_reconstruct_r(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "cocycle_reconstruct_r");
  const int n = space->n();
  const int m = n * (n - 1);
  const std::vector<RMat> basis = frobenius_basis(space);
  const RMat q = position_matrix(space);
  RMat omega(space, m, 1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const RMat& fa = basis[static_cast<std::size_t>(a)];
      const RMat& fb = basis[static_cast<std::size_t>(b)];
      omega.at(a, b) = (q * (fa * fb - fb * fa)).trace();
    }
  RMat inv;
  try {
    inv = gauss_inverse(omega);
  } catch (const BadPositions& e) {
    throw SingularCocycle(e.what());
  }
  // the pairing is antisymmetric; contracting with the transposed inverse
  // reproduces r with the right orientation
  RMat r(space, n, 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const RatFun& c = inv.at(b, a);
      if (c.is_zero()) continue;
      r += basis[static_cast<std::size_t>(a)].kron(basis[static_cast<std::size_t>(b)]).times(c);
    }
  return r;
}

MatOperator cm_rational_L(const VarSpacePtr& space) {
  need_flavor(space, Flavor::Q, "cm_rational_L");
  const int n = space->n();
  RMat m0(space, n, 1);
  for (int i = 0; i < n; ++i) {
    RatFun diag = RatFun::zero(space);
    for (int a = 0; a < n; ++a) {
      if (a == i) continue;
      m0.at(i, a) = rf_recip_posdiff(space, i, a);
      diag += rf_recip_posdiff(space, a, i);
    }
    m0.at(i, i) = diag;
  }
  MatOperator op(space, n, 1, OpFlavor::Deriv);
  op.add_term(OpMonomial{}, m0);
  const RatFun h = rf_hbar(space);
  for (int i = 0; i < n; ++i)
    op.add_term(OpMonomial::unit(i), RMat::elem(space, n, i, i).times(-h));
  return op;
}

namespace {

// D_i/(D_i - D_j) = v_i^2/(v_i^2 - v_j^2)
RatFun dd_ratio(const VarSpacePtr& space, int i, int j) {
  return RatFun::from_poly(space, Poly::monomial(Mono::unit(i, 2), Scalar(1))) *
         rf_recip_sqdiff(space, i, j);
}

// 1/(2 sinh(q_ij/2)) = v_i v_j/(v_i^2 - v_j^2)
RatFun half_sinh_inv(const VarSpacePtr& space, int i, int j) {
  Mono vv = Mono::unit(i).times(Mono::unit(j));
  return RatFun::from_poly(space, Poly::monomial(vv, Scalar(1))) * rf_recip_sqdiff(space, i, j);
}

}  // namespace

TrigObjects trig_objects(const VarSpacePtr& space) {
  need_flavor(space, Flavor::V, "trig_objects");
  const int n = space->n();
  TrigObjects t{RMat(space, n, 2), RMat(space, n, 2), RMat(space, n, 2), RMat(space, n, 2),
                RMat(space, n, 1), MatOperator(space, n, 1, OpFlavor::Deriv)};
  const Scalar half(1, 2);
  for (int i = 0; i < n; ++i) {
    t.D.at(i, i) = RatFun::from_poly(space, Poly::monomial(Mono::unit(i, 2), Scalar(1)));
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      t.s12 -= fmat(space, n, i, j).kron(RMat::elem(space, n, j, i)).times(dd_ratio(space, i, j));
      // cth(q_ij/2)/2 = (v_i^2 + v_j^2) / (2 (v_i^2 - v_j^2))
      RatFun cth = (RatFun::from_poly(space, Poly::monomial(Mono::unit(i, 2), Scalar(1))) +
                    RatFun::from_poly(space, Poly::monomial(Mono::unit(j, 2), Scalar(1)))) *
                   rf_recip_sqdiff(space, i, j);
      const RatFun sh = half_sinh_inv(space, i, j);
      t.R_tilde += RMat::elem(space, n, i, j)
                       .kron(RMat::elem(space, n, j, i))
                       .times(cth.scaled(-half));
      t.R_tilde += RMat::elem(space, n, i, i).kron(RMat::elem(space, n, j, i)).times(sh);
      t.extra_term += RMat::elem(space, n, i, i)
                          .kron(RMat::elem(space, n, j, i) + RMat::elem(space, n, i, j))
                          .times(sh);
    }
  }
  t.r_tilde = RMat::perm_C(space, n).scaled(half) - t.s12;
  RMat off(space, n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) off.at(i, j) = half_sinh_inv(space, i, j);
  t.L_cm.add_term(OpMonomial{}, off);
  const RatFun h = rf_hbar(space);
  for (int i = 0; i < n; ++i)
    t.L_cm.add_term(OpMonomial::unit(i), RMat::elem(space, n, i, i).times(h));
  return t;
}

MatOperator trig_integral(const VarSpacePtr& space, int n) {
  if (n < 1) throw std::domain_error("trig_integral: n must be positive");
  const int N = space->n();
  const TrigObjects t = trig_objects(space);
  const RMat s21t2 = t.s12.swap_legs(1, 2).partial_transpose(2);
  const MatOperator x =
      t.L_cm.embed({1}, 2) +
      MatOperator::from_mat(s21t2.times(rf_hbar(space)), OpFlavor::Deriv);
  MatOperator prod = x;
  for (int k = 1; k < n; ++k) prod = prod * x;
  const RMat ct2 = RMat::perm_C(space, N).partial_transpose(2);
  return (ct2 * prod).partial_trace({1, 2});
}

MatOperator trig_integral_component(const VarSpacePtr& space, int n) {
  need_flavor(space, Flavor::V, "trig_integral_component");
  if (n < 1) throw std::domain_error("trig_integral_component: n must be positive");
  const int N = space->n();
  const RatFun h = rf_hbar(space);
  const MatOperator zero(space, N, 0, OpFlavor::Deriv);
  // pair (a, c) flattened as a*N + c
  std::vector<std::vector<MatOperator>> x(
      static_cast<std::size_t>(N) * N,
      std::vector<MatOperator>(static_cast<std::size_t>(N) * N, zero));
  for (int a = 0; a < N; ++a)
    for (int c = 0; c < N; ++c)
      for (int b = 0; b < N; ++b)
        for (int d = 0; d < N; ++d) {
          MatOperator& e = x[static_cast<std::size_t>(a) * N + c][static_cast<std::size_t>(b) * N + d];
          if (c == d) {
            if (a == b)
              e += scalar_op(space, N, OpFlavor::Deriv, h) *
                   MatOperator::monomial(RMat::identity(space, N, 0), OpMonomial::unit(a),
                                         OpFlavor::Deriv);
            else
              e += scalar_op(space, N, OpFlavor::Deriv, half_sinh_inv(space, a, b));
          }
          if (d == b && a != b) {
            const int delta = (c == b ? 1 : 0) - (c == a ? 1 : 0);
            if (delta != 0) {
              // D_b/(D_a - D_b) = v_b^2/(v_a^2 - v_b^2)
              RatFun c2 = dd_ratio(space, b, a).scaled(Scalar(-delta));
              e += scalar_op(space, N, OpFlavor::Deriv, h * c2);
            }
          }
        }
  std::vector<std::vector<MatOperator>> pow = x;
  for (int k = 1; k < n; ++k) {
    std::vector<std::vector<MatOperator>> next(
        static_cast<std::size_t>(N) * N,
        std::vector<MatOperator>(static_cast<std::size_t>(N) * N, zero));
    for (std::size_t i = 0; i < pow.size(); ++i)
      for (std::size_t m = 0; m < pow.size(); ++m) {
        if (pow[i][m].is_zero()) continue;
        for (std::size_t j = 0; j < pow.size(); ++j) {
          if (x[m][j].is_zero()) continue;
          next[i][j] += pow[i][m] * x[m][j];
        }
      }
    pow = std::move(next);
  }
  MatOperator sum(space, N, 0, OpFlavor::Deriv);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      sum += pow[static_cast<std::size_t>(j) * N + j][static_cast<std::size_t>(i) * N + i];
  return sum;
}

}  // namespace rsq
