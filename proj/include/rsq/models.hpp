#pragma once

#include <vector>

#include "rsq/opalg.hpp"

namespace rsq {

struct SingularCocycle : std::domain_error {
  using std::domain_error::domain_error;
};

// Basis F_ij = E_ii - E_ij of the row-sum-zero algebra, i != j, ordered
// lexicographically by (i, j), 0-based. N(N-1) one-leg matrices.
std::vector<RMat> frobenius_basis(const VarSpacePtr& space);
// flat index of the pair (i, j), i != j, in frobenius_basis order
int frobenius_index(int n, int i, int j);

// diag(q_1..q_N) (position flavor) or diag(v_1..v_N)
RMat position_matrix(const VarSpacePtr& space);

// r = sum_{i!=j} (1/q_ij) F_ij (x) F_ji
RMat classical_r(const VarSpacePtr& space);
// rbar = sum_{i!=j} (1/q_ij) F_ij (x) E_jj
RMat classical_rbar(const VarSpacePtr& space);

// R = 1 + hbar r and its exact inverse 1 - hbar r
RMat quantum_R(const VarSpacePtr& space);
RMat quantum_R_inv(const VarSpacePtr& space);
// Rbar = 1 + sum_{i!=j} hbar/(q_ij - hbar) F_ij (x) E_jj; inverse has
// coefficients -hbar/q_ij
RMat quantum_Rbar(const VarSpacePtr& space);
RMat quantum_Rbar_inv(const VarSpacePtr& space);

// W_ij = prod_{a!=i}(q_aj + gamma) / prod_{a!=j} q_aj  (the a = j numerator
// factor degenerates to gamma); rows sum to 1
RMat w_matrix(const VarSpacePtr& space);
// b_j = prod_{a!=j}(q_aj + gamma) / prod_{a!=j} q_aj, so that
// W_ij (gamma + q_ij) = gamma b_j
std::vector<RatFun> b_vector(const VarSpacePtr& space);
// WQ - QW - gamma W + gamma e(x)b, rows of e(x)b all equal b; must vanish
RMat moment_residual(const VarSpacePtr& space);

// L = sum_ij W_ij S_j E_ij, one leg, shift flavor
MatOperator rs_L(const VarSpacePtr& space);
// I_n = tr_12 C^t2 L_1 (Rbar_21^t2 R_12^t2 L_1)^(n-1), zero legs
MatOperator rs_integral(const VarSpacePtr& space, int n);
// J_n = tr_{1..n} [ Rhat_12 ... Rhat_{n-1,n} W_1 ... W_n ], Rhat = R C;
// momentum-free scalar, returned as a zero-leg shift operator
MatOperator frobenius_J(const VarSpacePtr& space, int n);

// Inverts the pairing w(F_a, F_b) = tr(Q [F_a, F_b]) by exact Gaussian
// elimination and contracts it against the basis; equals classical_r.
RMat cocycle_reconstruct_r(const VarSpacePtr& space);

// Calogero-Moser operator: entries 1/q_ij off the diagonal,
// sum_{a!=i} 1/q_ai - hbar d/dq_i on it; one leg, derivative flavor
MatOperator cm_rational_L(const VarSpacePtr& space);

// Trigonometric family over the v-flavored space, D_i = v_i^2:
//   s12        = -sum_{i!=j} D_i/(D_i - D_j) F_ij (x) E_ji
//   r_tilde    = -s12 + C/2
//   R_tilde    = -1/2 sum cth(q_ij/2) E_ij (x) E_ji
//                + 1/2 sum 1/sinh(q_ij/2) E_ii (x) E_ji
//   extra_term = 1/2 sum 1/sinh(q_ij/2) E_ii (x) (E_ji + E_ij)
//   L_cm       = sum_i p_i E_ii + 1/2 sum_{i!=j} 1/sinh(q_ij/2) E_ij,
//                p_i = hbar (v_i/2) d/dv_i
struct TrigObjects {
  RMat s12, r_tilde, R_tilde, extra_term, D;
  MatOperator L_cm;
};
TrigObjects trig_objects(const VarSpacePtr& space);

// I_n = tr_12 C^t2 (L_1 + hbar s21^t2)^n, zero legs, derivative flavor
MatOperator trig_integral(const VarSpacePtr& space, int n);
// Same integral evaluated through the entrywise pair-index expansion
// X_{(ac),(bd)} = L_ab d_cd + hbar d_db (d_cb - d_ca) D_b/(D_a - D_b),
// I_n = sum_{ij} (X^n)_{(jj),(ii)} — an independent evaluation route.
MatOperator trig_integral_component(const VarSpacePtr& space, int n);

}  // namespace rsq
