#pragma once

#include "orbigw/structure.hpp"

namespace orbigw {

/// Result of checking M(z-1,s) W(z,s) - W(z,s) M(z,s) against zero.
struct TdeReport {
    bool pass = false;
    long vanish_layers = 0;  // leading residual layers that are identically zero
    long checked_layers = 0;
};

/// Entry (i,j), 1-based, of the normalized formal solution M_a(z,s), computed
/// from the closed-form triple sums (generalized Bernoulli route).
PuiseuxSeries m_entry(const OrbifoldStructure& st, int a, int i, int j, long order);

/// Full matrix M_a(z,s) = z^{1-q_a}(K_a + O(1/z)) to the requested depth.
/// Validates the leading coefficient and polynomiality in s on construction.
MatSeries m_matrix(const OrbifoldStructure& st, int a, long order);

/// Process-wide memoized access to m_matrix; honors GW_CACHE_DIR when set.
const MatSeries& m_matrix_cached(const OrbifoldStructure& st, int a, long order);

/// Equal-weight (m1 == m2) simplification of the entry formulas; must agree
/// with m_matrix.
MatSeries m_matrix_equal_weights(const OrbifoldStructure& st, int a, long order);

/// Asymptotic expansion of Gamma(z+alpha)/Gamma(z+beta) as
/// z^{alpha-beta} sum_l binom(alpha-beta, l) B_l(alpha-beta+1, alpha) z^{-l}.
PuiseuxSeries gamma_ratio_expansion(const Rational& alpha, const Rational& beta, long order);

/// Entry (i,j) of M_a via the Gamma-ratio route, with root-of-unity sums
/// replaced by divisibility filters. Must equal m_entry.
PuiseuxSeries m_entry_via_gamma(const OrbifoldStructure& st, int a, int i, int j, long order);

/// Independent order-by-order solution of the difference equation at a fixed
/// rational s0: one joint sparse linear system over Q with normalization
/// M_0 = K_a and a truncation buffer (default 2*m1, doubled on failure).
MatSeries solve_tde_linear(const OrbifoldStructure& st, int a, long order, const Rational& s0);

/// Residual check of the difference equation; the shift consumes one layer, so
/// PASS means the residual vanishes to at least order-1 layers.
TdeReport verify_tde(const OrbifoldStructure& st, const MatSeries& M);

/// M_a(z,s; m2,m1) == -eta2^{-1} M_{l-a}(z,s; m1,m2)^T eta2 + I delta_{a,m2}.
bool check_transpose_symmetry(int m1, int m2, int a, long order);

/// M_a(z,s; m2,m1) == (-1)^{q_a} eta1^{-1} M_{l-a}(-z,-s; m1,m2) eta1
/// + I delta_{a,m2}, with the half-integer sign evaluated formally on the
/// offset grid (net per-layer sign -(-1)^n).
bool check_reflection_symmetry(int m1, int m2, int a, long order);

/// M_a M_b == M_b M_a == 0 for all a <= m1 < b; vacuously true if none.
bool check_annihilation(const OrbifoldStructure& st, long order);

/// Tr M_a == m1 delta_{a,m1} as a series identity.
bool check_trace(const OrbifoldStructure& st, int a, long order);

/// det M_a == 0 as a series identity.
bool check_det(const OrbifoldStructure& st, int a, long order);

/// M_a == s^{1-a} M_1^a (a <= m1) and M_a == (-s)^{1-l+a} M_{l-1}^{l-a} (a > m1).
bool check_power_relation(const OrbifoldStructure& st, int a, long order);

/// Every tail coefficient is a polynomial in s of degree at most the depth.
bool check_polynomiality(const OrbifoldStructure& st, int a, long order);

/// Substitutes s = s0 in every coefficient.
MatSeries specialize_s(const MatSeries& M, const Rational& s0);

}  // namespace orbigw
