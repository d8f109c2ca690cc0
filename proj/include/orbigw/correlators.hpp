#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "orbigw/structure.hpp"
#include "orbigw/tde.hpp"

namespace orbigw {

/// One Gromov-Witten number. `d` empty means the degree-dimension constraint
/// has no nonnegative integer solution (the invariant vanishes identically).
struct InvariantRecord {
    int m1 = 0;
    int m2 = 0;
    std::vector<std::pair<int, long>> insertions;  // (sector a, descendent level i)
    long g = 0;
    std::optional<long> d;
    Rational value;

    bool vanishes_by_dimension() const { return !d.has_value(); }
};

/// Normalization q_{a,i}: rising factorial (q_a)_{i+1} times the sector weight.
Rational q_norm(const OrbifoldStructure& st, int a, long i);

/// Solves 2g - 2 + d/rho + k = sum i + sum q for d; nonnegative integer or empty.
std::optional<long> degree_from_dimension(const OrbifoldStructure& st, long g,
                                          const std::vector<std::pair<int, long>>& insertions);

/// R^b_{a,{}} = eps^{1-q_a} lambda^{q_a} M_a(lambda/eps, 1/eps): a Laurent
/// matrix series in lambda with polynomial eps coefficients (offset lambda^1).
/// Throws if a negative eps exponent survives the substitution.
MatSeries r_base(const OrbifoldStructure& st, int a, long order, long eps_cap);

/// Memoized commutator recursion for the R-series attached to a fixed multiset
/// of insertion labels. Subset multiplicities reduce to binomial weights when
/// all labels coincide.
class RCalc {
public:
    RCalc(const OrbifoldStructure& st, std::vector<std::pair<int, long>> labels, std::vector<long> counts,
          long order, long eps_cap);

    const OrbifoldStructure& structure() const { return *st_; }
    const std::vector<std::pair<int, long>>& labels() const { return labels_; }
    const std::vector<long>& counts() const { return counts_; }
    long order() const { return order_; }

    /// R for sector b with the given sub-multiset of labels applied.
    const MatSeries& R(int b, const std::vector<long>& applied);

    /// Uniform-label convenience: R^{(a,i)}_{b,m}.
    const MatSeries& R_uniform(int b, long m);

private:
    const OrbifoldStructure* st_;
    std::vector<std::pair<int, long>> labels_;
    std::vector<long> counts_;
    long order_;
    long eps_cap_;
    std::map<std::pair<int, std::vector<long>>, MatSeries> memo_;
};

/// Coefficient of lambda^{-j1-1} mu^{-j2-1} eps^{eps_pow} in
/// sum_{I + J = counts} mult(I) Tr R_{b,I}(lambda) R_{c,J}(mu) / (lambda-mu)^2,
/// expanded in |mu| < |lambda|. The m = 0 correction terms carry only
/// nonnegative mu powers and cannot reach these coefficients. `counts`
/// defaults to the calculator's full multiset; a smaller multiset reuses the
/// same memoized R-series.
Rational two_point_trace_cell(RCalc& rc, int b, int c, long j1, long j2, long eps_pow,
                              const std::vector<long>* counts = nullptr);

/// Dense window of the full two-point kernel (corrections subtracted when the
/// applied multiset is empty); used by the region/exchange tests.
std::map<std::pair<long, long>, LaurentPoly> two_point_kernel_grid(RCalc& rc, int b, int c, long x_lo,
                                                                   long x_hi, long y_lo, long y_hi);

/// Extracts one invariant with k >= 2 insertions through the R-series route.
/// The two highest-level insertions feed the two-point trace; the rest enter
/// the commutator recursion.
InvariantRecord extract_invariant(const OrbifoldStructure& st,
                                  std::vector<std::pair<int, long>> insertions, long g);

/// One-point invariants from the Euler-Maclaurin operator form of the
/// generating function, for all i <= i_max, g <= g_max.
std::vector<InvariantRecord> one_point_series(const OrbifoldStructure& st, int a, long i_max, long g_max);

/// One-point invariants from the closed Bernoulli-sum form; the degree-zero
/// sector is carried by the explicit Bernoulli series and the k1 = 0 term of
/// the sum (its divergent avatar) is excluded.
std::vector<InvariantRecord> one_point_closed(const OrbifoldStructure& st, int a, long i_max, long g_max);

/// <tau_{2g-2}(phi_{m1})>_{g,0} = (1 - 2^{2g-1}) B_{2g} / (2^{2g-1} (2g)!).
Rational degree_zero_one_point(long g);

/// Direct evaluation of the conjectural 2-point formula (independent of the
/// commutator recursion): value of <tau_{i1}(phi_{a1}) tau_{i2}(phi_{a2})>_g.
Rational k2_direct_cell(const OrbifoldStructure& st, int a1, int a2, long i1, long i2, long g);

/// Direct evaluation of the conjectural 3-point formula (two cyclic classes,
/// nested expansion |lambda1| >> |lambda2| >> |lambda3|).
Rational k3_direct_cell(const OrbifoldStructure& st, int a1, int a2, int a3, long i1, long i2, long i3,
                        long g);

/// Order the R-series route needs to reach a given cell.
long two_point_order_budget(const std::vector<std::pair<int, long>>& fixed_labels,
                            const std::vector<long>& counts, long j1, long j2);

}  // namespace orbigw
