#pragma once

#include <vector>

#include "orbigw/mat_series.hpp"

namespace orbigw {

/// Orbifold data for P^1_{m1,m2}: cohomology degrees q_a, the leading-term
/// matrices K_a, the difference-operator matrix W(z,s), and the two constant
/// matrices eta1, eta2 entering the symmetry identities.
struct OrbifoldStructure {
    int m1 = 0;
    int m2 = 0;
    int l = 0;              // m1 + m2
    Rational rho;           // m1 m2 / (m1 + m2)
    std::vector<Rational> q;  // q[a], a = 0..l-1
    std::vector<RatMat> K;    // K[a], a = 1..l-1 ([0] unused)
    RatMat eta1, eta1_inv;
    RatMat eta2, eta2_inv;
    MatSeries W;  // exact: z*e_{1,m1} + (-1/2 e_{1,m1} - s e_{1,l} + s sum e_{i,i-1})

    const Rational& q_of(int a) const { return q[static_cast<size_t>(a)]; }
    const RatMat& K_of(int a) const { return K[static_cast<size_t>(a)]; }
};

OrbifoldStructure build_structure(int m1, int m2);

}  // namespace orbigw
