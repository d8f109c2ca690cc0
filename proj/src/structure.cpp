#include "orbigw/structure.hpp"

namespace orbigw {

OrbifoldStructure build_structure(int m1, int m2) {
    if (m1 < 1 || m2 < 1) throw std::domain_error("build_structure: weights must be positive");
    OrbifoldStructure st;
    st.m1 = m1;
    st.m2 = m2;
    st.l = m1 + m2;
    st.rho = Rational(static_cast<long>(m1) * m2, st.l);

    st.q.resize(static_cast<size_t>(st.l));
    for (int a = 0; a < st.l; ++a)
        st.q[static_cast<size_t>(a)] = a <= m1 ? Rational(a, m1) : Rational(st.l - a, m2);

    st.K.resize(static_cast<size_t>(st.l));
    for (int a = 1; a < st.l; ++a) {
        RatMat k(st.l);
        if (a <= m1) {
            for (int j = 1; j <= a; ++j) k.at(j - 1, m1 - a + j - 1) = Rational(1);
        } else {
            for (int j = 1; j <= st.l - a; ++j) k.at(a + j - 1, m1 + j - 1) = Rational(-1);
        }
        st.K[static_cast<size_t>(a)] = std::move(k);
    }

    st.eta1 = RatMat(st.l);
    for (int i = 1; i <= st.l; ++i) st.eta1.at(i - 1, st.l - i) = Rational(1);
    st.eta1_inv = st.eta1.inverse();

    // second block maps column i - m1 (not i - m2): the matrix must be a signed
    // permutation for every weight pair, and conjugation by it must carry
    // W(z,s;m1,m2)^{-T} to W(z,s;m2,m1)
    st.eta2 = RatMat(st.l);
    for (int i = 1; i <= m1; ++i) st.eta2.at(i - 1, m2 + i - 1) = Rational(1);
    for (int i = m1 + 1; i <= st.l; ++i) st.eta2.at(i - 1, i - m1 - 1) = Rational(-1);
    st.eta2_inv = st.eta2.inverse();

    st.W = MatSeries(st.l, Rational(1), 2, Var::s, true);
    st.W.layer(0).at(0, m1 - 1) = LaurentPoly(Var::s, Rational(1));
    PolyMat& w0 = st.W.layer(1);
    w0.at(0, m1 - 1) = LaurentPoly(Var::s, Rational(-1, 2));
    w0.at(0, st.l - 1) += LaurentPoly(Var::s, Rational(-1), 1);
    for (int i = 2; i <= st.l; ++i) w0.at(i - 1, i - 2) += LaurentPoly(Var::s, Rational(1), 1);

    return st;
}

}  // namespace orbigw
