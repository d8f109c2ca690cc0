#include <doctest.h>

#include "orbigw/bernoulli.hpp"

using namespace orbigw;

namespace {

struct Rng {
    unsigned long state = 0x9e3779b97f4a7c15UL;
    unsigned long next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long uniform(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<unsigned long>(hi - lo + 1)); }
    Rational rational() { return Rational(uniform(-7, 7), uniform(1, 5)); }
};

}  // namespace

TEST_CASE("generalized Bernoulli base values") {
    Rng rng;
    for (int t = 0; t < 10; ++t) {
        Rational ell = rng.rational(), x = rng.rational();
        CHECK(gen_bernoulli(0, ell, x) == Rational(1));
        CHECK(gen_bernoulli(1, ell, x) == x - ell / Rational(2));
    }
    CHECK(gen_bernoulli(2, Rational(1), Rational(0)) == Rational(1, 6));
}

TEST_CASE("classical Bernoulli numbers") {
    const std::pair<long, Rational> table[] = {
        {0, Rational(1)},        {1, Rational(-1, 2)},    {2, Rational(1, 6)},
        {4, Rational(-1, 30)},   {6, Rational(1, 42)},    {8, Rational(-1, 30)},
        {10, Rational(5, 66)},   {12, Rational(-691, 2730)}, {14, Rational(7, 6)},
        {16, Rational(-3617, 510)}, {18, Rational(43867, 798)}, {20, Rational(-174611, 330)},
    };
    for (const auto& [m, v] : table) CHECK(bernoulli_number(m) == v);
    for (long m = 3; m <= 19; m += 2) CHECK(bernoulli_number(m).is_zero());
    for (long m = 0; m <= 20; ++m) CHECK(bernoulli_number(m) == gen_bernoulli(m, Rational(1), Rational(0)));
}

TEST_CASE("defining gf is multiplicative") {
    Rng rng;
    for (int t = 0; t < 8; ++t) {
        Rational l1 = rng.rational(), l2 = rng.rational();
        Rational x1 = rng.rational(), x2 = rng.rational();
        for (long m = 0; m <= 10; ++m) {
            Rational conv(0);
            for (long j = 0; j <= m; ++j)
                conv += binom_int(m, j) * gen_bernoulli(j, l1, x1) * gen_bernoulli(m - j, l2, x2);
            CHECK(gen_bernoulli(m, l1 + l2, x1 + x2) == conv);
        }
    }
}

TEST_CASE("alternating binomial sum identity") {
    // sum_j (-1)^j C(k,j) B_m(l, x-j) = m!/(m-k)! B_{m-k}(l-k, x-k)
    Rng rng;
    for (int t = 0; t < 6; ++t) {
        Rational ell = rng.rational(), x = rng.rational();
        for (long m = 0; m <= 8; ++m)
            for (long k = 0; k <= m; ++k) {
                Rational lhs(0);
                for (long j = 0; j <= k; ++j) {
                    Rational term = binom_int(k, j) * gen_bernoulli(m, ell, x - Rational(j));
                    if (j & 1L) term = -term;
                    lhs += term;
                }
                Rational rhs = factorial(m) / factorial(m - k) *
                               gen_bernoulli(m - k, ell - Rational(k), x - Rational(k));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("Euler-Maclaurin coefficients") {
    auto c = euler_maclaurin_coeffs(6);
    CHECK(c[0] == Rational(1));
    CHECK(c[1] == Rational(1, 2));

    // independent oracle: g = sum_k a_k eps^k lambda^{-1-k} solving
    // g(lambda) - g(lambda - eps) = eps d/dlambda (1/lambda); then
    // a_k = (-1)^k k! c_k.
    std::vector<Rational> a(7);
    for (long m = 1; m <= 7; ++m) {
        // sum_{k<m} a_k binom(-1-k, m-k) (-1)^{m-k} = delta_{m,1}
        Rational acc(0);
        for (long k = 0; k + 1 < m; ++k) {
            Rational term = a[static_cast<size_t>(k)] * binom_rational(Rational(-1 - k), m - k);
            if ((m - k) & 1L) term = -term;
            acc += term;
        }
        // the k = m-1 term has coefficient binom(-m,1)(-1) = m
        Rational rhs = m == 1 ? Rational(1) : Rational(0);
        a[static_cast<size_t>(m - 1)] = (rhs - acc) / Rational(m);
    }
    for (long k = 0; k <= 6; ++k) {
        Rational expect = a[static_cast<size_t>(k)] / factorial(k);
        if (k & 1L) expect = -expect;
        CHECK(c[static_cast<size_t>(k)] == expect);
    }
}
