#include "orbigw/rational.hpp"

namespace orbigw {

Rational binom_rational(const Rational& alpha, long n) {
    if (n < 0) throw std::domain_error("binom_rational: negative lower index");
    Rational num(1);
    for (long k = 0; k < n; ++k) num *= alpha - Rational(k);
    return num / factorial(n);
}

Rational binom_int(long n, long k) {
    if (k < 0 || k > n) return Rational(0);
    if (k > n - k) k = n - k;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

Rational factorial(long n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

}  // namespace orbigw
