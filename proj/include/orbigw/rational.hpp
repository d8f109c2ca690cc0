#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbigw {

/// Arbitrary-precision rational, always reduced, denominator > 0.
/// Thin value wrapper around GMP's mpq_class; every constructor canonicalizes,
/// so gcd(|num|, den) == 1 and den > 0 hold for every reachable value.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(static_cast<signed long>(n)) {}
    Rational(int n) : q_(n) {}
    Rational(long num, long den) : q_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : q_(n) {}
    explicit Rational(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }

    /// Parses "p", "-p", or "p/q" in base 10.
    static Rational from_string(const std::string& s) {
        mpq_class v;
        if (v.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
        v.canonicalize();
        return Rational(std::move(v));
    }

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// Value as long; requires an integer that fits.
    long to_long() const {
        if (!is_integer() || !q_.get_num().fits_slong_p())
            throw std::domain_error("Rational: not a machine integer: " + to_string());
        return q_.get_num().get_si();
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / q_));
    }

    /// Integer power, negative exponents allowed for nonzero values.
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        mpq_class base = e < 0 ? mpq_class(1 / q_) : q_;
        if (e < 0) {
            if (is_zero()) throw std::domain_error("Rational: 0^negative");
            e = -e;
        }
        mpq_class r(1);
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return Rational(std::move(r));
    }

    /// "p" for integers, "p/q" otherwise.
    std::string to_string() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

private:
    mpq_class q_;
};

inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }
inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

/// Generalized binomial coefficient with rational top: alpha(alpha-1)...(alpha-n+1)/n!.
Rational binom_rational(const Rational& alpha, long n);

/// Plain integer binomial; zero outside 0 <= k <= n.
Rational binom_int(long n, long k);

/// n! as a Rational, n >= 0.
Rational factorial(long n);

}  // namespace orbigw
