#include "orbigw/bernoulli.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace orbigw {

namespace {

std::mutex cache_mutex;

// Taylor coefficients of t/(e^t - 1) up to order n inclusive, by series
// inversion of (e^t - 1)/t = sum t^k/(k+1)!.
const std::vector<Rational>& base_series(long n) {
    static std::vector<Rational> b = {Rational(1)};
    while (static_cast<long>(b.size()) <= n) {
        long m = static_cast<long>(b.size());
        // sum_{k=0..m} b_k / (m-k+1)! = delta_{m,0}
        Rational acc(0);
        for (long k = 0; k < m; ++k) acc += b[static_cast<size_t>(k)] / factorial(m - k + 1);
        b.push_back(-acc);
    }
    return b;
}

// Taylor coefficients of (t/(e^t - 1))^ell up to order n, cached per ell.
// With b = 1 + u, u = O(t), the power y = b^ell satisfies b y' = ell b' y,
// giving y_n = (1/n) sum_{k=1..n} ((ell+1) k - n) b_k y_{n-k}.
const std::vector<Rational>& power_series(const Rational& ell, long n) {
    static std::map<Rational, std::vector<Rational>> cache;
    auto& y = cache[ell];
    if (y.empty()) y.push_back(Rational(1));
    if (static_cast<long>(y.size()) > n) return y;
    const auto& b = base_series(n);
    while (static_cast<long>(y.size()) <= n) {
        long m = static_cast<long>(y.size());
        Rational acc(0);
        for (long k = 1; k <= m; ++k)
            acc += ((ell + Rational(1)) * Rational(k) - Rational(m)) * b[static_cast<size_t>(k)] *
                   y[static_cast<size_t>(m - k)];
        y.push_back(acc / Rational(m));
    }
    return y;
}

}  // namespace

Rational gen_bernoulli(long m, const Rational& ell, const Rational& x) {
    if (m < 0) throw std::domain_error("gen_bernoulli: negative order");
    std::lock_guard<std::mutex> lock(cache_mutex);

    static std::map<std::tuple<long, Rational, Rational>, Rational> memo;
    auto key = std::make_tuple(m, ell, x);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const auto& y = power_series(ell, m);
    // B_m(ell, x)/m! = sum_j y_{m-j} x^j / j!
    Rational acc(0);
    Rational xpow(1);
    for (long j = 0; j <= m; ++j) {
        acc += y[static_cast<size_t>(m - j)] * xpow / factorial(j);
        xpow *= x;
    }
    Rational value = acc * factorial(m);
    memo.emplace(key, value);
    return value;
}

Rational bernoulli_number(long m) {
    if (m >= 3 && (m & 1L)) return Rational(0);
    return gen_bernoulli(m, Rational(1), Rational(0));
}

std::vector<Rational> euler_maclaurin_coeffs(long K) {
    std::vector<Rational> c;
    c.reserve(static_cast<size_t>(K) + 1);
    for (long k = 0; k <= K; ++k) c.push_back(gen_bernoulli(k, Rational(1), Rational(1)) / factorial(k));
    return c;
}

}  // namespace orbigw
