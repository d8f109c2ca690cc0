#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbigw/errors.hpp"
#include "orbigw/laurent_poly.hpp"
#include "orbigw/rational.hpp"

namespace orbigw {

/// Truncated Puiseux series in z:
///
///     z^offset * (f_0 + f_1 z^-1 + ... + f_{N-1} z^-(N-1))
///
/// with a single rational offset and LaurentPoly coefficients. There are no
/// terms above z^offset. Coefficients below the stored window are exact zeros
/// when `exact()` holds (polynomial-like values) and otherwise unknown:
/// requesting one raises TruncationError, never a silent zero. Combining two
/// series requires their offsets to differ by an integer.
class PuiseuxSeries {
public:
    explicit PuiseuxSeries(Var var = Var::s) : var_(var), offset_(0), exact_(true) {}

    PuiseuxSeries(Rational offset, std::vector<LaurentPoly> tail, bool exact, Var var)
        : var_(var), offset_(std::move(offset)), tail_(std::move(tail)), exact_(exact) {
        normalize_top();
    }

    static PuiseuxSeries zero(Var var = Var::s) { return PuiseuxSeries(var); }

    /// Constant c * z^e, exact.
    static PuiseuxSeries monomial(const Rational& e, const LaurentPoly& c) {
        return PuiseuxSeries(e, {c}, true, c.var());
    }

    Var var() const { return var_; }
    const Rational& offset() const { return offset_; }
    long order() const { return static_cast<long>(tail_.size()); }
    bool exact() const { return exact_; }
    bool is_zero() const {
        for (const auto& c : tail_)
            if (!c.is_zero()) return false;
        return exact_;
    }
    /// True when every stored coefficient vanishes (the series may still be
    /// unknown below the window).
    bool stored_zero() const {
        for (const auto& c : tail_)
            if (!c.is_zero()) return false;
        return true;
    }

    const LaurentPoly& tail_at(long n) const { return tail_[static_cast<size_t>(n)]; }
    LaurentPoly& tail_at(long n) { return tail_[static_cast<size_t>(n)]; }

    /// Lowest exponent with a known coefficient; nullopt means known everywhere.
    std::optional<Rational> known_down_to() const {
        if (exact_) return std::nullopt;
        return offset_ - Rational(order() - 1);
    }

    /// Exact coefficient of z^e. e must be on the offset grid and not below the
    /// known window.
    LaurentPoly coeff(const Rational& e) const {
        Rational diff = offset_ - e;
        if (!diff.is_integer())
            throw OffsetGridError("PuiseuxSeries::coeff: exponent " + e.to_string() +
                                  " off the grid of offset " + offset_.to_string());
        long n = diff.to_long();
        if (n < 0) return LaurentPoly(var_);  // above the leading term: exact zero
        if (n >= order()) {
            if (exact_) return LaurentPoly(var_);
            throw TruncationError("PuiseuxSeries::coeff: exponent " + e.to_string() +
                                  " beyond truncation (offset " + offset_.to_string() +
                                  ", order " + std::to_string(order()) + ")");
        }
        return tail_[static_cast<size_t>(n)];
    }

    PuiseuxSeries operator-() const {
        PuiseuxSeries r(*this);
        for (auto& c : r.tail_) c = -c;
        return r;
    }

    friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, b, 1); }
    friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, b, -1); }
    friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) { return mul(a, b); }

    static PuiseuxSeries add(const PuiseuxSeries& a, const PuiseuxSeries& b, int bsign);

    /// Cauchy product on the combined grid; the result's window is the largest
    /// one on which every contributing coefficient is known.
    static PuiseuxSeries mul(const PuiseuxSeries& a, const PuiseuxSeries& b,
                             long eps_cap = std::numeric_limits<long>::max());

    PuiseuxSeries& operator*=(const LaurentPoly& c) {
        for (auto& t : tail_) t = LaurentPoly::mul(t, c);
        return *this;
    }
    PuiseuxSeries& operator*=(const Rational& c) {
        for (auto& t : tail_) t *= c;
        return *this;
    }
    friend PuiseuxSeries operator*(PuiseuxSeries a, const LaurentPoly& c) { a *= c; return a; }
    friend PuiseuxSeries operator*(PuiseuxSeries a, const Rational& c) { a *= c; return a; }

    /// Multiplies by z^e (offset shift only).
    PuiseuxSeries mul_pow_z(const Rational& e) const {
        PuiseuxSeries r(*this);
        r.offset_ += e;
        return r;
    }

    /// Expansion of f(z + c) on the same grid for integer c. The result keeps
    /// this series' window; exactness is lost unless c == 0.
    PuiseuxSeries shift_z(long c) const;

    /// Drops coefficients below depth new_order (no-op if already shorter).
    PuiseuxSeries truncated(long new_order) const {
        PuiseuxSeries r(*this);
        if (new_order < r.order()) {
            r.tail_.resize(static_cast<size_t>(new_order < 0 ? 0 : new_order));
            r.exact_ = false;
        }
        return r;
    }

    /// The part with exponents >= 0, as an exact series. Requires the whole
    /// nonnegative range to be known.
    PuiseuxSeries polynomial_part() const;

    /// Equality of every coefficient on the common known window; throws if the
    /// windows do not overlap in at least `min_layers` grid points.
    static bool equal_on_common_window(const PuiseuxSeries& a, const PuiseuxSeries& b, long min_layers = 1);

    std::string to_string(const std::string& zname = "z") const;

private:
    // Zero leading layers are fine; an empty exact tail is canonical zero.
    void normalize_top() {}

    Var var_;
    Rational offset_;
    std::vector<LaurentPoly> tail_;
    bool exact_;
};

}  // namespace orbigw
