#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbigw/rational.hpp"

namespace orbigw {

/// Tag for the auxiliary formal variable of a LaurentPoly.
enum class Var : unsigned char { s, eps };

inline const char* var_name(Var v) { return v == Var::s ? "s" : "eps"; }

/// Finite Laurent polynomial in one formal variable with Rational coefficients.
/// Stored densely from the lowest exponent; trimmed so the first and last stored
/// coefficients are nonzero (the zero polynomial stores nothing). Exponents may
/// be negative. Binary operations require matching variable tags; the zero
/// polynomial is tag-neutral.
class LaurentPoly {
public:
    explicit LaurentPoly(Var var = Var::s) : var_(var), lo_(0) {}
    LaurentPoly(Var var, const Rational& c0) : var_(var), lo_(0) {
        if (!c0.is_zero()) c_.push_back(c0);
    }
    /// Monomial c * x^e.
    LaurentPoly(Var var, const Rational& c, long e) : var_(var), lo_(e) {
        if (!c.is_zero()) c_.push_back(c);
    }

    static LaurentPoly zero(Var var = Var::s) { return LaurentPoly(var); }
    static LaurentPoly one(Var var = Var::s) { return LaurentPoly(var, Rational(1)); }

    Var var() const { return var_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (lo_ == 0 && c_.size() == 1); }

    long min_exp() const { require_nonzero(); return lo_; }
    long max_exp() const { require_nonzero(); return lo_ + static_cast<long>(c_.size()) - 1; }

    Rational coeff(long e) const {
        if (c_.empty() || e < lo_ || e > max_exp()) return Rational(0);
        return c_[static_cast<size_t>(e - lo_)];
    }

    void add_term(long e, const Rational& c) {
        if (c.is_zero()) return;
        if (c_.empty()) {
            lo_ = e;
            c_.push_back(c);
            return;
        }
        long hi = lo_ + static_cast<long>(c_.size()) - 1;
        if (e < lo_) {
            c_.insert(c_.begin(), static_cast<size_t>(lo_ - e), Rational(0));
            lo_ = e;
        } else if (e > hi) {
            c_.resize(c_.size() + static_cast<size_t>(e - hi), Rational(0));
        }
        c_[static_cast<size_t>(e - lo_)] += c;
        trim();
    }

    LaurentPoly operator-() const {
        LaurentPoly r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check_var(o);
        if (c_.empty() && !o.c_.empty()) var_ = o.var_;
        for (size_t k = 0; k < o.c_.size(); ++k)
            if (!o.c_[k].is_zero()) add_term(o.lo_ + static_cast<long>(k), o.c_[k]);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { a += b; return a; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { a -= b; return a; }

    /// Product, optionally dropping exponents above max_exp_cap (exact ring
    /// quotient by x^(cap+1); safe whenever higher coefficients are never read).
    static LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b,
                           long max_exp_cap = std::numeric_limits<long>::max()) {
        a.check_var(b);
        LaurentPoly r(a.c_.empty() ? b.var_ : a.var_);
        if (a.c_.empty() || b.c_.empty()) return r;
        r.lo_ = a.lo_ + b.lo_;
        long hi = a.max_exp() + b.max_exp();
        if (hi > max_exp_cap) hi = max_exp_cap;
        if (hi < r.lo_) return LaurentPoly(r.var_);
        r.c_.assign(static_cast<size_t>(hi - r.lo_ + 1), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            long ea = a.lo_ + static_cast<long>(i);
            long room = hi - ea - b.lo_ + 1;
            if (room <= 0) continue;
            size_t jmax = std::min(b.c_.size(), static_cast<size_t>(room));
            for (size_t j = 0; j < jmax; ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[static_cast<size_t>(ea + b.lo_ + static_cast<long>(j) - r.lo_)] += a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return mul(a, b); }

    LaurentPoly& operator*=(const Rational& c) {
        if (c.is_zero()) { c_.clear(); lo_ = 0; return *this; }
        for (auto& x : c_) x *= c;
        return *this;
    }
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { a *= c; return a; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { a *= c; return a; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.c_.empty() && b.c_.empty()) return true;
        return a.var_ == b.var_ && a.lo_ == b.lo_ && a.c_ == b.c_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Evaluation at a rational point.
    Rational eval(const Rational& x) const {
        Rational r(0);
        for (size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) r += c_[k] * x.pow(lo_ + static_cast<long>(k));
        return r;
    }

    /// x -> -x: negates odd-exponent coefficients.
    LaurentPoly negate_var() const {
        LaurentPoly r(*this);
        for (size_t k = 0; k < r.c_.size(); ++k)
            if ((r.lo_ + static_cast<long>(k)) & 1L) r.c_[k] = -r.c_[k];
        return r;
    }

    /// Multiplies by x^e.
    LaurentPoly shifted(long e) const {
        LaurentPoly r(*this);
        r.lo_ += e;
        return r;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            long e = lo_ + static_cast<long>(k);
            if (!out.empty()) out += " + ";
            out += c_[k].to_string();
            if (e != 0) {
                out += "*";
                out += var_name(var_);
                out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    void require_nonzero() const {
        if (c_.empty()) throw std::domain_error("LaurentPoly: exponent range of zero polynomial");
    }
    void check_var(const LaurentPoly& o) const {
        if (!c_.empty() && !o.c_.empty() && var_ != o.var_)
            throw std::domain_error("LaurentPoly: mixed variables");
    }
    void trim() {
        size_t b = 0;
        while (b < c_.size() && c_[b].is_zero()) ++b;
        size_t e = c_.size();
        while (e > b && c_[e - 1].is_zero()) --e;
        if (b == e) { c_.clear(); lo_ = 0; return; }
        if (b > 0) c_.erase(c_.begin(), c_.begin() + static_cast<long>(b));
        c_.resize(e - b);
        lo_ += static_cast<long>(b);
    }

    Var var_;
    long lo_;
    std::vector<Rational> c_;
};

}  // namespace orbigw
