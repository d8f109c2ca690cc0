#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orbigw/errors.hpp"
#include "orbigw/puiseux.hpp"

namespace orbigw {

/// Square matrix of Rationals (structure constants, eta matrices, oracles).
class RatMat {
public:
    RatMat() : n_(0) {}
    explicit RatMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, Rational(0)) {}
    static RatMat identity(int n) {
        RatMat m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }
    static RatMat unit(int n, int i, int j) {  // e_{i,j}, 1-based like the math
        RatMat m(n);
        m.at(i - 1, j - 1) = Rational(1);
        return m;
    }

    int dim() const { return n_; }
    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend RatMat operator+(const RatMat& a, const RatMat& b) {
        RatMat r(a.n_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
        return r;
    }
    friend RatMat operator-(const RatMat& a, const RatMat& b) {
        RatMat r(a.n_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
        return r;
    }
    friend RatMat operator*(const RatMat& a, const RatMat& b) {
        RatMat r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < a.n_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend RatMat operator*(const Rational& c, RatMat m) {
        for (auto& x : m.a_) x *= c;
        return m;
    }
    friend bool operator==(const RatMat& a, const RatMat& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

    RatMat transpose() const {
        RatMat r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /// Exact inverse by Gauss-Jordan; throws on singular input.
    RatMat inverse() const;

private:
    int n_;
    std::vector<Rational> a_;
};

/// Square matrix of LaurentPoly entries; one z-coefficient layer of a MatSeries.
class PolyMat {
public:
    PolyMat() : n_(0) {}
    PolyMat(int n, Var var) : n_(n), a_(static_cast<size_t>(n) * n, LaurentPoly(var)) {}
    static PolyMat from_rat(const RatMat& m, Var var) {
        PolyMat r(m.dim(), var);
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < m.dim(); ++j) r.at(i, j) = LaurentPoly(var, m.at(i, j));
        return r;
    }

    int dim() const { return n_; }
    LaurentPoly& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const LaurentPoly& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const PolyMat& a, const PolyMat& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

    PolyMat& operator+=(const PolyMat& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    PolyMat& operator-=(const PolyMat& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    PolyMat operator-() const {
        PolyMat r(*this);
        for (auto& x : r.a_) x = -x;
        return r;
    }
    static PolyMat mul(const PolyMat& a, const PolyMat& b, long eps_cap);
    PolyMat transpose() const {
        PolyMat r(n_, Var::s);
        r.a_ = a_;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = at(j, i);
        return r;
    }
    LaurentPoly trace() const {
        LaurentPoly t = n_ ? a_[0] : LaurentPoly();
        for (int i = 1; i < n_; ++i) t += at(i, i);
        return t;
    }
    PolyMat map(const std::function<LaurentPoly(const LaurentPoly&)>& f) const {
        PolyMat r(*this);
        for (auto& x : r.a_) x = f(x);
        return r;
    }

private:
    int n_;
    std::vector<LaurentPoly> a_;
};

/// l x l matrix of truncated Puiseux series sharing one offset grid:
///
///     z^offset * (C_0 + C_1 z^-1 + ... + C_{N-1} z^-(N-1)),  C_n in Mat(l, Q[var]).
///
/// Same windowing rules as PuiseuxSeries: nothing above offset, exact zeros
/// below the window iff `exact()`.
class MatSeries {
public:
    MatSeries() : dim_(0), offset_(0), exact_(true), var_(Var::s) {}
    MatSeries(int dim, Rational offset, long order, Var var, bool exact = false)
        : dim_(dim), offset_(std::move(offset)), exact_(exact), var_(var),
          coeffs_(static_cast<size_t>(order), PolyMat(dim, var)) {}

    static MatSeries zero(int dim, Var var) { return MatSeries(dim, Rational(0), 0, var, true); }
    /// Constant matrix as an exact series at z^0.
    static MatSeries constant(const RatMat& m, Var var) {
        MatSeries r(m.dim(), Rational(0), 1, var, true);
        r.layer(0) = PolyMat::from_rat(m, var);
        return r;
    }

    int dim() const { return dim_; }
    Var var() const { return var_; }
    const Rational& offset() const { return offset_; }
    long order() const { return static_cast<long>(coeffs_.size()); }
    bool exact() const { return exact_; }
    void set_exact(bool e) { exact_ = e; }

    PolyMat& layer(long n) { return coeffs_[static_cast<size_t>(n)]; }
    const PolyMat& layer(long n) const { return coeffs_[static_cast<size_t>(n)]; }

    /// Layer index of exponent e (throws off-grid); may be negative (above top).
    long depth_of(const Rational& e) const {
        Rational diff = offset_ - e;
        if (!diff.is_integer())
            throw OffsetGridError("MatSeries: exponent " + e.to_string() + " off the grid of offset " +
                                  offset_.to_string());
        return diff.to_long();
    }

    /// Coefficient matrix of z^e under the window rules.
    PolyMat coeff(const Rational& e) const {
        long n = depth_of(e);
        if (n < 0) return PolyMat(dim_, var_);
        if (n >= order()) {
            if (exact_) return PolyMat(dim_, var_);
            throw TruncationError("MatSeries::coeff: exponent " + e.to_string() + " beyond truncation");
        }
        return coeffs_[static_cast<size_t>(n)];
    }

    /// Entry as a scalar series on the shared grid.
    PuiseuxSeries entry(int i, int j) const {
        std::vector<LaurentPoly> tail;
        tail.reserve(coeffs_.size());
        for (const auto& c : coeffs_) tail.push_back(c.at(i, j));
        return PuiseuxSeries(offset_, std::move(tail), exact_, var_);
    }

    bool stored_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    MatSeries operator-() const {
        MatSeries r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend MatSeries operator+(const MatSeries& a, const MatSeries& b) { return add(a, b, 1); }
    friend MatSeries operator-(const MatSeries& a, const MatSeries& b) { return add(a, b, -1); }
    static MatSeries add(const MatSeries& a, const MatSeries& b, int bsign);

    /// Matrix product with truncation tracking; eps_cap bounds coefficient
    /// exponents in the auxiliary variable (used only by the epsilon pipeline).
    static MatSeries mul(const MatSeries& a, const MatSeries& b,
                         long eps_cap = std::numeric_limits<long>::max());
    friend MatSeries operator*(const MatSeries& a, const MatSeries& b) { return mul(a, b); }

    MatSeries& operator*=(const Rational& c) {
        for (auto& m : coeffs_)
            m = m.map([&](const LaurentPoly& p) { return p * c; });
        return *this;
    }
    MatSeries& operator*=(const LaurentPoly& c) {
        for (auto& m : coeffs_)
            m = m.map([&](const LaurentPoly& p) { return LaurentPoly::mul(p, c); });
        return *this;
    }

    MatSeries mul_pow_z(const Rational& e) const {
        MatSeries r(*this);
        r.offset_ += e;
        return r;
    }

    /// Left/right conjugation by constant matrices: L * this * R.
    MatSeries conjugate(const RatMat& left, const RatMat& right) const;

    MatSeries transpose() const {
        MatSeries r(*this);
        for (auto& c : r.coeffs_) c = c.transpose();
        return r;
    }

    /// Applies f to every LaurentPoly coefficient (e.g. s -> -s).
    MatSeries map_coeffs(const std::function<LaurentPoly(const LaurentPoly&)>& f) const {
        MatSeries r(*this);
        for (auto& c : r.coeffs_) c = c.map(f);
        return r;
    }

    /// f(z + c) for integer c, same grid and window.
    MatSeries shift_z(long c) const;

    MatSeries truncated(long new_order) const {
        MatSeries r(*this);
        if (new_order < r.order()) {
            r.coeffs_.resize(static_cast<size_t>(new_order < 0 ? 0 : new_order));
            r.exact_ = false;
        }
        return r;
    }

    /// Polynomial part in z (exponents >= 0); exact. Throws if part of the
    /// nonnegative range is unknown.
    MatSeries polynomial_part() const;

    PuiseuxSeries trace() const {
        std::vector<LaurentPoly> tail;
        tail.reserve(coeffs_.size());
        for (const auto& c : coeffs_) tail.push_back(c.trace());
        return PuiseuxSeries(offset_, std::move(tail), exact_, var_);
    }

    /// Determinant over the series ring by cofactor expansion (dim <= 6).
    PuiseuxSeries det() const;

    static bool equal_on_common_window(const MatSeries& a, const MatSeries& b, long min_layers = 1);

private:
    int dim_;
    Rational offset_;
    bool exact_;
    Var var_;
    std::vector<PolyMat> coeffs_;
};

}  // namespace orbigw
