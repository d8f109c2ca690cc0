#include "orbigw/mat_series.hpp"

#include <algorithm>

namespace orbigw {

RatMat RatMat::inverse() const {
    int n = n_;
    RatMat aug(*this);
    RatMat inv = RatMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!aug.at(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) throw std::domain_error("RatMat::inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(aug.at(piv, j), aug.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Rational d = aug.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            aug.at(col, j) *= d;
            inv.at(col, j) *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || aug.at(r, col).is_zero()) continue;
            Rational f = aug.at(r, col);
            for (int j = 0; j < n; ++j) {
                aug.at(r, j) -= f * aug.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

PolyMat PolyMat::mul(const PolyMat& a, const PolyMat& b, long eps_cap) {
    PolyMat r(a.n_, Var::s);
    r.a_.assign(a.a_.size(), LaurentPoly(a.n_ && !a.a_[0].is_zero() ? a.a_[0].var() : Var::s));
    for (int i = 0; i < a.n_; ++i)
        for (int k = 0; k < a.n_; ++k) {
            const LaurentPoly& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < a.n_; ++j) {
                const LaurentPoly& y = b.at(k, j);
                if (y.is_zero()) continue;
                r.at(i, j) += LaurentPoly::mul(x, y, eps_cap);
            }
        }
    return r;
}

MatSeries MatSeries::add(const MatSeries& a, const MatSeries& b, int bsign) {
    if (a.order() == 0 && a.exact_) return bsign < 0 ? -b : b;
    if (b.order() == 0 && b.exact_) return a;
    if (a.dim_ != b.dim_) throw DimensionError("MatSeries::add: dimension mismatch");
    Rational gap = a.offset_ - b.offset_;
    if (!gap.is_integer()) throw OffsetGridError("MatSeries::add: incompatible offsets");

    Rational top = std::max(a.offset_, b.offset_);
    bool exact = a.exact_ && b.exact_;
    Rational low(0);
    if (exact) {
        low = std::min(a.offset_ - Rational(a.order() - 1), b.offset_ - Rational(b.order() - 1));
    } else {
        bool first = true;
        for (const MatSeries* f : {&a, &b}) {
            if (f->exact_) continue;
            Rational l = f->offset_ - Rational(f->order() - 1);
            if (first || l > low) low = l;
            first = false;
        }
    }
    long count = (top - low).to_long() + 1;
    if (count < 0) count = 0;

    MatSeries r(a.dim_, top, count, a.var_, exact);
    for (long n = 0; n < count; ++n) {
        Rational e = top - Rational(n);
        PolyMat c = a.coeff(e);
        PolyMat bc = b.coeff(e);
        if (bsign < 0) bc = -bc;
        c += bc;
        r.layer(n) = std::move(c);
    }
    return r;
}

MatSeries MatSeries::mul(const MatSeries& a, const MatSeries& b, long eps_cap) {
    if (a.dim_ != b.dim_) throw DimensionError("MatSeries::mul: dimension mismatch");
    if ((a.exact_ && a.order() == 0) || (b.exact_ && b.order() == 0)) return MatSeries::zero(a.dim_, a.var_);

    Rational top = a.offset_ + b.offset_;
    bool exact = a.exact_ && b.exact_;
    long count;
    if (exact) {
        count = a.order() + b.order() - 1;
    } else {
        Rational low = top;
        bool have = false;
        if (!a.exact_) {
            low = (a.offset_ - Rational(a.order() - 1)) + b.offset_;
            have = true;
        }
        if (!b.exact_) {
            Rational l = (b.offset_ - Rational(b.order() - 1)) + a.offset_;
            if (!have || l > low) low = l;
        }
        count = (top - low).to_long() + 1;
        if (count < 0) count = 0;
    }

    MatSeries r(a.dim_, top, count, a.var_, exact);
    for (long i = 0; i < a.order(); ++i) {
        if (a.layer(i).is_zero()) continue;
        long jmax = std::min(b.order(), count - i);
        for (long j = 0; j < jmax; ++j) {
            if (b.layer(j).is_zero()) continue;
            r.layer(i + j) += PolyMat::mul(a.layer(i), b.layer(j), eps_cap);
        }
    }
    return r;
}

MatSeries MatSeries::conjugate(const RatMat& left, const RatMat& right) const {
    PolyMat lp = PolyMat::from_rat(left, var_);
    PolyMat rp = PolyMat::from_rat(right, var_);
    MatSeries r(*this);
    for (long n = 0; n < order(); ++n)
        r.layer(n) = PolyMat::mul(PolyMat::mul(lp, layer(n), std::numeric_limits<long>::max()), rp,
                                  std::numeric_limits<long>::max());
    return r;
}

MatSeries MatSeries::shift_z(long c) const {
    if (c == 0) return *this;
    MatSeries r(dim_, offset_, order(), var_, false);
    for (long n = 0; n < order(); ++n) {
        PolyMat acc(dim_, var_);
        Rational cp(1);
        for (long p = 0; p <= n; ++p) {
            const PolyMat& src = layer(n - p);
            if (!src.is_zero()) {
                Rational w = binom_rational(offset_ - Rational(n - p), p) * cp;
                if (!w.is_zero())
                    acc += src.map([&](const LaurentPoly& q) { return q * w; });
            }
            cp *= Rational(c);
        }
        r.layer(n) = std::move(acc);
    }
    return r;
}

MatSeries MatSeries::polynomial_part() const {
    if (offset_ < Rational(0)) return MatSeries::zero(dim_, var_);
    Rational diff = offset_;
    if (!diff.is_integer())
        throw OffsetGridError("MatSeries::polynomial_part: fractional offset has no polynomial part");
    long n_max = diff.to_long();
    if (!exact_ && n_max >= order())
        throw TruncationError("MatSeries::polynomial_part: nonnegative exponents extend below the known window");
    long count = std::min(n_max + 1, order());
    MatSeries r(dim_, offset_, count, var_, true);
    for (long n = 0; n < count; ++n) r.layer(n) = layer(n);
    return r;
}

PuiseuxSeries MatSeries::det() const {
    if (dim_ > 6) throw std::domain_error("MatSeries::det: dimension > 6 not supported");
    std::vector<PuiseuxSeries> entries;
    entries.reserve(static_cast<size_t>(dim_) * dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) entries.push_back(entry(i, j));

    std::vector<int> cols(static_cast<size_t>(dim_));
    for (int j = 0; j < dim_; ++j) cols[static_cast<size_t>(j)] = j;

    // Laplace expansion along the first remaining row.
    std::function<PuiseuxSeries(int, std::vector<int>&)> minor_det = [&](int row,
                                                                         std::vector<int>& cs) -> PuiseuxSeries {
        if (cs.size() == 1)
            return entries[static_cast<size_t>(row) * dim_ + cs[0]];
        PuiseuxSeries acc = PuiseuxSeries::zero(var_);
        bool first = true;
        for (size_t k = 0; k < cs.size(); ++k) {
            int c = cs[k];
            const PuiseuxSeries& e = entries[static_cast<size_t>(row) * dim_ + c];
            std::vector<int> rest;
            rest.reserve(cs.size() - 1);
            for (size_t m = 0; m < cs.size(); ++m)
                if (m != k) rest.push_back(cs[m]);
            PuiseuxSeries term = PuiseuxSeries::mul(e, minor_det(row + 1, rest));
            if (k % 2 == 1) term = -term;
            acc = first ? term : acc + term;
            first = false;
        }
        return acc;
    };
    return minor_det(0, cols);
}

bool MatSeries::equal_on_common_window(const MatSeries& a, const MatSeries& b, long min_layers) {
    if (a.dim_ != b.dim_) throw DimensionError("MatSeries::equal_on_common_window: dimension mismatch");
    if (a.order() == 0 && a.exact_ && b.order() == 0 && b.exact_) return true;
    Rational gap = a.offset_ - b.offset_;
    if (!gap.is_integer()) throw OffsetGridError("MatSeries::equal_on_common_window: incompatible offsets");

    Rational hi = std::max(a.offset_, b.offset_);
    Rational lo = hi;
    bool bounded = false;
    for (const MatSeries* f : {&a, &b}) {
        if (f->exact_) continue;
        Rational l = f->offset_ - Rational(f->order() - 1);
        if (!bounded || l > lo) lo = l;
        bounded = true;
    }
    if (!bounded) lo = std::min(a.offset_ - Rational(a.order() - 1), b.offset_ - Rational(b.order() - 1));
    long count = (hi - lo).to_long() + 1;
    if (count < min_layers)
        throw TruncationError("MatSeries::equal_on_common_window: common window shorter than requested");
    for (long n = 0; n < count; ++n) {
        Rational e = hi - Rational(n);
        if (!(a.coeff(e) == b.coeff(e))) return false;
    }
    return true;
}

}  // namespace orbigw
