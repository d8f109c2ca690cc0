#include "orbigw/puiseux.hpp"

#include <algorithm>

namespace orbigw {

namespace {

long floor_long(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("floor_long: out of range");
    return q.get_si();
}

long integer_gap(const Rational& a, const Rational& b, const char* who) {
    Rational diff = a - b;
    if (!diff.is_integer())
        throw OffsetGridError(std::string(who) + ": offsets " + a.to_string() + " and " + b.to_string() +
                              " do not differ by an integer");
    return diff.to_long();
}

}  // namespace

PuiseuxSeries PuiseuxSeries::add(const PuiseuxSeries& a, const PuiseuxSeries& b, int bsign) {
    if (a.order() == 0 && a.exact_) return bsign < 0 ? -b : b;
    if (b.order() == 0 && b.exact_) return a;
    integer_gap(a.offset_, b.offset_, "PuiseuxSeries::add");

    Rational top = std::max(a.offset_, b.offset_);
    bool exact = a.exact_ && b.exact_;
    Rational low(0);
    if (exact) {
        low = std::min(a.offset_ - Rational(a.order() - 1), b.offset_ - Rational(b.order() - 1));
    } else {
        bool first = true;
        for (const PuiseuxSeries* f : {&a, &b}) {
            if (f->exact_) continue;
            Rational l = f->offset_ - Rational(f->order() - 1);
            if (first || l > low) low = l;
            first = false;
        }
    }
    long count = (top - low).to_long() + 1;
    if (count < 0) count = 0;

    std::vector<LaurentPoly> tail;
    tail.reserve(static_cast<size_t>(count));
    for (long n = 0; n < count; ++n) {
        Rational e = top - Rational(n);
        LaurentPoly c = a.coeff(e);
        LaurentPoly bc = b.coeff(e);
        if (bsign < 0) bc = -bc;
        c += bc;
        tail.push_back(std::move(c));
    }
    Var var = a.order() || !b.order() ? a.var_ : b.var_;
    return PuiseuxSeries(top, std::move(tail), exact, var);
}

PuiseuxSeries PuiseuxSeries::mul(const PuiseuxSeries& a, const PuiseuxSeries& b, long eps_cap) {
    if ((a.exact_ && a.order() == 0) || (b.exact_ && b.order() == 0))
        return PuiseuxSeries(a.order() ? a.var_ : b.var_);

    Rational top = a.offset_ + b.offset_;
    bool exact = a.exact_ && b.exact_;
    long count;
    if (exact) {
        count = a.order() + b.order() - 1;
    } else {
        Rational low = top + Rational(1);
        bool have = false;
        if (!a.exact_) {
            Rational l = (a.offset_ - Rational(a.order() - 1)) + b.offset_;
            low = l;
            have = true;
        }
        if (!b.exact_) {
            Rational l = (b.offset_ - Rational(b.order() - 1)) + a.offset_;
            if (!have || l > low) low = l;
        }
        count = (top - low).to_long() + 1;
        if (count < 0) count = 0;
    }

    std::vector<LaurentPoly> tail(static_cast<size_t>(count), LaurentPoly(a.var_));
    for (long i = 0; i < a.order(); ++i) {
        if (a.tail_[static_cast<size_t>(i)].is_zero()) continue;
        long jmax = std::min(b.order(), count - i);
        for (long j = 0; j < jmax; ++j) {
            if (b.tail_[static_cast<size_t>(j)].is_zero()) continue;
            tail[static_cast<size_t>(i + j)] +=
                LaurentPoly::mul(a.tail_[static_cast<size_t>(i)], b.tail_[static_cast<size_t>(j)], eps_cap);
        }
    }
    return PuiseuxSeries(top, std::move(tail), exact, a.var_);
}

PuiseuxSeries PuiseuxSeries::shift_z(long c) const {
    if (c == 0) return *this;
    std::vector<LaurentPoly> tail(tail_.size(), LaurentPoly(var_));
    for (long n = 0; n < order(); ++n) {
        LaurentPoly acc(var_);
        Rational cp(1);
        for (long p = 0; p <= n; ++p) {
            const LaurentPoly& src = tail_[static_cast<size_t>(n - p)];
            if (!src.is_zero()) {
                Rational w = binom_rational(offset_ - Rational(n - p), p) * cp;
                if (!w.is_zero()) acc += src * w;
            }
            cp *= Rational(c);
        }
        tail[static_cast<size_t>(n)] = std::move(acc);
    }
    return PuiseuxSeries(offset_, std::move(tail), false, var_);
}

PuiseuxSeries PuiseuxSeries::polynomial_part() const {
    if (offset_ < Rational(0)) return PuiseuxSeries(var_);
    long n_max = floor_long(offset_);
    if (!exact_ && n_max >= order())
        throw TruncationError("PuiseuxSeries::polynomial_part: nonnegative exponents extend below the known window");
    long count = std::min(n_max + 1, order());
    std::vector<LaurentPoly> tail(tail_.begin(), tail_.begin() + count);
    return PuiseuxSeries(offset_, std::move(tail), true, var_);
}

bool PuiseuxSeries::equal_on_common_window(const PuiseuxSeries& a, const PuiseuxSeries& b, long min_layers) {
    if (a.order() == 0 && a.exact_ && b.order() == 0 && b.exact_) return true;
    if ((a.order() || !a.exact_) && (b.order() || !b.exact_))
        integer_gap(a.offset_, b.offset_, "PuiseuxSeries::equal_on_common_window");

    Rational hi = std::max(a.offset_, b.offset_);
    Rational lo = hi;
    bool bounded = false;
    for (const PuiseuxSeries* f : {&a, &b}) {
        if (f->exact_) continue;
        Rational l = f->offset_ - Rational(f->order() - 1);
        if (!bounded || l > lo) lo = l;
        bounded = true;
    }
    if (!bounded) lo = std::min(a.offset_ - Rational(a.order() - 1), b.offset_ - Rational(b.order() - 1));
    long count = (hi - lo).to_long() + 1;
    if (count < min_layers)
        throw TruncationError("equal_on_common_window: common window shorter than requested");
    for (long n = 0; n < count; ++n) {
        Rational e = hi - Rational(n);
        if (a.coeff(e) != b.coeff(e)) return false;
    }
    return true;
}

std::string PuiseuxSeries::to_string(const std::string& zname) const {
    std::string out;
    for (long n = 0; n < order(); ++n) {
        const LaurentPoly& c = tail_[static_cast<size_t>(n)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*" + zname + "^(" + (offset_ - Rational(n)).to_string() + ")";
    }
    if (out.empty()) out = "0";
    if (!exact_) out += " + O(" + zname + "^(" + (offset_ - Rational(order())).to_string() + "))";
    return out;
}

}  // namespace orbigw
