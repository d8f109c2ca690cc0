#include "orbigw/correlators.hpp"

#include <algorithm>

#include "orbigw/bernoulli.hpp"

namespace orbigw {

namespace {

// Trace of A*B restricted to one eps exponent.
Rational trace_pair_eps(const PolyMat& A, const PolyMat& B, long eps_pow) {
    Rational acc(0);
    int n = A.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const LaurentPoly& x = A.at(i, j);
            const LaurentPoly& y = B.at(j, i);
            if (x.is_zero() || y.is_zero()) continue;
            long lo = std::max(x.min_exp(), eps_pow - y.max_exp());
            long hi = std::min(x.max_exp(), eps_pow - y.min_exp());
            for (long e = lo; e <= hi; ++e) {
                Rational cx = x.coeff(e);
                if (cx.is_zero()) continue;
                acc += cx * y.coeff(eps_pow - e);
            }
        }
    return acc;
}

// Enumerates sub-multisets I <= counts with weight prod binom(counts_j, I_j),
// invoking f(I, weight).
template <typename F>
void for_each_submultiset(const std::vector<long>& counts, F&& f) {
    std::vector<long> I(counts.size(), 0);
    for (;;) {
        Rational w(1);
        for (size_t j = 0; j < counts.size(); ++j) w *= binom_int(counts[j], I[j]);
        f(I, w);
        size_t pos = 0;
        while (pos < counts.size()) {
            if (I[pos] < counts[pos]) {
                ++I[pos];
                break;
            }
            I[pos] = 0;
            ++pos;
        }
        if (pos == counts.size()) break;
    }
}

std::vector<long> minus_unit(const std::vector<long>& v, size_t t) {
    std::vector<long> r(v);
    --r[t];
    return r;
}

std::vector<long> minus_vec(const std::vector<long>& v, const std::vector<long>& w) {
    std::vector<long> r(v);
    for (size_t j = 0; j < v.size(); ++j) r[j] -= w[j];
    return r;
}

}  // namespace

Rational q_norm(const OrbifoldStructure& st, int a, long i) {
    if (a < 1 || a >= st.l) throw std::domain_error("q_norm: sector out of range");
    Rational q = st.q_of(a);
    Rational rising(1);
    for (long k = 0; k <= i; ++k) rising *= q + Rational(k);
    long weight = a < st.m1 ? st.m1 : (a == st.m1 ? 1 : st.m2);
    return rising * Rational(weight);
}

std::optional<long> degree_from_dimension(const OrbifoldStructure& st, long g,
                                          const std::vector<std::pair<int, long>>& insertions) {
    Rational rhs(0);
    for (const auto& [a, i] : insertions) rhs += Rational(i) + st.q_of(a);
    Rational d = st.rho * (rhs - Rational(static_cast<long>(insertions.size())) - Rational(2 * g) + Rational(2));
    if (!d.is_integer() || d.sign() < 0) return std::nullopt;
    return d.to_long();
}

MatSeries r_base(const OrbifoldStructure& st, int a, long order, long eps_cap) {
    const MatSeries& m = m_matrix_cached(st, a, order);
    MatSeries r(st.l, Rational(1), m.order(), Var::eps);
    for (long n = 0; n < m.order(); ++n)
        for (int i = 0; i < st.l; ++i)
            for (int j = 0; j < st.l; ++j) {
                const LaurentPoly& p = m.layer(n).at(i, j);
                if (p.is_zero()) continue;
                LaurentPoly q(Var::eps);
                for (long e = p.min_exp(); e <= p.max_exp(); ++e) {
                    Rational c = p.coeff(e);
                    if (c.is_zero()) continue;
                    long eps_exp = n - e;  // s^e at depth n becomes eps^{n-e}
                    if (eps_exp < 0)
                        throw std::logic_error("r_base: negative eps exponent (s-degree exceeds depth)");
                    if (eps_exp <= eps_cap) q.add_term(eps_exp, c);
                }
                r.layer(n).at(i, j) = std::move(q);
            }
    return r;
}

RCalc::RCalc(const OrbifoldStructure& st, std::vector<std::pair<int, long>> labels, std::vector<long> counts,
             long order, long eps_cap)
    : st_(&st), labels_(std::move(labels)), counts_(std::move(counts)), order_(order), eps_cap_(eps_cap) {
    if (labels_.size() != counts_.size()) throw std::domain_error("RCalc: labels/counts mismatch");
}

const MatSeries& RCalc::R(int b, const std::vector<long>& applied) {
    auto key = std::make_pair(b, applied);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    size_t t = applied.size();
    for (size_t j = 0; j < applied.size(); ++j)
        if (applied[j] > 0) {
            t = j;
            break;
        }

    MatSeries result;
    if (t == applied.size()) {
        result = r_base(*st_, b, order_, eps_cap_);
    } else {
        auto rest = minus_unit(applied, t);
        const auto [sec_t, lev_t] = labels_[t];
        MatSeries acc = MatSeries::zero(st_->l, Var::eps);
        for_each_submultiset(rest, [&](const std::vector<long>& I, const Rational& w) {
            MatSeries P = R(sec_t, I).mul_pow_z(Rational(lev_t)).polynomial_part();
            const MatSeries& X = R(b, minus_vec(rest, I));
            MatSeries comm = MatSeries::mul(P, X, eps_cap_) - MatSeries::mul(X, P, eps_cap_);
            comm *= w;
            acc = acc + comm;
        });
        result = std::move(acc);
    }
    auto [jt, _] = memo_.emplace(std::move(key), std::move(result));
    return jt->second;
}

const MatSeries& RCalc::R_uniform(int b, long m) {
    if (labels_.size() > 1) throw std::domain_error("RCalc::R_uniform: multiple distinct labels");
    std::vector<long> applied;
    if (!labels_.empty()) applied.push_back(m);
    else if (m != 0)
        throw std::domain_error("RCalc::R_uniform: no labels");
    return R(b, applied);
}

long two_point_order_budget(const std::vector<std::pair<int, long>>& fixed_labels,
                            const std::vector<long>& counts, long j1, long j2) {
    long budget = j1 + j2 + 3 + 2;
    for (size_t t = 0; t < fixed_labels.size(); ++t) budget += counts[t] * (fixed_labels[t].second + 1);
    return budget;
}

namespace {

// Coefficient of lambda^{-j1-1} mu^{-j2-1} eps^{eps_pow} of
// Tr A(lambda) B(mu) / (lambda - mu)^2 in the region |mu| < |lambda|.
Rational pair_cell(const MatSeries& A, const MatSeries& B, long j1, long j2, long eps_pow) {
    Rational acc(0);
    long top_a = A.offset().to_long();  // R-series offsets are integers
    for (long n = 0;; ++n) {
        long x = n + 1 - j1;
        if (x > top_a) break;
        long dx = top_a - x;
        if (dx >= A.order())
            throw TruncationError("two-point cell: lambda depth " + std::to_string(dx) +
                                  " beyond order " + std::to_string(A.order()) +
                                  "; increase the order budget");
        long y = -j2 - 1 - n;
        long dy = B.offset().to_long() - y;
        if (dy < 0) continue;
        if (dy >= B.order())
            throw TruncationError("two-point cell: mu depth " + std::to_string(dy) +
                                  " beyond order " + std::to_string(B.order()) +
                                  "; increase the order budget");
        Rational tr = trace_pair_eps(A.layer(dx), B.layer(dy), eps_pow);
        if (!tr.is_zero()) acc += Rational(n + 1) * tr;
    }
    return acc;
}

}  // namespace

Rational two_point_trace_cell(RCalc& rc, int b, int c, long j1, long j2, long eps_pow,
                              const std::vector<long>* counts) {
    if (j1 < 0 || j2 < 0) throw std::domain_error("two_point_trace_cell: negative descendent level");
    const std::vector<long>& full = counts ? *counts : rc.counts();
    Rational acc(0);
    for_each_submultiset(full, [&](const std::vector<long>& I, const Rational& w) {
        const MatSeries& A = rc.R(b, I);
        const MatSeries& B = rc.R(c, minus_vec(full, I));
        Rational cell = pair_cell(A, B, j1, j2, eps_pow);
        if (!cell.is_zero()) acc += w * cell;
    });
    return acc;
}

std::map<std::pair<long, long>, LaurentPoly> two_point_kernel_grid(RCalc& rc, int b, int c, long x_lo,
                                                                   long x_hi, long y_lo, long y_hi) {
    const OrbifoldStructure& st = rc.structure();
    std::map<std::pair<long, long>, LaurentPoly> grid;
    auto put = [&](long x, long y, const LaurentPoly& v) {
        if (v.is_zero() || x < x_lo || x > x_hi || y < y_lo || y > y_hi) return;
        auto [it, fresh] = grid.emplace(std::make_pair(x, y), v);
        if (!fresh) it->second += v;
    };

    bool empty_multiset = true;
    for (long cnt : rc.counts())
        if (cnt) empty_multiset = false;

    for_each_submultiset(rc.counts(), [&](const std::vector<long>& I, const Rational& w) {
        const MatSeries& A = rc.R(b, I);
        const MatSeries& B = rc.R(c, minus_vec(rc.counts(), I));
        long top_a = A.offset().to_long();
        long top_b = B.offset().to_long();
        for (long da = 0; da < A.order(); ++da) {
            long xa = top_a - da;
            for (long db = 0; db < B.order(); ++db) {
                long yb = top_b - db;
                LaurentPoly tr(Var::eps);
                for (int i = 0; i < st.l; ++i)
                    for (int j = 0; j < st.l; ++j)
                        tr += LaurentPoly::mul(A.layer(da).at(i, j), B.layer(db).at(j, i));
                if (tr.is_zero()) continue;
                tr *= w;
                // 1/(lambda-mu)^2 = sum (n+1) mu^n lambda^{-n-2}
                for (long n = 0; xa - n - 2 >= x_lo; ++n) put(xa - n - 2, yb + n, tr * Rational(n + 1));
            }
        }
    });

    if (empty_multiset) {
        // subtract the m = 0 correction, expanded in the same region
        std::vector<std::tuple<long, long, Rational>> monomials;  // lambda-exp, mu-exp, coeff
        if (b + c == st.m1) {
            monomials.emplace_back(1, 0, Rational(b));
            monomials.emplace_back(0, 1, Rational(c));
        }
        if (b == st.m1 && c == st.m1) monomials.emplace_back(1, 1, Rational(st.m1));
        if (b + c == 2 * st.m1 + st.m2) {
            monomials.emplace_back(1, 0, Rational(st.l - b));
            monomials.emplace_back(0, 1, Rational(st.l - c));
        }
        for (const auto& [u, v, coef] : monomials)
            for (long n = 0; u - n - 2 >= x_lo; ++n)
                put(u - n - 2, v + n, LaurentPoly(Var::eps, -coef * Rational(n + 1)));
    }
    return grid;
}

InvariantRecord extract_invariant(const OrbifoldStructure& st,
                                  std::vector<std::pair<int, long>> insertions, long g) {
    if (insertions.size() < 2) throw std::domain_error("extract_invariant: needs k >= 2 insertions");
    for (const auto& [a, i] : insertions) {
        if (a < 1 || a >= st.l) throw std::domain_error("extract_invariant: sector out of range");
        if (i < 0) throw std::domain_error("extract_invariant: negative descendent level");
    }
    InvariantRecord rec;
    rec.m1 = st.m1;
    rec.m2 = st.m2;
    rec.g = g;
    rec.insertions = insertions;
    std::sort(rec.insertions.begin(), rec.insertions.end());
    rec.d = degree_from_dimension(st, g, insertions);

    // the two highest levels go to the trace slots, the rest to the recursion
    std::sort(insertions.begin(), insertions.end(),
              [](const auto& x, const auto& y) { return x.second > y.second; });
    auto [b, j1] = insertions[0];
    auto [c, j2] = insertions[1];
    std::vector<std::pair<int, long>> labels;
    std::vector<long> counts;
    for (size_t t = 2; t < insertions.size(); ++t) {
        auto it = std::find(labels.begin(), labels.end(), insertions[t]);
        if (it == labels.end()) {
            labels.push_back(insertions[t]);
            counts.push_back(1);
        } else {
            ++counts[static_cast<size_t>(it - labels.begin())];
        }
    }

    long m = static_cast<long>(insertions.size()) - 2;
    long eps_pow = 2 * g + m;
    long order = two_point_order_budget(labels, counts, j1, j2);
    RCalc rc(st, labels, counts, order, eps_pow);
    Rational cell = two_point_trace_cell(rc, b, c, j1, j2, eps_pow);

    Rational norm(1);
    for (const auto& [a, i] : insertions) norm *= q_norm(st, a, i);
    rec.value = cell / norm;
    return rec;
}

std::vector<InvariantRecord> one_point_series(const OrbifoldStructure& st, int a, long i_max, long g_max) {
    const Rational q = st.q_of(a);
    const long order = i_max + 6;
    const MatSeries& M = m_matrix_cached(st, a, order);
    MatSeries shifted = M.shift_z(-1);

    // hhat = eps^{q_a - 1} M_a(lambda/eps - 1, 1/eps)_{m1+1,1}: coefficient of
    // lambda^{(1-q)-n} is the depth-n entry with s^e mapped to eps^{n-e}.
    PuiseuxSeries entry = shifted.entry(st.m1, 0);
    std::vector<LaurentPoly> tail(static_cast<size_t>(entry.order()), LaurentPoly(Var::eps));
    for (long n = 0; n < entry.order(); ++n) {
        const LaurentPoly& p = entry.tail_at(n);
        if (p.is_zero()) continue;
        for (long e = p.min_exp(); e <= p.max_exp(); ++e) {
            Rational cx = p.coeff(e);
            if (cx.is_zero()) continue;
            if (n - e < 0) throw std::logic_error("one_point_series: negative eps exponent");
            tail[static_cast<size_t>(n)].add_term(n - e, cx);
        }
    }
    PuiseuxSeries hhat(Rational(1) - q, std::move(tail), false, Var::eps);

    // Ghat = delta_{a,m1}/lambda - sum_k c_k eps^k d_lambda^k hhat
    const long K = order + 2;
    std::vector<Rational> cks = euler_maclaurin_coeffs(K);
    PuiseuxSeries opsum = PuiseuxSeries::zero(Var::eps);
    PuiseuxSeries der = hhat;
    for (long k = 0; k <= K; ++k) {
        PuiseuxSeries term = der;
        term *= cks[static_cast<size_t>(k)];
        opsum = k == 0 ? term : opsum + term;
        // next derivative, with one extra eps power
        PuiseuxSeries next(der.offset() - Rational(1),
                           std::vector<LaurentPoly>(static_cast<size_t>(der.order()), LaurentPoly(Var::eps)),
                           false, Var::eps);
        for (long n = 0; n < der.order(); ++n) {
            LaurentPoly c = der.tail_at(n);
            if (c.is_zero()) continue;
            next.tail_at(n) = (c * (der.offset() - Rational(n))).shifted(1);
        }
        der = std::move(next);
    }
    PuiseuxSeries ghat = -opsum;
    if (a == st.m1) {
        ghat = ghat + PuiseuxSeries::monomial(Rational(-1), LaurentPoly(Var::eps, Rational(1)));
        // no logarithmic sector: the lambda^{-1} layer must cancel exactly
        if (!ghat.coeff(Rational(-1)).is_zero())
            throw std::logic_error("one_point_series: lambda^{-1} term fails to cancel");
    }

    std::vector<InvariantRecord> out;
    for (long i = 0; i <= i_max; ++i)
        for (long g = 0; g <= g_max; ++g) {
            LaurentPoly c = ghat.coeff(-Rational(i) - q - Rational(2));
            Rational v = -c.coeff(2 * g) / (q_norm(st, a, i) * (Rational(i) + q + Rational(1)));
            InvariantRecord rec;
            rec.m1 = st.m1;
            rec.m2 = st.m2;
            rec.insertions = {{a, i}};
            rec.g = g;
            rec.d = degree_from_dimension(st, g, rec.insertions);
            rec.value = v;
            out.push_back(std::move(rec));
        }
    return out;
}

std::vector<InvariantRecord> one_point_closed(const OrbifoldStructure& st, int a, long i_max, long g_max) {
    const Rational q = st.q_of(a);
    std::vector<InvariantRecord> out;
    for (long i = 0; i <= i_max; ++i)
        for (long g = 0; g <= g_max; ++g) {
            Rational value(0);
            if (a == st.m1 && g >= 1 && i == 2 * g - 2)
                value += (Rational(1) - Rational(2).pow(2 * g - 1)) * bernoulli_number(2 * g) /
                         (Rational(2).pow(2 * g) * Rational(g));

            // the k1 sum: lambda and eps matching pin k1 = rho (i + q + 1 - 2g) / m_other
            bool low = a <= st.m1;
            long mm = low ? st.m1 : st.m2;
            long mo = low ? st.m2 : st.m1;
            Rational k1r = Rational(mm) * (Rational(i) + q + Rational(1) - Rational(2 * g)) / Rational(st.l);
            if (k1r.is_integer() && k1r.sign() > 0) {
                long k1 = k1r.to_long();
                long k2 = k1 + 2 * g - 1;
                long filt = low ? mo * k1 - a : mo * k1 + a - st.l;  // divisibility filters
                if (k2 >= 0 && filt % mm == 0) {
                    Rational S(0);
                    for (long k3 = 0; k3 < mo * k1; ++k3) {
                        long fl = k3 / mo;
                        Rational term = binom_int(k1 - 1, fl) *
                                        gen_bernoulli(k2, Rational(-mo * k1, mm), Rational(-(2 * k3 + 1), 2 * mm));
                        if (fl & 1L) term = -term;
                        S += term;
                    }
                    Rational pref = Rational(mm).pow(k2) *
                                    binom_rational(Rational(-mo * k1, mm) - Rational(1), k2) /
                                    (Rational(mo).pow(k1) * factorial(k1));
                    if (!(k1 & 1L)) pref = -pref;  // -(-1)^{k1}
                    value += pref * S;
                }
            }

            InvariantRecord rec;
            rec.m1 = st.m1;
            rec.m2 = st.m2;
            rec.insertions = {{a, i}};
            rec.g = g;
            rec.d = degree_from_dimension(st, g, rec.insertions);
            rec.value = value / q_norm(st, a, i);
            out.push_back(std::move(rec));
        }
    return out;
}

Rational degree_zero_one_point(long g) {
    if (g < 0) throw std::domain_error("degree_zero_one_point: negative genus");
    return (Rational(1) - Rational(2).pow(2 * g - 1)) * bernoulli_number(2 * g) /
           (Rational(2).pow(2 * g - 1) * factorial(2 * g));
}

Rational k2_direct_cell(const OrbifoldStructure& st, int a1, int a2, long i1, long i2, long g) {
    long order = i1 + i2 + 5;
    long eps_pow = 2 * g;
    MatSeries A = r_base(st, a1, order, eps_pow);
    MatSeries B = r_base(st, a2, order, eps_pow);
    // F_{a1,a2} normalized: + Tr Mhat(lambda1) Mhat(lambda2) / (lambda1-lambda2)^2;
    // corrections carry only nonnegative lambda2 powers.
    Rational acc(0);
    for (long n = 0; n <= i1; ++n) {
        long dx = 1 - (n + 1 - i1);
        long dy = 1 - (-i2 - 1 - n);
        if (dx < 0) continue;
        if (dx >= A.order() || dy >= B.order())
            throw TruncationError("k2_direct_cell: beyond window");
        Rational tr = trace_pair_eps(A.layer(dx), B.layer(dy), eps_pow);
        if (!tr.is_zero()) acc += Rational(n + 1) * tr;
    }
    return acc / (q_norm(st, a1, i1) * q_norm(st, a2, i2));
}

Rational k3_direct_cell(const OrbifoldStructure& st, int a1, int a2, int a3, long i1, long i2, long i3,
                        long g) {
    long order = i1 + i2 + i3 + 6;
    // three hatted factors carry eps^{3 - sum q} against the function's
    // eps^{2 - sum q}: the product is probed one eps power higher
    long eps_pow = 2 * g + 1;
    MatSeries A = r_base(st, a1, order, eps_pow);
    MatSeries B = r_base(st, a2, order, eps_pow);
    MatSeries C = r_base(st, a3, order, eps_pow);

    auto layer_of = [](const MatSeries& M, long exp) -> const PolyMat* {
        long d = 1 - exp;
        if (d < 0) return nullptr;
        if (d >= M.order()) throw TruncationError("k3_direct_cell: beyond window");
        return &M.layer(d);
    };
    auto tr3 = [&](const PolyMat& X, const PolyMat& Y, const PolyMat& Z) {
        PolyMat XY = PolyMat::mul(X, Y, eps_pow);
        return trace_pair_eps(XY, Z, eps_pow);
    };

    Rational acc(0);
    // identity class: + Tr A(l1) B(l2) C(l3) over the expansion of
    // -1/((l1-l2)(l2-l3)(l3-l1)); swap class (2 3): - Tr A(l1) C(l3) B(l2).
    for (long p1 = 0; p1 <= i1; ++p1)
        for (long p3 = 0; p1 + p3 <= i1; ++p3) {
            long x = 1 - i1 + p1 + p3;
            const PolyMat* ax = layer_of(A, x);
            if (!ax) continue;
            // id: y = p2 - p1 - i2, z = -i3 - 1 - p2 - p3
            for (long p2 = 0; p2 <= p1 + i2 + 1; ++p2) {
                long y = p2 - p1 - i2;
                if (y > 1) break;
                const PolyMat* by = layer_of(B, y);
                const PolyMat* cz = layer_of(C, -i3 - 1 - p2 - p3);
                if (by && cz) {
                    Rational t = tr3(*ax, *by, *cz);
                    if (!t.is_zero()) acc += t;
                }
            }
            // swap: y = p2 - p3 - i2, z = -i3 - 1 - p1 - p2
            for (long p2 = 0; p2 <= p3 + i2 + 1; ++p2) {
                long y = p2 - p3 - i2;
                if (y > 1) break;
                const PolyMat* by = layer_of(B, y);
                const PolyMat* cz = layer_of(C, -i3 - 1 - p1 - p2);
                if (by && cz) {
                    Rational t = tr3(*ax, *cz, *by);
                    if (!t.is_zero()) acc -= t;
                }
            }
        }
    return acc / (q_norm(st, a1, i1) * q_norm(st, a2, i2) * q_norm(st, a3, i3));
}

}  // namespace orbigw
