#include "orbigw/tde.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "orbigw/bernoulli.hpp"
#include "orbigw/linsolve.hpp"

namespace orbigw {

namespace {

// Entry formula for a <= m1, on the z^{1-q_a} grid; j may be <= 0 after the
// column mapping j -> j - l. The inner alternating factorial sum annihilates
// every term with t > l1 - l2 (a finite difference of order t applied to a
// polynomial of degree l1 - l2 in l3), so those are skipped.
PuiseuxSeries g_expr1(const OrbifoldStructure& st, int a, int i, int j, long order) {
    const long m1 = st.m1, m2 = st.m2;
    const Rational qa = st.q_of(a);
    std::vector<LaurentPoly> tail(static_cast<size_t>(order), LaurentPoly(Var::s));
    for (long n = 0; n < order; ++n) {
        long l1 = n - 1;
        for (long l2 = -1; l2 <= l1; ++l2) {
            long num = m1 * l2 + a + j - i;
            if (num % m2 != 0) continue;
            long t = num / m2;
            if (t < 0 || t > l1 - l2) continue;
            Rational base = binom_rational(Rational(-l2) - qa, l1 - l2) * Rational(m1).pow(l1 - l2) /
                            Rational(m2).pow(t);
            if (base.is_zero()) continue;
            Rational inner(0);
            for (long l3 = 0; l3 <= t; ++l3) {
                Rational b = gen_bernoulli(l1 - l2, Rational(1 - l2) - qa,
                                           Rational(2 * (i - a + m2 * l3) - 1, 2 * m1) - Rational(l2));
                Rational w = Rational(1) / (factorial(l3) * factorial(t - l3));
                if (l3 & 1L) w = -w;
                inner += w * b;
            }
            tail[static_cast<size_t>(n)].add_term(l2 + t + 1, base * inner);
        }
    }
    return PuiseuxSeries(Rational(1) - qa, std::move(tail), false, Var::s);
}

// Entry formula for a > m1 on the z^{1-q_a} grid (q_a = (l-a)/m2).
PuiseuxSeries g_expr2(const OrbifoldStructure& st, int a, int i, int j, long order) {
    const long m1 = st.m1, m2 = st.m2;
    const Rational qa = st.q_of(a);
    std::vector<LaurentPoly> tail(static_cast<size_t>(order), LaurentPoly(Var::s));
    for (long n = 0; n < order; ++n) {
        long l1 = n - 1;
        for (long l2 = -1; l2 <= l1; ++l2) {
            long num = m2 * l2 + i - j - a;
            if (num % m1 != 0) continue;
            long t = num / m1;
            if (t < 0 || t > l1 - l2) continue;
            Rational base = binom_rational(Rational(-l2) - qa, l1 - l2) * Rational(m2).pow(l1 - l2) /
                            Rational(m1).pow(t);
            if (base.is_zero()) continue;
            Rational inner(0);
            for (long l3 = 0; l3 <= t; ++l3) {
                Rational b = gen_bernoulli(l1 - l2, Rational(1 - l2) - qa,
                                           Rational(2 * (j + a - m1 + m1 * l3) - 1, 2 * m2) - Rational(l2));
                Rational w = Rational(1) / (factorial(l3) * factorial(t - l3));
                if (l3 & 1L) w = -w;
                inner += w * b;
            }
            tail[static_cast<size_t>(n)].add_term(l2 + t + 1, base * inner);
        }
    }
    return PuiseuxSeries(Rational(1) - qa, std::move(tail), false, Var::s);
}

void require_sector(const OrbifoldStructure& st, int a) {
    if (a < 1 || a >= st.l) throw std::domain_error("sector index out of range 1..l-1");
}

std::string cache_path(const OrbifoldStructure& st, int a) {
    const char* dir = std::getenv("GW_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/gw_m" + std::to_string(st.m1) + "_" + std::to_string(st.m2) + "_a" +
           std::to_string(a) + ".txt";
}

bool load_mat_cache(const std::string& path, const OrbifoldStructure& st, int a, long order, MatSeries& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "orbigw-mcache" || version != 1) return false;
    int fm1 = 0, fm2 = 0, fa = 0, fl = 0;
    long forder = 0;
    in >> fm1 >> fm2 >> fa >> forder >> fl;
    if (fm1 != st.m1 || fm2 != st.m2 || fa != a || fl != st.l || forder < order) return false;
    MatSeries m(st.l, Rational(1) - st.q_of(a), forder, Var::s);
    std::string tok;
    while (in >> tok) {
        if (tok == "end") {
            out = forder == order ? std::move(m) : m.truncated(order);
            return true;
        }
        long n = std::stol(tok);
        int i = 0, j = 0;
        long nterms = 0;
        in >> i >> j >> nterms;
        if (!in || n < 0 || n >= forder || i < 0 || i >= fl || j < 0 || j >= fl) return false;
        LaurentPoly p(Var::s);
        for (long k = 0; k < nterms; ++k) {
            long e = 0;
            std::string val;
            in >> e >> val;
            if (!in) return false;
            p.add_term(e, Rational::from_string(val));
        }
        m.layer(n).at(i, j) = std::move(p);
    }
    return false;
}

void save_mat_cache(const std::string& path, const OrbifoldStructure& st, int a, const MatSeries& m) {
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << "orbigw-mcache 1\n";
        out << st.m1 << " " << st.m2 << " " << a << " " << m.order() << " " << st.l << "\n";
        for (long n = 0; n < m.order(); ++n)
            for (int i = 0; i < st.l; ++i)
                for (int j = 0; j < st.l; ++j) {
                    const LaurentPoly& p = m.layer(n).at(i, j);
                    if (p.is_zero()) continue;
                    std::vector<std::pair<long, Rational>> terms;
                    for (long e = p.min_exp(); e <= p.max_exp(); ++e) {
                        Rational c = p.coeff(e);
                        if (!c.is_zero()) terms.emplace_back(e, c);
                    }
                    out << n << " " << i << " " << j << " " << terms.size();
                    for (const auto& [e, c] : terms) out << " " << e << " " << c.to_string();
                    out << "\n";
                }
        out << "end\n";
    }
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace

PuiseuxSeries m_entry(const OrbifoldStructure& st, int a, int i, int j, long order) {
    require_sector(st, a);
    if (i < 1 || i > st.l || j < 1 || j > st.l) throw std::domain_error("m_entry: index out of range");
    bool second_block = j > st.m1;
    int jx = second_block ? j - st.l : j;
    PuiseuxSeries g = a <= st.m1 ? g_expr1(st, a, i, jx, order) : g_expr2(st, a, i, jx, order);
    return second_block ? -g : g;
}

MatSeries m_matrix(const OrbifoldStructure& st, int a, long order) {
    require_sector(st, a);
    MatSeries m(st.l, Rational(1) - st.q_of(a), order, Var::s);
    for (int i = 1; i <= st.l; ++i)
        for (int j = 1; j <= st.l; ++j) {
            PuiseuxSeries e = m_entry(st, a, i, j, order);
            for (long n = 0; n < order; ++n) m.layer(n).at(i - 1, j - 1) = e.tail_at(n);
        }
    if (order > 0 && !(m.layer(0) == PolyMat::from_rat(st.K_of(a), Var::s)))
        throw std::logic_error("m_matrix: leading coefficient differs from K_a");
    for (long n = 0; n < order; ++n)
        for (int i = 0; i < st.l; ++i)
            for (int j = 0; j < st.l; ++j) {
                const LaurentPoly& p = m.layer(n).at(i, j);
                if (!p.is_zero() && (p.min_exp() < 0 || p.max_exp() > n))
                    throw std::logic_error("m_matrix: coefficient not a polynomial in s of degree <= depth");
            }
    return m;
}

const MatSeries& m_matrix_cached(const OrbifoldStructure& st, int a, long order) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<MatSeries>> cache;
    // superseded generations stay alive: callers may hold references across an
    // order upgrade of the same key
    static std::vector<std::unique_ptr<MatSeries>> retired;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(st.m1, st.m2, a);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->order() >= order) return *it->second;

    std::string path = cache_path(st, a);
    MatSeries m;
    bool loaded = false;
    if (!path.empty()) loaded = load_mat_cache(path, st, a, order, m);
    if (!loaded) {
        m = m_matrix(st, a, order);
        if (!path.empty()) save_mat_cache(path, st, a, m);
    }
    if (it != cache.end()) {
        retired.push_back(std::move(it->second));
        it->second = std::make_unique<MatSeries>(std::move(m));
        return *it->second;
    }
    auto [jt, _] = cache.emplace(key, std::make_unique<MatSeries>(std::move(m)));
    return *jt->second;
}

MatSeries m_matrix_equal_weights(const OrbifoldStructure& st, int a, long order) {
    require_sector(st, a);
    if (st.m1 != st.m2) throw std::domain_error("m_matrix_equal_weights: requires m1 == m2");
    const long m = st.m1;
    MatSeries out(st.l, Rational(1) - st.q_of(a), order, Var::s);
    for (int i = 1; i <= st.l; ++i)
        for (int j = 1; j <= st.l; ++j) {
            bool second_block = j > st.m1;
            long jx = second_block ? j - st.l : j;
            long pnum = i - jx - a;
            if (pnum % m != 0) continue;
            long p = pnum / m;
            for (long n = 0; n < order; ++n) {
                long k1 = n - 1;
                LaurentPoly& dst = out.layer(n).at(i - 1, j - 1);
                if (a <= st.m1) {
                    for (long k2 = 0; 2 * k2 <= k1 - p; ++k2) {
                        long e1 = k1 - p - 2 * k2;
                        Rational v = binom_rational(Rational(jx - i, m) - Rational(2 * k2), e1) *
                                     binom_rational(Rational(i - jx, m) + Rational(2 * k2 - 1), k2) *
                                     gen_bernoulli(e1, Rational(jx - i, m) - Rational(2 * k2 - 1),
                                                   Rational(2 * jx - 1, 2 * m) - Rational(k2)) *
                                     Rational(m).pow(e1);
                        if (second_block) v = -v;
                        dst.add_term(p + 1 + 2 * k2, v);
                    }
                } else {
                    for (long k2 = 0; 2 * k2 <= k1 + p; ++k2) {
                        long e1 = k1 + p - 2 * k2;
                        Rational v = binom_rational(Rational(i - jx, m) - Rational(2 * k2 + 2), e1) *
                                     binom_rational(Rational(jx - i, m) + Rational(2 * k2 + 1), k2) *
                                     gen_bernoulli(e1, Rational(i - jx, m) - Rational(2 * k2 + 1),
                                                   Rational(2 * i - 1, 2 * m) - Rational(k2 + 1)) *
                                     Rational(m).pow(e1);
                        if (second_block) v = -v;
                        dst.add_term(1 - p + 2 * k2, v);
                    }
                }
            }
        }
    return out;
}

PuiseuxSeries gamma_ratio_expansion(const Rational& alpha, const Rational& beta, long order) {
    Rational gamma = alpha - beta;
    std::vector<LaurentPoly> tail;
    tail.reserve(static_cast<size_t>(order));
    for (long el = 0; el < order; ++el)
        tail.emplace_back(Var::s, binom_rational(gamma, el) * gen_bernoulli(el, gamma + Rational(1), alpha));
    return PuiseuxSeries(gamma, std::move(tail), false, Var::s);
}

PuiseuxSeries m_entry_via_gamma(const OrbifoldStructure& st, int a, int i, int j, long order) {
    require_sector(st, a);
    bool second_block = j > st.m1;
    long jx = second_block ? j - st.l : j;
    const bool low = a <= st.m1;
    const long mm = low ? st.m1 : st.m2;  // modulus of the divisibility filter
    const long mo = low ? st.m2 : st.m1;
    const Rational qa = st.q_of(a);

    std::vector<LaurentPoly> tail(static_cast<size_t>(order), LaurentPoly(Var::s));
    for (long k1 = 0;; ++k1) {
        Rational gamma = low ? Rational(jx - i - mo * k1, mm) : Rational(i - jx - mo * (k1 + 1) - mm, mm);
        Rational n0r = (Rational(1) - qa) - gamma;
        if (n0r >= Rational(order)) break;
        long num = low ? mo * k1 + i - jx - a : mo * k1 - i + jx + a;
        if (num % mm != 0) continue;
        long e_s = 1 + k1 + num / mm;
        if (e_s < 0 || !n0r.is_integer()) throw std::logic_error("m_entry_via_gamma: grid bookkeeping failed");
        long n0 = n0r.to_long();

        Rational kfac = Rational(mo).pow(k1);
        for (long k2 = 0; k2 <= k1; ++k2) {
            Rational w = Rational(1) / (factorial(k2) * factorial(k1 - k2) * kfac);
            if (k2 & 1L) w = -w;
            Rational alpha = low ? Rational(jx - mo * (k1 - k2), mm) : Rational(i - mo * (k1 - k2 + 1), mm);
            for (long el = 0; n0 + el < order; ++el) {
                Rational r = binom_rational(gamma, el) * gen_bernoulli(el, gamma + Rational(1), alpha) *
                             Rational(mm).pow(el);
                if (r.is_zero()) continue;
                // (z - 1/2)^{gamma - el} expanded on the z grid
                for (long p = 0; n0 + el + p < order; ++p) {
                    Rational c = w * r * binom_rational(gamma - Rational(el), p) * Rational(-1, 2).pow(p);
                    if (c.is_zero()) continue;
                    if (second_block) c = -c;
                    tail[static_cast<size_t>(n0 + el + p)].add_term(e_s, c);
                }
            }
        }
    }
    return PuiseuxSeries(Rational(1) - qa, std::move(tail), false, Var::s);
}

namespace {

MatSeries solve_tde_attempt(const OrbifoldStructure& st, int a, long order, long buffer, const Rational& s0) {
    const int l = st.l;
    const Rational beta = Rational(1) - st.q_of(a);
    const long ntot = order + buffer;  // coefficients M_0..M_ntot are unknowns
    const long ncols = (ntot + 1) * l * l;
    auto idx = [&](long n, int i, int j) { return (n * l + i) * l + j; };

    RatMat W0(l);
    W0.at(0, st.m1 - 1) = Rational(-1, 2);
    W0.at(0, l - 1) += -s0;
    for (int r = 1; r < l; ++r) W0.at(r, r - 1) += s0;

    // shift weights: M(z-1) layer n = sum_k sigma(n,k) M_k
    std::vector<std::vector<Rational>> sigma(static_cast<size_t>(ntot + 1));
    for (long n = 0; n <= ntot; ++n) {
        sigma[static_cast<size_t>(n)].resize(static_cast<size_t>(n + 1));
        for (long k = 0; k <= n; ++k) {
            Rational w = binom_rational(beta - Rational(k), n - k);
            if ((n - k) & 1L) w = -w;
            sigma[static_cast<size_t>(n)][static_cast<size_t>(k)] = w;
        }
    }

    SparseLinearSystem sys(ncols);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            sys.add_row({{idx(0, i, j), Rational(1)}}, st.K_of(a).at(i, j));

    // residual layer n (coefficient of z^{2-q_a-n}), for n = 0..ntot:
    //   N_n E + N_{n-1} W0 - E M_n - W0 M_{n-1} = 0,  E = e_{1,m1}
    for (long n = 0; n <= ntot; ++n) {
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                std::map<long, Rational> row;
                auto add = [&](long col, const Rational& c) {
                    if (c.is_zero()) return;
                    auto [it, fresh] = row.emplace(col, c);
                    if (!fresh) it->second += c;
                };
                if (j == st.m1 - 1)  // (N_n E)_{ij} = (N_n)_{i,0}
                    for (long k = 0; k <= n; ++k) add(idx(k, i, 0), sigma[static_cast<size_t>(n)][static_cast<size_t>(k)]);
                if (n >= 1)  // (N_{n-1} W0)_{ij}
                    for (int p = 0; p < l; ++p) {
                        if (W0.at(p, j).is_zero()) continue;
                        for (long k = 0; k <= n - 1; ++k)
                            add(idx(k, i, p), sigma[static_cast<size_t>(n - 1)][static_cast<size_t>(k)] * W0.at(p, j));
                    }
                if (i == 0) add(idx(n, st.m1 - 1, j), Rational(-1));  // -(E M_n)_{ij}
                if (n >= 1)
                    for (int p = 0; p < l; ++p)
                        if (!W0.at(i, p).is_zero()) add(idx(n - 1, p, j), -W0.at(i, p));
                sys.add_row(std::move(row), Rational(0));
            }
    }

    auto sol = sys.solve();
    MatSeries m(l, beta, order, Var::s);
    for (long n = 0; n < order; ++n)
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                const auto& v = sol.value[static_cast<size_t>(idx(n, i, j))];
                if (!v)
                    throw InsufficientBuffer("solve_tde_linear: coefficient M_" + std::to_string(n) +
                                             " not pinned at buffer " + std::to_string(buffer));
                m.layer(n).at(i, j) = LaurentPoly(Var::s, *v);
            }
    return m;
}

}  // namespace

MatSeries solve_tde_linear(const OrbifoldStructure& st, int a, long order, const Rational& s0) {
    require_sector(st, a);
    if (s0.is_zero()) throw std::domain_error("solve_tde_linear: s0 must be nonzero");
    long buffer = 2 * st.m1;
    for (;;) {
        try {
            return solve_tde_attempt(st, a, order, buffer, s0);
        } catch (const InsufficientBuffer&) {
            if (buffer > 8 * st.l + 4 * order) throw;
            buffer *= 2;
        }
    }
}

TdeReport verify_tde(const OrbifoldStructure& st, const MatSeries& M) {
    MatSeries lhs = MatSeries::mul(M.shift_z(-1), st.W);
    MatSeries rhs = MatSeries::mul(st.W, M);
    MatSeries res = lhs - rhs;
    TdeReport rep;
    rep.checked_layers = res.order();
    long v = 0;
    while (v < res.order() && res.layer(v).is_zero()) ++v;
    rep.vanish_layers = v;
    rep.pass = v >= M.order() - 1;
    return rep;
}

bool check_transpose_symmetry(int m1, int m2, int a, long order) {
    OrbifoldStructure swapped = build_structure(m2, m1);
    OrbifoldStructure base = build_structure(m1, m2);
    const MatSeries& lhs = m_matrix_cached(swapped, a, order);
    const MatSeries& d = m_matrix_cached(base, base.l - a, order);
    MatSeries rhs = -(d.transpose().conjugate(base.eta2_inv, base.eta2));
    if (a == m2) rhs = rhs + MatSeries::constant(RatMat::identity(base.l), Var::s);
    return MatSeries::equal_on_common_window(lhs, rhs, order);
}

bool check_reflection_symmetry(int m1, int m2, int a, long order) {
    OrbifoldStructure swapped = build_structure(m2, m1);
    OrbifoldStructure base = build_structure(m1, m2);
    const MatSeries& lhs = m_matrix_cached(swapped, a, order);
    const MatSeries& d = m_matrix_cached(base, base.l - a, order);
    // (-1)^{q_a} (-z)^{1-q-n} collapses to the layer sign -(-1)^n; s -> -s.
    MatSeries rhs(base.l, d.offset(), d.order(), Var::s);
    for (long n = 0; n < d.order(); ++n) {
        PolyMat ln = d.layer(n).map([](const LaurentPoly& p) { return p.negate_var(); });
        Rational sign = (n & 1L) ? Rational(1) : Rational(-1);
        rhs.layer(n) = PolyMat::mul(PolyMat::mul(PolyMat::from_rat(base.eta1_inv, Var::s), ln,
                                                 std::numeric_limits<long>::max()),
                                    PolyMat::from_rat(base.eta1, Var::s), std::numeric_limits<long>::max())
                           .map([&](const LaurentPoly& p) { return p * sign; });
    }
    if (a == m2) rhs = rhs + MatSeries::constant(RatMat::identity(base.l), Var::s);
    return MatSeries::equal_on_common_window(lhs, rhs, order);
}

bool check_annihilation(const OrbifoldStructure& st, long order) {
    for (int a = 1; a <= st.m1 && a < st.l; ++a)
        for (int b = st.m1 + 1; b < st.l; ++b) {
            const MatSeries& ma = m_matrix_cached(st, a, order);
            const MatSeries& mb = m_matrix_cached(st, b, order);
            if (!MatSeries::mul(ma, mb).stored_zero()) return false;
            if (!MatSeries::mul(mb, ma).stored_zero()) return false;
        }
    return true;
}

bool check_trace(const OrbifoldStructure& st, int a, long order) {
    const MatSeries& m = m_matrix_cached(st, a, order);
    PuiseuxSeries tr = m.trace();
    for (long n = 0; n < tr.order(); ++n) {
        LaurentPoly expect(Var::s);
        if (n == 0 && a == st.m1) expect = LaurentPoly(Var::s, Rational(st.m1));
        if (tr.tail_at(n) != expect) return false;
    }
    return true;
}

bool check_det(const OrbifoldStructure& st, int a, long order) {
    return m_matrix_cached(st, a, order).det().stored_zero();
}

bool check_power_relation(const OrbifoldStructure& st, int a, long order) {
    const MatSeries& ma = m_matrix_cached(st, a, order);
    if (a <= st.m1) {
        const MatSeries& m1m = m_matrix_cached(st, 1, order);
        MatSeries p = m1m;
        for (int k = 1; k < a; ++k) p = MatSeries::mul(p, m1m);
        p *= LaurentPoly(Var::s, Rational(1), 1 - a);
        return MatSeries::equal_on_common_window(ma, p, order);
    }
    const MatSeries& gen = m_matrix_cached(st, st.l - 1, order);
    MatSeries p = gen;
    for (int k = 1; k < st.l - a; ++k) p = MatSeries::mul(p, gen);
    long e = 1 - st.l + a;
    Rational sign = (e % 2 == 0) ? Rational(1) : Rational(-1);
    p *= LaurentPoly(Var::s, sign, e);
    return MatSeries::equal_on_common_window(ma, p, order);
}

bool check_polynomiality(const OrbifoldStructure& st, int a, long order) {
    const MatSeries& m = m_matrix_cached(st, a, order);
    for (long n = 0; n < m.order(); ++n)
        for (int i = 0; i < st.l; ++i)
            for (int j = 0; j < st.l; ++j) {
                const LaurentPoly& p = m.layer(n).at(i, j);
                if (!p.is_zero() && (p.min_exp() < 0 || p.max_exp() > n)) return false;
            }
    return true;
}

MatSeries specialize_s(const MatSeries& M, const Rational& s0) {
    return M.map_coeffs([&](const LaurentPoly& p) { return LaurentPoly(Var::s, p.eval(s0)); });
}

}  // namespace orbigw
