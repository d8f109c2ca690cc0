// Acceptance suite: one line per criterion, exact equality everywhere.
// Exit code = number of failed criteria.

#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

#include "orbigw/correlators.hpp"
#include "orbigw/table_render.hpp"

using namespace orbigw;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << "CRITERION " << idx << " [" << name << "]: " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
}

std::vector<std::pair<int, long>> reps(int a, long i, long k) {
    return std::vector<std::pair<int, long>>(static_cast<size_t>(k), {a, i});
}

Rational cell_value(const OrbifoldStructure& st, int a, long i, long k, long g) {
    if (k == 1) {
        for (const auto& r : one_point_series(st, a, i, g))
            if (r.insertions[0].second == i && r.g == g) return r.value;
        return Rational(0);
    }
    return extract_invariant(st, reps(a, i, k), g).value;
}

// ---- criterion 1: the ten reference tables on k <= 6, g <= 3 ----
void criterion1() {
    auto t0 = Clock::now();
    std::ostringstream detail;
    bool ok = true;
    long cells = 0;
    auto tables = load_golden_tables();
    for (const auto& g : tables) {
        TableSpec spec = spec_from_golden(g, std::min<long>(6, g.k_max()), std::min<long>(3, g.g_max()));
        ComputedTable t = compute_table(spec);
        GoldenComparison cmp = compare_to_golden(t, g);
        cells += cmp.matched;
        if (!cmp.mismatches.empty() || cmp.truncated) {
            ok = false;
            for (const auto& m : cmp.mismatches) detail << m << "; ";
            if (cmp.truncated) detail << g.id << " truncated; ";
        }
    }
    // spot-check the named cells straight from the dataset
    struct Named {
        const char* id;
        long k, g;
        Rational v;
    };
    const Named named[] = {
        {"P21-tau11", 2, 0, Rational(1, 2)},  {"P21-tau11", 3, 1, Rational(-1, 8)},
        {"P21-tau11", 5, 0, Rational(10)},    {"P21-tau21", 4, 0, Rational(12)},
        {"P21-tau12", 1, 1, Rational(1, 12)}, {"P21-tau22", 1, 2, Rational(7, 5760)},
        {"P31-tau11", 6, 0, Rational(40)},    {"P22-tau11", 4, 0, Rational(12)},
        {"P22-tau11", 4, 2, Rational(-1, 16)}, {"P22-tau21", 2, 0, Rational(1)},
        {"P22-tau21", 2, 1, Rational(1, 2)},
    };
    for (const auto& n : named) {
        const GoldenTable* g = find_golden_table(tables, n.id);
        if (!g || g->cells.at({n.k, n.g}) != n.v) {
            ok = false;
            detail << "named cell " << n.id << " k=" << n.k << " g=" << n.g << " off; ";
        }
    }
    double secs = seconds_since(t0);
    if (secs > 300) {
        ok = false;
        detail << "over 5 minute budget; ";
    }
    std::ostringstream d;
    d << cells << " cells exact, " << secs << "s";
    report(1, "golden tables k<=6 g<=3", ok, ok ? d.str() : detail.str() + d.str());
}

// ---- criterion 2: primary (i = 0) invariants quoted in the text ----
void criterion2() {
    bool ok = true;
    std::ostringstream detail;
    auto expect = [&](const OrbifoldStructure& st, int a, long k, long g, const Rational& v,
                      std::optional<long> d_expected) {
        Rational got = cell_value(st, a, 0, k, g);
        std::optional<long> d = degree_from_dimension(st, g, reps(a, 0, k));
        bool one = got == v && d == d_expected;
        if (!one) {
            ok = false;
            detail << "(" << st.m1 << "," << st.m2 << ") a=" << a << " k=" << k << " g=" << g << " got "
                   << got.to_string() << "; ";
        }
    };
    OrbifoldStructure st21 = build_structure(2, 1);
    expect(st21, 1, 1, 0, Rational(1), 1);  // value 1; degree label d = 1 (see ledger)
    expect(st21, 1, 4, 0, Rational(-1, 4), 0);
    expect(st21, 2, 1, 1, Rational(-1, 24), 0);

    OrbifoldStructure st31 = build_structure(3, 1);
    expect(st31, 1, 1, 0, Rational(1), 1);
    expect(st31, 1, 3, 0, Rational(1, 3), 0);
    expect(st31, 2, 2, 0, Rational(1, 3), 1);
    expect(st31, 2, 6, 0, Rational(-1, 27), 0);
    expect(st31, 3, 1, 1, Rational(-1, 24), 0);

    OrbifoldStructure st22 = build_structure(2, 2);
    // conjectural golden family <tau_0(phi_2)^k>_{0,2} = 2^{k-1}
    for (long k = 1; k <= 6; ++k) expect(st22, 2, k, 0, Rational(2).pow(k - 1), 2);
    expect(st22, 2, 1, 1, Rational(-1, 24), 0);
    expect(st22, 1, 4, 0, Rational(-1, 4), 0);
    expect(st22, 3, 4, 0, Rational(-1, 4), 0);

    // everything else on the small grid vanishes
    for (const OrbifoldStructure* st : {&st21, &st31, &st22})
        for (int a = 1; a < st->l; ++a)
            for (long k = 2; k <= 5; ++k)
                for (long g = 0; g <= 1; ++g) {
                    Rational got = cell_value(*st, a, 0, k, g);
                    bool named = (st->m1 == 2 && st->m2 == 1 && a == 1 && k == 4 && g == 0) ||
                                 (st->m1 == 3 && ((a == 1 && k == 3 && g == 0) || (a == 2 && k == 2 && g == 0))) ||
                                 (st->m1 == 2 && st->m2 == 2 &&
                                  ((a == 2 && g == 0) || ((a == 1 || a == 3) && k == 4 && g == 0)));
                    if (!named && !got.is_zero()) {
                        ok = false;
                        detail << "unexpected nonzero (" << st->m1 << "," << st->m2 << ") a=" << a << " k=" << k
                               << " g=" << g << "; ";
                    }
                }
    report(2, "primary invariants", ok, detail.str());
}

// ---- criterion 3: difference-equation residuals to order >= 10 ----
void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (auto [m1, m2] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}}) {
        OrbifoldStructure st = build_structure(m1, m2);
        for (int a = 1; a < st.l; ++a) {
            TdeReport rep = verify_tde(st, m_matrix_cached(st, a, 10));
            if (!rep.pass) {
                ok = false;
                detail << "(" << m1 << "," << m2 << ") a=" << a << " vanishes only to " << rep.vanish_layers
                       << "; ";
            }
        }
    }
    double secs = seconds_since(t0);
    if (secs > 60) {
        ok = false;
        detail << "over 1 minute budget; ";
    }
    std::ostringstream d;
    d << secs << "s";
    report(3, "difference-equation residuals order 10", ok, ok ? d.str() : detail.str());
}

// ---- criterion 4: solution-route equivalence at order 8 ----
void criterion4() {
    bool ok = true;
    std::ostringstream detail;
    const std::vector<Rational> samples = {Rational(3, 5), Rational(-7, 3)};
    for (auto [m1, m2] : {std::pair{2, 1}, {2, 2}}) {
        OrbifoldStructure st = build_structure(m1, m2);
        for (int a = 1; a < st.l; ++a) {
            const MatSeries& m = m_matrix_cached(st, a, 8);
            for (int i = 1; i <= st.l; ++i)
                for (int j = 1; j <= st.l; ++j)
                    if (!PuiseuxSeries::equal_on_common_window(m.entry(i - 1, j - 1),
                                                               m_entry_via_gamma(st, a, i, j, 8), 8)) {
                        ok = false;
                        detail << "gamma route (" << m1 << "," << m2 << ") a=" << a << "; ";
                    }
            for (const Rational& s0 : samples)
                if (!MatSeries::equal_on_common_window(specialize_s(m, s0), solve_tde_linear(st, a, 8, s0), 8)) {
                    ok = false;
                    detail << "linear solve (" << m1 << "," << m2 << ") a=" << a << " s0=" << s0.to_string()
                           << "; ";
                }
            if (m1 == m2 &&
                !MatSeries::equal_on_common_window(m, m_matrix_equal_weights(st, a, 8), 8)) {
                ok = false;
                detail << "equal-weight route a=" << a << "; ";
            }
        }
    }
    report(4, "solution-route equivalence order 8", ok, detail.str());
}

// ---- criterion 5: algebraic identities to order 10 ----
void criterion5() {
    bool ok = true;
    std::ostringstream detail;
    for (auto [m1, m2] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}}) {
        OrbifoldStructure st = build_structure(m1, m2);
        for (int a = 1; a < st.l; ++a) {
            if (!check_trace(st, a, 10)) { ok = false; detail << "trace a=" << a << "; "; }
            if (!check_det(st, a, 10)) { ok = false; detail << "det a=" << a << "; "; }
            if (!check_power_relation(st, a, 10)) { ok = false; detail << "power a=" << a << "; "; }
            if (!check_polynomiality(st, a, 10)) { ok = false; detail << "polynomiality a=" << a << "; "; }
        }
        if (!check_annihilation(st, 10)) {
            ok = false;
            detail << "annihilation (" << m1 << "," << m2 << "); ";
        }
    }
    report(5, "algebraic identities order 10", ok, detail.str());
}

// ---- criterion 6: symmetry identities ----
void criterion6() {
    bool ok = true;
    std::ostringstream detail;
    for (int a = 1; a <= 2; ++a) {
        if (!check_transpose_symmetry(2, 1, a, 10)) { ok = false; detail << "transpose (2,1) a=" << a << "; "; }
        if (!check_transpose_symmetry(1, 2, a, 10)) { ok = false; detail << "transpose (1,2) a=" << a << "; "; }
    }
    for (int a = 1; a <= 3; ++a)
        if (!check_transpose_symmetry(2, 2, a, 10)) { ok = false; detail << "transpose (2,2) a=" << a << "; "; }
    if (!check_reflection_symmetry(1, 1, 1, 10)) { ok = false; detail << "reflection (1,1); "; }
    if (!check_reflection_symmetry(2, 1, 1, 10)) { ok = false; detail << "reflection q=1 of (1,2); "; }
    if (!check_reflection_symmetry(1, 2, 2, 10)) { ok = false; detail << "reflection q=1 of (2,1); "; }
    if (!check_reflection_symmetry(2, 2, 2, 10)) { ok = false; detail << "reflection q=1 of (2,2); "; }
    report(6, "symmetry identities", ok, detail.str());
}

// ---- criterion 7: route agreement on generating functions ----
void criterion7() {
    bool ok = true;
    std::ostringstream detail;
    auto tables = load_golden_tables();
    long checked = 0;
    for (const auto& g : tables) {
        OrbifoldStructure st = build_structure(g.m1, g.m2);
        for (long gg = 0; gg <= std::min<long>(3, g.g_max()); ++gg) {
            if (g.cells.find({2, gg}) == g.cells.end()) continue;
            Rational lhs = extract_invariant(st, reps(g.a, g.i, 2), gg).value;
            Rational rhs = k2_direct_cell(st, g.a, g.a, g.i, g.i, gg);
            ++checked;
            if (lhs != rhs) {
                ok = false;
                detail << g.id << " g=" << gg << ": " << lhs.to_string() << " vs " << rhs.to_string() << "; ";
            }
        }
    }
    for (auto [m1, m2] : {std::pair{2, 1}, {3, 1}}) {
        OrbifoldStructure st = build_structure(m1, m2);
        for (int a = 1; a < st.l; ++a) {
            auto op = one_point_series(st, a, 2, 3);
            auto cl = one_point_closed(st, a, 2, 3);
            if (op.size() != cl.size()) { ok = false; continue; }
            for (size_t t = 0; t < op.size(); ++t) {
                ++checked;
                if (op[t].value != cl[t].value) {
                    ok = false;
                    detail << "one-point (" << m1 << "," << m2 << ") a=" << a << " i="
                           << op[t].insertions[0].second << " g=" << op[t].g << "; ";
                }
            }
        }
    }
    std::ostringstream d;
    d << checked << " comparisons";
    report(7, "route agreement", ok, ok ? d.str() : detail.str());
}

// ---- criterion 8: the weight-(1,1) closed form to order 8 ----
Rational alpha_coeff(long n, long sexp) {
    if (n < 2 || n % 2 != 0 || sexp % 2 != 0) return Rational(0);
    long j = n / 2 - 1, i = sexp / 2 - 1;
    if (i < 0 || i > j) return Rational(0);
    Rational inner(0);
    for (long el = 0; el <= i; ++el) {
        Rational t = (Rational(i - el) + Rational(1, 2)).pow(2 * j + 1) * binom_int(2 * i + 1, el);
        if (el & 1L) t = -t;
        inner += t;
    }
    return Rational(2) * inner / (factorial(i) * factorial(i + 1));
}

Rational p_coeff(long n, long sexp, bool second) {
    // shared double sum of the two off-diagonal generating pieces
    long j = second ? n / 2 - 1 : (n - 1) / 2;
    long i = (sexp - 1) / 2;
    if (sexp % 2 != 1 || j < 0 || i < 0 || i > j) return Rational(0);
    if (!second && n % 2 != 1) return Rational(0);
    if (second && (n < 2 || n % 2 != 0)) return Rational(0);
    Rational inner(0);
    for (long el = 0; el <= i; ++el) {
        Rational t = (Rational(i - el) + Rational(1, 2)).pow(2 * j) *
                     (binom_int(2 * i, el) - binom_int(2 * i, el - 1));
        if (el & 1L) t = -t;
        inner += t;
    }
    inner = inner / (factorial(i) * factorial(i));
    return second ? Rational(-1, 2) * Rational(2 * i + 1) * inner : inner;
}

void criterion8() {
    bool ok = true;
    std::ostringstream detail;
    OrbifoldStructure st = build_structure(1, 1);
    const long order = 9;
    const MatSeries& m = m_matrix_cached(st, 1, order);
    for (long n = 0; n < order && ok; ++n)
        for (long e = 0; e <= n && ok; ++e) {
            Rational al = alpha_coeff(n, e);
            Rational p1 = p_coeff(n, e, false), p2 = p_coeff(n, e, true);
            Rational m11 = (n == 0 && e == 0 ? Rational(1) : Rational(0)) + al;
            // off-diagonal signs fixed by the equation itself (see ledger)
            if (m.layer(n).at(0, 0).coeff(e) != m11 || m.layer(n).at(1, 1).coeff(e) != -al ||
                m.layer(n).at(0, 1).coeff(e) != p2 - p1 || m.layer(n).at(1, 0).coeff(e) != p1 + p2) {
                ok = false;
                detail << "mismatch at depth " << n << " s^" << e;
            }
        }
    report(8, "(1,1) closed-form regression order 8", ok, detail.str());
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT")
              << " (" << seconds_since(t0) << "s total)" << std::endl;
    return failures;
}
