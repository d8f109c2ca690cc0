// Command-line front end: exact Gromov-Witten invariants of the orbifold
// projective line P^1_{m1,m2}, reference tables, and verification suites.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "orbigw/correlators.hpp"
#include "orbigw/golden.hpp"
#include "orbigw/table_render.hpp"

using namespace orbigw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBudget = 2;
constexpr int kExitBadArgs = 3;

std::vector<std::pair<int, long>> parse_insertions(const std::string& text) {
    std::vector<std::pair<int, long>> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t colon = item.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--insertions", "expected a:i or a:i*count");
        size_t star = item.find('*', colon);
        int a = std::stoi(item.substr(0, colon));
        long i = std::stol(item.substr(colon + 1, star == std::string::npos ? std::string::npos : star - colon - 1));
        long count = star == std::string::npos ? 1 : std::stol(item.substr(star + 1));
        if (count < 1) throw CLI::ValidationError("--insertions", "count must be positive");
        for (long c = 0; c < count; ++c) out.push_back({a, i});
    }
    if (out.empty()) throw CLI::ValidationError("--insertions", "no insertions given");
    return out;
}

std::string insertions_text(const std::vector<std::pair<int, long>>& ins) {
    std::string s;
    for (const auto& [a, i] : ins) {
        if (!s.empty()) s += " ";
        s += "tau_" + std::to_string(i) + "(phi_" + std::to_string(a) + ")";
    }
    return s;
}

struct SuiteReport {
    int failures = 0;
    int checks = 0;
    void line(const std::string& name, bool pass) {
        ++checks;
        if (!pass) ++failures;
        std::cout << (pass ? "PASS  " : "FAIL  ") << name << "\n";
    }
};

std::vector<std::pair<int, int>> default_structures() {
    return {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}};
}

void run_tde_suite(SuiteReport& rep, int m1, int m2, long order) {
    OrbifoldStructure st = build_structure(m1, m2);
    for (int a = 1; a < st.l; ++a) {
        TdeReport r = verify_tde(st, m_matrix_cached(st, a, order));
        rep.line("tde residual (" + std::to_string(m1) + "," + std::to_string(m2) + ") a=" + std::to_string(a) +
                     " order=" + std::to_string(order) + " vanishes to " + std::to_string(r.vanish_layers),
                 r.pass);
    }
}

void run_symmetry_suite(SuiteReport& rep, int m1, int m2, long order) {
    int l = m1 + m2;
    for (int a = 1; a < l; ++a)
        rep.line("transpose symmetry (" + std::to_string(m2) + "," + std::to_string(m1) + ") a=" +
                     std::to_string(a),
                 check_transpose_symmetry(m1, m2, a, order));
    if (m1 == 1 && m2 == 1) {
        rep.line("reflection symmetry (1,1) a=1", check_reflection_symmetry(1, 1, 1, order));
    } else {
        rep.line("reflection symmetry (" + std::to_string(m2) + "," + std::to_string(m1) + ") a=" +
                     std::to_string(m2) + " (integer q)",
                 check_reflection_symmetry(m1, m2, m2, order));
    }
}

void run_algebra_suite(SuiteReport& rep, int m1, int m2, long order) {
    OrbifoldStructure st = build_structure(m1, m2);
    std::string tag = " (" + std::to_string(m1) + "," + std::to_string(m2) + ")";
    for (int a = 1; a < st.l; ++a) {
        std::string sa = " a=" + std::to_string(a);
        rep.line("trace identity" + tag + sa, check_trace(st, a, order));
        rep.line("determinant vanishes" + tag + sa, check_det(st, a, order));
        rep.line("power relation" + tag + sa, check_power_relation(st, a, order));
        rep.line("polynomial coefficients" + tag + sa, check_polynomiality(st, a, order));
    }
    rep.line("annihilation products" + tag, check_annihilation(st, order));
}

void run_routes_suite(SuiteReport& rep, int m1, int m2, long order) {
    OrbifoldStructure st = build_structure(m1, m2);
    std::string tag = " (" + std::to_string(m1) + "," + std::to_string(m2) + ")";
    const std::vector<Rational> samples = {Rational(3, 5), Rational(-7, 3)};
    for (int a = 1; a < st.l; ++a) {
        std::string sa = " a=" + std::to_string(a);
        const MatSeries& m = m_matrix_cached(st, a, order);
        bool gamma_ok = true;
        for (int i = 1; i <= st.l && gamma_ok; ++i)
            for (int j = 1; j <= st.l && gamma_ok; ++j)
                gamma_ok = PuiseuxSeries::equal_on_common_window(m_entry(st, a, i, j, order),
                                                                 m_entry_via_gamma(st, a, i, j, order), order);
        rep.line("gamma-ratio route" + tag + sa, gamma_ok);
        bool lin_ok = true;
        for (const Rational& s0 : samples)
            lin_ok = lin_ok && MatSeries::equal_on_common_window(specialize_s(m, s0),
                                                                 solve_tde_linear(st, a, order, s0), order);
        rep.line("linear-solve oracle" + tag + sa, lin_ok);
        if (m1 == m2)
            rep.line("equal-weight route" + tag + sa,
                     MatSeries::equal_on_common_window(m, m_matrix_equal_weights(st, a, order), order));
    }
    for (int a = 1; a < st.l; ++a) {
        auto op = one_point_series(st, a, 2, 3);
        auto cl = one_point_closed(st, a, 2, 3);
        bool ok = op.size() == cl.size();
        for (size_t t = 0; ok && t < op.size(); ++t) ok = op[t].value == cl[t].value;
        rep.line("one-point operator vs closed" + tag + " a=" + std::to_string(a), ok);
    }
    for (int a = 1; a < st.l; ++a) {
        bool ok = true;
        for (long i = 0; i <= 1 && ok; ++i)
            for (long g = 0; g <= 2 && ok; ++g) {
                std::vector<std::pair<int, long>> ins(2, {a, i});
                ok = extract_invariant(st, ins, g).value == k2_direct_cell(st, a, a, i, i, g);
            }
        rep.line("two-point trace vs direct formula" + tag + " a=" + std::to_string(a), ok);
    }
}

void run_golden_suite(SuiteReport& rep, const std::string& table_id, long kmax, long gmax,
                      std::optional<long> order_cap, int jobs, bool& saw_trunc) {
    auto tables = load_golden_tables();
    for (const auto& g : tables) {
        if (!table_id.empty() && table_id != "all" && g.id != table_id) continue;
        TableSpec spec = spec_from_golden(g, std::min(kmax, g.k_max()), std::min(gmax, g.g_max()));
        spec.order_cap = order_cap;
        spec.jobs = jobs;
        ComputedTable t = compute_table(spec);
        GoldenComparison cmp = compare_to_golden(t, g);
        if (cmp.truncated) saw_trunc = true;
        rep.line("golden " + g.id + " (" + std::to_string(cmp.matched) + " cells, " +
                     std::to_string(cmp.truncated) + " trunc)",
                 cmp.mismatches.empty());
        for (const auto& m : cmp.mismatches) std::cout << "      " << m << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Gromov-Witten invariants of the orbifold projective line"};
    app.require_subcommand(1);

    // invariant
    auto* inv = app.add_subcommand("invariant", "Compute one invariant");
    int inv_m1 = 2, inv_m2 = 1;
    long inv_g = 0;
    std::string inv_ins;
    inv->add_option("--m1", inv_m1)->required();
    inv->add_option("--m2", inv_m2)->required();
    inv->add_option("--insertions", inv_ins, "e.g. 1:1*5 or 1:0*2,2:1")->required();
    inv->add_option("--genus,-g", inv_g)->required();

    // table
    auto* tab = app.add_subcommand("table", "Compute a (k, g) table of invariants");
    std::string tab_id, tab_format = "csv", tab_out;
    int tab_m1 = 0, tab_m2 = 0, tab_a = 0, tab_jobs = 0;
    long tab_i = 0, tab_kmax = 6, tab_gmax = 3, tab_order = 0;
    tab->add_option("--table-id", tab_id, "built-in table id, e.g. P21-tau11");
    tab->add_option("--m1", tab_m1);
    tab->add_option("--m2", tab_m2);
    tab->add_option("--sector", tab_a);
    tab->add_option("--level", tab_i);
    tab->add_option("--kmax", tab_kmax);
    tab->add_option("--gmax", tab_gmax);
    tab->add_option("--order", tab_order, "series depth cap (cells beyond it are TRUNC)");
    tab->add_option("--format", tab_format)->check(CLI::IsMember({"csv", "json", "md"}));
    tab->add_option("--out", tab_out, "output path (default stdout)");
    tab->add_option("--jobs", tab_jobs, "worker threads (0 = hardware)");

    // verify
    auto* ver = app.add_subcommand("verify", "Run verification suites");
    std::string ver_suite = "all", ver_table = "all";
    int ver_m1 = 0, ver_m2 = 0, ver_jobs = 0;
    long ver_order = 10, ver_kmax = 6, ver_gmax = 3, ver_ocap = 0;
    ver->add_option("--suite", ver_suite)->check(CLI::IsMember({"tde", "symmetry", "algebra", "routes", "golden", "all"}));
    ver->add_option("--m1", ver_m1);
    ver->add_option("--m2", ver_m2);
    ver->add_option("--order", ver_order);
    ver->add_option("--table-id", ver_table);
    ver->add_option("--kmax", ver_kmax);
    ver->add_option("--gmax", ver_gmax);
    ver->add_option("--order-cap", ver_ocap, "golden-suite series depth cap");
    ver->add_option("--jobs", ver_jobs);

    // onepoint
    auto* one = app.add_subcommand("onepoint", "One-point invariants");
    int one_m1 = 0, one_m2 = 0, one_a = 1;
    long one_imax = 2, one_gmax = 3;
    std::string one_method = "operator";
    one->add_option("--m1", one_m1)->required();
    one->add_option("--m2", one_m2)->required();
    one->add_option("--sector", one_a)->required();
    one->add_option("--imax", one_imax);
    one->add_option("--gmax", one_gmax);
    one->add_option("--method", one_method)->check(CLI::IsMember({"operator", "closed", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        if (*inv) {
            auto insertions = parse_insertions(inv_ins);
            OrbifoldStructure st = build_structure(inv_m1, inv_m2);
            for (const auto& [a, i] : insertions)
                if (a < 1 || a >= st.l) {
                    std::cerr << "sector out of range 1.." << st.l - 1 << "\n";
                    return kExitBadArgs;
                }
            InvariantRecord rec;
            if (insertions.size() == 1) {
                auto [a, i] = insertions[0];
                auto recs = one_point_series(st, a, i, inv_g);
                for (auto& r : recs)
                    if (r.insertions[0].second == i && r.g == inv_g) rec = r;
            } else {
                rec = extract_invariant(st, insertions, inv_g);
            }
            std::cout << "< " << insertions_text(insertions) << " >  m1=" << inv_m1 << " m2=" << inv_m2
                      << " g=" << inv_g << "\n";
            Rational sum_iq(0);
            for (const auto& [a, i] : insertions) sum_iq += Rational(i) + st.q_of(a);
            std::cout << "degree rule: d = rho*(sum(i)+sum(q)+2-k-2g) = " << st.rho.to_string() << "*("
                      << sum_iq.to_string() << "+2-" << insertions.size() << "-" << 2 * inv_g << ")\n";
            if (rec.vanishes_by_dimension()) {
                std::cout << "vanishes (degree-dimension)\n";
            } else {
                std::cout << "d = " << *rec.d << "\n";
                std::cout << "value = " << rec.value.to_string() << "\n";
            }
            return kExitOk;
        }

        if (*tab) {
            TableSpec spec;
            if (!tab_id.empty()) {
                auto tables = load_golden_tables();
                const GoldenTable* g = find_golden_table(tables, tab_id);
                if (!g) {
                    std::cerr << "unknown table id " << tab_id << "\n";
                    return kExitBadArgs;
                }
                spec = spec_from_golden(*g, tab_kmax, tab_gmax);
            } else {
                if (tab_m1 < 1 || tab_m2 < 1 || tab_a < 1) {
                    std::cerr << "need --table-id or --m1/--m2/--sector/--level\n";
                    return kExitBadArgs;
                }
                spec.id = "P" + std::to_string(tab_m1) + std::to_string(tab_m2) + "-tau" + std::to_string(tab_a) +
                          std::to_string(tab_i);
                spec.m1 = tab_m1;
                spec.m2 = tab_m2;
                spec.a = tab_a;
                spec.i = tab_i;
                spec.k_max = tab_kmax;
                spec.g_max = tab_gmax;
            }
            if (tab_order > 0) spec.order_cap = tab_order;
            spec.jobs = tab_jobs;
            ComputedTable t = compute_table(spec);
            std::string text = tab_format == "csv"    ? render_csv(t)
                               : tab_format == "json" ? render_json(t)
                                                      : render_markdown(t);
            if (tab_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(tab_out);
                out << text;
            }
            return t.truncated ? kExitBudget : kExitOk;
        }

        if (*ver) {
            SuiteReport rep;
            bool saw_trunc = false;
            std::vector<std::pair<int, int>> structures =
                ver_m1 > 0 && ver_m2 > 0 ? std::vector<std::pair<int, int>>{{ver_m1, ver_m2}}
                                         : default_structures();
            for (auto [m1, m2] : structures) {
                if (ver_suite == "tde" || ver_suite == "all") run_tde_suite(rep, m1, m2, ver_order);
                if (ver_suite == "symmetry" || ver_suite == "all") run_symmetry_suite(rep, m1, m2, ver_order);
                if (ver_suite == "algebra" || ver_suite == "all") run_algebra_suite(rep, m1, m2, ver_order);
                if (ver_suite == "routes" || ver_suite == "all")
                    run_routes_suite(rep, m1, m2, std::min<long>(ver_order, 8));
            }
            if (ver_suite == "golden" || ver_suite == "all")
                run_golden_suite(rep, ver_table, ver_kmax, ver_gmax,
                                 ver_ocap > 0 ? std::optional<long>(ver_ocap) : std::nullopt, ver_jobs,
                                 saw_trunc);
            std::cout << rep.checks - rep.failures << "/" << rep.checks << " checks passed\n";
            if (rep.failures) return kExitVerifyFail;
            return saw_trunc ? kExitBudget : kExitOk;
        }

        if (*one) {
            OrbifoldStructure st = build_structure(one_m1, one_m2);
            if (one_a < 1 || one_a >= st.l) {
                std::cerr << "sector out of range\n";
                return kExitBadArgs;
            }
            auto print = [&](const std::vector<InvariantRecord>& recs) {
                for (const auto& r : recs) {
                    std::cout << "i=" << r.insertions[0].second << " g=" << r.g << " d=";
                    if (r.d)
                        std::cout << *r.d;
                    else
                        std::cout << "-";
                    std::cout << " value=" << r.value.to_string();
                    if (!r.d) std::cout << "  (vanishes: degree-dimension)";
                    std::cout << "\n";
                }
            };
            if (one_method == "operator") {
                print(one_point_series(st, one_a, one_imax, one_gmax));
            } else if (one_method == "closed") {
                print(one_point_closed(st, one_a, one_imax, one_gmax));
            } else {
                auto op = one_point_series(st, one_a, one_imax, one_gmax);
                auto cl = one_point_closed(st, one_a, one_imax, one_gmax);
                bool ok = op.size() == cl.size();
                for (size_t t = 0; ok && t < op.size(); ++t) ok = op[t].value == cl[t].value;
                print(op);
                if (!ok) {
                    std::cerr << "operator and closed forms disagree\n";
                    return kExitVerifyFail;
                }
                std::cout << "operator and closed forms agree\n";
            }
            return kExitOk;
        }
    } catch (const TruncationError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    return kExitOk;
}
