#include "orbigw/table_render.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace orbigw {

namespace {

long cell_order_budget(long i, long k) {
    std::vector<std::pair<int, long>> labels;
    std::vector<long> counts;
    if (k > 2) {
        labels.push_back({0, i});
        counts.push_back(k - 2);
    }
    return two_point_order_budget(labels, counts, i, i);
}

}  // namespace

ComputedTable compute_table(const TableSpec& spec) {
    OrbifoldStructure st = build_structure(spec.m1, spec.m2);
    if (spec.a < 1 || spec.a >= st.l) throw std::domain_error("compute_table: sector out of range");

    ComputedTable out;
    out.spec = spec;
    Rational q = st.q_of(spec.a);
    out.dk = st.rho * (Rational(spec.i) + q - Rational(1));
    out.dg = Rational(-2) * st.rho;
    out.dc = Rational(2) * st.rho;
    out.cells.assign(static_cast<size_t>(spec.k_max),
                     std::vector<TableCell>(static_cast<size_t>(spec.g_max + 1)));

    auto degree_at = [&](long k, long g) {
        std::vector<std::pair<int, long>> ins(static_cast<size_t>(k), {spec.a, spec.i});
        return degree_from_dimension(st, g, ins);
    };

    // k = 1 column via the one-point operator route
    if (spec.k_max >= 1) {
        auto recs = one_point_series(st, spec.a, spec.i, spec.g_max);
        for (const auto& r : recs) {
            if (r.insertions[0].second != spec.i) continue;
            TableCell& c = out.cells[0][static_cast<size_t>(r.g)];
            c.status = CellStatus::Ok;
            c.d = r.d;
            c.value = r.value;
        }
    }

    if (spec.k_max >= 2) {
        long m_deep = spec.k_max - 2;
        long full_budget = cell_order_budget(spec.i, spec.k_max);
        long order = spec.order_cap ? std::min(*spec.order_cap, full_budget) : full_budget;
        long eps_cap = 2 * spec.g_max + m_deep;

        std::vector<std::pair<int, long>> labels;
        std::vector<long> counts;
        if (m_deep > 0) {
            labels.push_back({spec.a, spec.i});
            counts.push_back(m_deep);
        }
        RCalc rc(st, labels, counts, order, eps_cap);
        // warm the memo sequentially so the per-cell extraction is read-only;
        // under an order cap the deeper recursion levels may be unreachable,
        // which truncates only the cells that need them
        long warm_max = -1;
        try {
            for (long m = 0; m <= m_deep; ++m) {
                std::vector<long> applied;
                if (m_deep > 0) applied.push_back(m);
                rc.R(spec.a, applied);
                warm_max = m;
                if (m_deep == 0) {
                    warm_max = m_deep;
                    break;
                }
            }
        } catch (const TruncationError&) {
        }

        struct Job {
            long k, g;
        };
        std::vector<Job> jobs;
        for (long k = 2; k <= spec.k_max; ++k)
            for (long g = 0; g <= spec.g_max; ++g) jobs.push_back({k, g});

        auto run_cell = [&](const Job& jb) {
            TableCell c;
            c.d = degree_at(jb.k, jb.g);
            long need = cell_order_budget(spec.i, jb.k);
            if (jb.k - 2 > warm_max || (spec.order_cap && need > *spec.order_cap)) {
                c.status = CellStatus::Trunc;
                return c;
            }
            try {
                long m = jb.k - 2;
                std::vector<long> sub_counts;
                if (m_deep > 0) sub_counts.push_back(m);
                Rational cell =
                    two_point_trace_cell(rc, spec.a, spec.a, spec.i, spec.i, 2 * jb.g + m, &sub_counts);
                c.value = cell / q_norm(st, spec.a, spec.i).pow(jb.k);
                c.status = CellStatus::Ok;
            } catch (const TruncationError&) {
                c.status = CellStatus::Trunc;
            }
            return c;
        };

        unsigned hw = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
        std::vector<TableCell> results(jobs.size());
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                size_t idx = next.fetch_add(1);
                if (idx >= jobs.size()) break;
                results[idx] = run_cell(jobs[idx]);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < hw && t < jobs.size(); ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        for (size_t idx = 0; idx < jobs.size(); ++idx) {
            out.cells[static_cast<size_t>(jobs[idx].k - 1)][static_cast<size_t>(jobs[idx].g)] = results[idx];
            if (results[idx].status == CellStatus::Trunc) out.truncated = true;
        }
    }
    return out;
}

TableSpec spec_from_golden(const GoldenTable& t, long k_max, long g_max) {
    TableSpec s;
    s.id = t.id;
    s.m1 = t.m1;
    s.m2 = t.m2;
    s.a = t.a;
    s.i = t.i;
    s.k_max = k_max;
    s.g_max = g_max;
    return s;
}

namespace {

std::string cell_text(const TableCell& c) {
    if (c.status == CellStatus::Trunc) return "TRUNC";
    return c.value.to_string();
}

}  // namespace

std::string render_csv(const ComputedTable& t) {
    std::ostringstream os;
    os << "table,k,g,d,value\n";
    for (long k = 1; k <= t.spec.k_max; ++k)
        for (long g = 0; g <= t.spec.g_max; ++g) {
            const TableCell& c = t.cell(k, g);
            os << t.spec.id << "," << k << "," << g << ",";
            if (c.d)
                os << *c.d;
            else
                os << "-";
            os << "," << cell_text(c) << "\n";
        }
    return os.str();
}

std::string render_markdown(const ComputedTable& t) {
    std::ostringstream os;
    os << "| k \\ g |";
    for (long g = 0; g <= t.spec.g_max; ++g) os << " " << g << " |";
    os << "\n|---|";
    for (long g = 0; g <= t.spec.g_max; ++g) os << "---|";
    os << "\n";
    for (long k = 1; k <= t.spec.k_max; ++k) {
        os << "| " << k << " |";
        for (long g = 0; g <= t.spec.g_max; ++g) os << " " << cell_text(t.cell(k, g)) << " |";
        os << "\n";
    }
    return os.str();
}

std::string render_json(const ComputedTable& t) {
    nlohmann::ordered_json j;
    j["table"] = t.spec.id;
    j["m1"] = t.spec.m1;
    j["m2"] = t.spec.m2;
    j["sector"] = t.spec.a;
    j["level"] = t.spec.i;
    j["degree_rule"] = {{"dk", t.dk.to_string()}, {"dg", t.dg.to_string()}, {"dc", t.dc.to_string()}};
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (long k = 1; k <= t.spec.k_max; ++k)
        for (long g = 0; g <= t.spec.g_max; ++g) {
            const TableCell& c = t.cell(k, g);
            nlohmann::ordered_json jc;
            jc["k"] = k;
            jc["g"] = g;
            if (c.d)
                jc["d"] = *c.d;
            else
                jc["d"] = nullptr;
            if (c.status == CellStatus::Trunc) {
                jc["status"] = "trunc";
            } else {
                jc["status"] = "ok";
                jc["num"] = c.value.num().get_str();
                jc["den"] = c.value.den().get_str();
            }
            cells.push_back(std::move(jc));
        }
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

GoldenComparison compare_to_golden(const ComputedTable& t, const GoldenTable& g) {
    GoldenComparison cmp;
    for (long k = 1; k <= t.spec.k_max; ++k)
        for (long gg = 0; gg <= t.spec.g_max; ++gg) {
            const TableCell& c = t.cell(k, gg);
            auto it = g.cells.find({k, gg});
            Rational expected = it != g.cells.end() ? it->second : Rational(0);
            bool blank = it == g.cells.end();
            // blank rows exist only where the degree rule forces vanishing
            if (blank && g.degree(k, gg)) continue;
            if (c.status == CellStatus::Trunc) {
                ++cmp.truncated;
                continue;
            }
            if (c.value == expected) {
                ++cmp.matched;
            } else {
                cmp.mismatches.push_back(t.spec.id + " k=" + std::to_string(k) + " g=" + std::to_string(gg) +
                                         ": got " + c.value.to_string() + ", expected " + expected.to_string());
            }
        }
    return cmp;
}

}  // namespace orbigw
