#include "orbigw/golden.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace orbigw {

long GoldenTable::k_max() const {
    long k = 0;
    for (const auto& [kg, v] : cells) k = std::max(k, kg.first);
    return k;
}

long GoldenTable::g_max() const {
    long g = 0;
    for (const auto& [kg, v] : cells) g = std::max(g, kg.second);
    return g;
}

std::optional<long> GoldenTable::degree(long k, long g) const {
    Rational d = dk * Rational(k) + dg * Rational(g) + dc;
    if (!d.is_integer() || d.sign() < 0) return std::nullopt;
    return d.to_long();
}

std::vector<GoldenTable> load_golden_tables(const std::string& path) {
    std::string file = path.empty() ? std::string(ORBIGW_GOLDEN_FILE) : path;
    std::ifstream in(file);
    if (!in) throw std::runtime_error("golden tables: cannot open " + file);

    std::vector<GoldenTable> tables;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "table") {
            GoldenTable t;
            std::string dk, dg, dc;
            ss >> t.id >> t.m1 >> t.m2 >> t.a >> t.i >> dk >> dg >> dc;
            if (!ss) throw std::runtime_error("golden tables: bad table header at line " + std::to_string(lineno));
            t.dk = Rational::from_string(dk);
            t.dg = Rational::from_string(dg);
            t.dc = Rational::from_string(dc);
            tables.push_back(std::move(t));
        } else if (kind == "cell") {
            if (tables.empty()) throw std::runtime_error("golden tables: cell before table header");
            long k = 0, g = 0;
            std::string v;
            ss >> k >> g >> v;
            if (!ss) throw std::runtime_error("golden tables: bad cell at line " + std::to_string(lineno));
            Rational value = Rational::from_string(v);
            if (!value.is_zero() && !tables.back().degree(k, g))
                throw std::runtime_error("golden tables: nonzero cell at inadmissible degree, line " +
                                         std::to_string(lineno));
            tables.back().cells[{k, g}] = std::move(value);
        } else {
            throw std::runtime_error("golden tables: unknown record '" + kind + "' at line " +
                                     std::to_string(lineno));
        }
    }
    if (tables.empty()) throw std::runtime_error("golden tables: empty dataset " + file);
    return tables;
}

const GoldenTable* find_golden_table(const std::vector<GoldenTable>& tables, const std::string& id) {
    for (const auto& t : tables)
        if (t.id == id) return &t;
    return nullptr;
}

}  // namespace orbigw
