#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbigw/correlators.hpp"
#include "orbigw/golden.hpp"

namespace orbigw {

enum class CellStatus { Ok, Trunc };

struct TableCell {
    CellStatus status = CellStatus::Ok;
    std::optional<long> d;  // empty: vanishes by degree-dimension
    Rational value;
};

struct TableSpec {
    std::string id;
    int m1 = 0, m2 = 0, a = 0;
    long i = 0;
    long k_max = 6, g_max = 3;
    std::optional<long> order_cap;  // caps the series depth; exceeding cells are TRUNC
    int jobs = 0;                   // 0: hardware default
};

struct ComputedTable {
    TableSpec spec;
    Rational dk, dg, dc;  // degree rule d = dk*k + dg*g + dc
    std::vector<std::vector<TableCell>> cells;  // [k-1][g]
    bool truncated = false;

    const TableCell& cell(long k, long g) const {
        return cells[static_cast<size_t>(k - 1)][static_cast<size_t>(g)];
    }
};

/// Fills the (k, g) grid: the k = 1 column through the one-point operator
/// formula, k >= 2 through the R-series route. Cells beyond the order cap are
/// marked TRUNC; everything else is exact.
ComputedTable compute_table(const TableSpec& spec);

TableSpec spec_from_golden(const GoldenTable& t, long k_max, long g_max);

std::string render_csv(const ComputedTable& t);
std::string render_markdown(const ComputedTable& t);
std::string render_json(const ComputedTable& t);

struct GoldenComparison {
    long matched = 0;
    long truncated = 0;
    std::vector<std::string> mismatches;  // human-readable, empty means pass
};

/// Compares a computed table against golden cells inside the computed grid.
GoldenComparison compare_to_golden(const ComputedTable& t, const GoldenTable& g);

}  // namespace orbigw
