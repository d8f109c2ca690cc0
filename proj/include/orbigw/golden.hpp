#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbigw/rational.hpp"

namespace orbigw {

/// One embedded reference table: fixed insertion (a, i), cells keyed by (k, g).
/// The degree rule is the affine form d = dk*k + dg*g + dc; every nonzero cell
/// satisfies it with a nonnegative integer d (zero cells at inadmissible
/// degrees stand for forced vanishing).
struct GoldenTable {
    std::string id;
    int m1 = 0, m2 = 0, a = 0;
    long i = 0;
    Rational dk, dg, dc;
    std::map<std::pair<long, long>, Rational> cells;

    long k_max() const;
    long g_max() const;
    /// Degree of cell (k,g) per the rule; empty if not a nonnegative integer.
    std::optional<long> degree(long k, long g) const;
};

/// Parses the golden dataset file (defaults to the shipped one).
std::vector<GoldenTable> load_golden_tables(const std::string& path = std::string());

const GoldenTable* find_golden_table(const std::vector<GoldenTable>& tables, const std::string& id);

}  // namespace orbigw
