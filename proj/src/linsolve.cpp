#include "orbigw/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbigw {

void SparseLinearSystem::add_row(std::map<long, Rational> coeffs, Rational rhs) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (it->second.is_zero())
            it = coeffs.erase(it);
        else
            ++it;
    }
    if (coeffs.empty() && rhs.is_zero()) return;
    rows_.push_back(Row{std::move(coeffs), std::move(rhs)});
}

SparseLinearSystem::Solution SparseLinearSystem::solve() const {
    std::vector<Row> work(rows_);
    std::vector<long> pivot_col;           // per echelon row
    std::vector<Row> echelon;

    // Eliminate columns in increasing order, preferring the sparsest candidate
    // row; deterministic and adequate for the moderate sizes used here.
    std::vector<bool> used(work.size(), false);
    for (long col = 0; col < ncols_; ++col) {
        size_t best = work.size();
        for (size_t r = 0; r < work.size(); ++r) {
            if (used[r]) continue;
            auto it = work[r].a.begin();
            if (it == work[r].a.end() || it->first != col) continue;
            if (best == work.size() || work[r].a.size() < work[best].a.size()) best = r;
        }
        if (best == work.size()) continue;
        used[best] = true;
        Row piv = work[best];
        Rational inv = piv.a.begin()->second.inverse();
        for (auto& kv : piv.a) kv.second *= inv;
        piv.rhs *= inv;
        for (size_t r = 0; r < work.size(); ++r) {
            if (used[r]) continue;
            auto it = work[r].a.find(col);
            if (it == work[r].a.end()) continue;
            Rational f = it->second;
            work[r].a.erase(it);
            for (const auto& kv : piv.a) {
                if (kv.first == col) continue;
                auto jt = work[r].a.find(kv.first);
                if (jt == work[r].a.end()) {
                    Rational v = -(f * kv.second);
                    if (!v.is_zero()) work[r].a.emplace(kv.first, std::move(v));
                } else {
                    jt->second -= f * kv.second;
                    if (jt->second.is_zero()) work[r].a.erase(jt);
                }
            }
            work[r].rhs -= f * piv.rhs;
        }
        pivot_col.push_back(col);
        echelon.push_back(std::move(piv));
    }

    for (size_t r = 0; r < work.size(); ++r)
        if (!used[r] && work[r].a.empty() && !work[r].rhs.is_zero())
            throw std::runtime_error("SparseLinearSystem: inconsistent system");

    // Back-eliminate to reduced row echelon form, so each pivot row carries
    // only its pivot plus free columns. A variable is pinned exactly when its
    // pivot row contains no free column.
    std::vector<long> col_pivot(static_cast<size_t>(ncols_), -1);
    for (size_t k = 0; k < echelon.size(); ++k) col_pivot[static_cast<size_t>(pivot_col[k])] = static_cast<long>(k);
    for (size_t k = echelon.size(); k-- > 0;) {
        Row& row = echelon[k];
        std::vector<std::pair<long, Rational>> to_elim;
        for (const auto& kv : row.a)
            if (kv.first != pivot_col[k] && col_pivot[static_cast<size_t>(kv.first)] >= 0)
                to_elim.emplace_back(kv.first, kv.second);
        for (const auto& [c, f] : to_elim) {
            const Row& prow = echelon[static_cast<size_t>(col_pivot[static_cast<size_t>(c)])];
            row.a.erase(c);
            for (const auto& kv : prow.a) {
                if (kv.first == c) continue;
                auto jt = row.a.find(kv.first);
                if (jt == row.a.end()) {
                    Rational v = -(f * kv.second);
                    if (!v.is_zero()) row.a.emplace(kv.first, std::move(v));
                } else {
                    jt->second -= f * kv.second;
                    if (jt->second.is_zero()) row.a.erase(jt);
                }
            }
            row.rhs -= f * prow.rhs;
        }
    }

    Solution sol;
    sol.value.assign(static_cast<size_t>(ncols_), std::nullopt);
    for (size_t k = 0; k < echelon.size(); ++k)
        if (echelon[k].a.size() == 1) sol.value[static_cast<size_t>(pivot_col[k])] = echelon[k].rhs;
    return sol;
}

}  // namespace orbigw
