#pragma once

#include <map>
#include <optional>
#include <vector>

#include "orbigw/rational.hpp"

namespace orbigw {

/// Sparse exact linear system over Q. Rows are accumulated, then solved by
/// Gaussian elimination to row echelon form. A column's value is reported only
/// when it is pinned independently of any free column.
class SparseLinearSystem {
public:
    explicit SparseLinearSystem(long ncols) : ncols_(ncols) {}

    /// Adds the equation sum coeffs[col]*x_col = rhs (zero coefficients are dropped).
    void add_row(std::map<long, Rational> coeffs, Rational rhs);

    long ncols() const { return ncols_; }
    size_t nrows() const { return rows_.size(); }

    struct Solution {
        std::vector<std::optional<Rational>> value;  // nullopt: not uniquely pinned
    };

    /// Throws std::runtime_error on an inconsistent system.
    Solution solve() const;

private:
    struct Row {
        std::map<long, Rational> a;
        Rational rhs;
    };
    long ncols_;
    std::vector<Row> rows_;
};

}  // namespace orbigw
