#pragma once

#include "crquad/matrix.hpp"
#include "crquad/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace crquad {

// Sparse row-major matrix over the rationals. The jet identity systems are
// large (thousands of columns) but each equation touches a handful of
// unknowns, so dense elimination is not an option there.
class SparseRealMatrix {
public:
    using Entry = std::pair<std::size_t, Rational>;

    explicit SparseRealMatrix(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rows() const { return rows_.size(); }

    // Duplicate column indices are accumulated; zero entries and all-zero
    // rows are dropped.
    void add_row(std::vector<Entry> entries);

    std::size_t rank() const;

    struct Kernel {
        std::size_t dimension = 0;
        std::vector<std::vector<Rational>> basis;  // dense, each of length cols()
    };

    // Right kernel with a deterministic reduced basis (independent of row
    // insertion order for a fixed row set).
    Kernel kernel() const;

private:
    std::vector<std::vector<Entry>> eliminate() const;

    std::size_t cols_;
    std::vector<std::vector<Entry>> rows_;
};

}  // namespace crquad
