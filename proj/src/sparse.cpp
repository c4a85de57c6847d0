#include "crquad/sparse.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace crquad {

namespace {

using Entry = SparseRealMatrix::Entry;

// r += c * p, both sorted by column
std::vector<Entry> axpy(const std::vector<Entry>& r, const Rational& c, const std::vector<Entry>& p) {
    std::vector<Entry> out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, c * p[j].second);
            ++j;
        } else {
            Rational v = r[i].second + c * p[j].second;
            if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

void SparseRealMatrix::add_row(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    for (auto& [col, val] : entries) {
        if (col >= cols_) throw ValidationError("sparse row entry out of range");
        if (!merged.empty() && merged.back().first == col)
            merged.back().second += val;
        else
            merged.emplace_back(col, std::move(val));
    }
    std::erase_if(merged, [](const Entry& e) { return e.second.is_zero(); });
    if (!merged.empty()) rows_.push_back(std::move(merged));
}

std::vector<std::vector<Entry>> SparseRealMatrix::eliminate() const {
    // Rows are consumed sparsest first; each is reduced against the pivot
    // rows found so far until its leading column is fresh.
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rows_[a].size() < rows_[b].size();
    });

    std::map<std::size_t, std::vector<Entry>> pivots;
    for (std::size_t idx : order) {
        std::vector<Entry> row = rows_[idx];
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) break;
            row = axpy(row, -row.front().second, it->second);
        }
        if (row.empty()) continue;
        Rational inv = row.front().second.inverse();
        for (auto& [col, val] : row) val = val * inv;
        std::size_t lead = row.front().first;
        pivots.emplace(lead, std::move(row));
    }

    std::vector<std::vector<Entry>> out;
    out.reserve(pivots.size());
    for (auto& [lead, row] : pivots) out.push_back(std::move(row));
    return out;
}

std::size_t SparseRealMatrix::rank() const { return eliminate().size(); }

SparseRealMatrix::Kernel SparseRealMatrix::kernel() const {
    auto pivots = eliminate();
    std::vector<bool> is_pivot(cols_, false);
    for (const auto& row : pivots) is_pivot[row.front().first] = true;

    Kernel result;
    result.dimension = cols_ - pivots.size();
    result.basis.reserve(result.dimension);
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(cols_, Rational(0));
        x[f] = Rational(1);
        // pivots are sorted by leading column; substitute bottom-up
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            const auto& row = *it;
            Rational acc(0);
            for (std::size_t k = 1; k < row.size(); ++k)
                if (!x[row[k].first].is_zero()) acc += row[k].second * x[row[k].first];
            x[row.front().first] = -acc;
        }
        result.basis.push_back(std::move(x));
    }
    return result;
}

}  // namespace crquad
