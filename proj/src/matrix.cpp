#include "crquad/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace crquad {

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const GaussianRational& x) { return x.is_zero(); });
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch in +");
    ExactMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch in -");
    ExactMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix shape mismatch in *");
    ExactMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

ExactMatrix ExactMatrix::scaled(const GaussianRational& c) const {
    ExactMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * c;
    return r;
}

ExactMatrix ExactMatrix::conj_transpose() const {
    ExactMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j).conj();
    return r;
}

GRVector ExactMatrix::apply(const GRVector& v) const {
    if (v.size() != cols_) throw ValidationError("vector length mismatch in apply");
    GRVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

ExactMatrix ExactMatrix::vstack(const std::vector<ExactMatrix>& blocks) {
    if (blocks.empty()) return {};
    std::size_t cols = blocks[0].cols();
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw ValidationError("vstack: column count mismatch");
        rows += b.rows();
    }
    ExactMatrix r(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                r.at(off + i, j) = b.at(i, j);
        off += b.rows();
    }
    return r;
}

// One-step Bareiss: entries stay in the subring generated by the inputs, every
// division is exact. Returns the pivot count; if det != nullptr the matrix must
// be square and *det receives the determinant.
namespace {
std::size_t bareiss(ExactMatrix work, GaussianRational* det) {
    const std::size_t rows = work.rows(), cols = work.cols();
    GaussianRational prev(1);
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!work.at(i, c).is_zero()) { piv = i; break; }
        if (piv == rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(work.at(piv, j), work.at(r, j));
            sign = -sign;
        }
        const GaussianRational p = work.at(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const GaussianRational mi = work.at(i, c);
            for (std::size_t j = 0; j < cols; ++j)
                work.at(i, j) = (work.at(i, j) * p - mi * work.at(r, j)) / prev;
        }
        prev = p;
        ++r;
    }
    if (det) {
        if (r < rows) *det = GaussianRational(0);
        else *det = sign < 0 ? -prev : prev;
    }
    return r;
}
}  // namespace

std::size_t ExactMatrix::rank() const {
    return bareiss(*this, nullptr);
}

GaussianRational ExactMatrix::determinant() const {
    if (rows_ != cols_) throw ValidationError("determinant of non-square matrix");
    if (rows_ == 0) return GaussianRational(1);
    GaussianRational det;
    bareiss(*this, &det);
    return det;
}

bool ExactMatrix::is_invertible() const {
    return rows_ == cols_ && rank() == rows_;
}

namespace {

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(std::vector<GRVector>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = m.size();
        for (std::size_t i = r; i < m.size(); ++i)
            if (!m[i][c].is_zero()) { piv = i; break; }
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        const GaussianRational inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const GaussianRational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

KernelBasis solve_homogeneous(const ExactMatrix& m) {
    const std::size_t cols = m.cols();
    std::vector<GRVector> rows(m.rows(), GRVector(cols));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] = m.at(i, j);

    std::vector<std::size_t> pivots = rref(rows, cols);

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<GRVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        GRVector v(cols);
        v[f] = GaussianRational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -rows[r][f];
        basis.push_back(std::move(v));
    }
    return canonicalize_basis(std::move(basis), cols);
}

// Unique representative of a subspace: its basis vectors, as rows, in RREF.
KernelBasis canonicalize_basis(std::vector<GRVector> basis, std::size_t cols) {
    rref(basis, cols);
    while (!basis.empty()) {
        bool zero = std::all_of(basis.back().begin(), basis.back().end(),
                                [](const GaussianRational& x) { return x.is_zero(); });
        if (!zero) break;
        basis.pop_back();
    }
    KernelBasis out;
    out.basis = std::move(basis);
    out.dimension = out.basis.size();
    return out;
}

HermitianMatrix::HermitianMatrix(ExactMatrix m, std::size_t which) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw ValidationError("matrix " + std::to_string(which + 1) + ": not square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = i; j < m_.cols(); ++j)
            if (m_.at(i, j) != m_.at(j, i).conj())
                throw ValidationError(
                    "matrix " + std::to_string(which + 1) + ", entry (" + std::to_string(i + 1) +
                    "," + std::to_string(j + 1) + "): not Hermitian (conjugate-transpose mismatch)");
}

GaussianRational HermitianMatrix::sesqui_form(const GRVector& x, const GRVector& y) const {
    if (x.size() != size() || y.size() != size())
        throw ValidationError("sesqui_form: vector length mismatch");
    GaussianRational acc;
    for (std::size_t i = 0; i < size(); ++i) {
        if (x[i].is_zero()) continue;
        const GaussianRational xc = x[i].conj();
        for (std::size_t j = 0; j < size(); ++j)
            if (!at(i, j).is_zero() && !y[j].is_zero()) acc += xc * at(i, j) * y[j];
    }
    return acc;
}

Rational HermitianMatrix::quadratic_form(const GRVector& z) const {
    GaussianRational v = sesqui_form(z, z);
    if (!v.is_real())
        throw ValidationError("internal: Hermitian quadratic form produced a non-real value");
    return v.re();
}

}  // namespace crquad
