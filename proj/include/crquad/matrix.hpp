#pragma once

#include "crquad/rational.hpp"

#include <cstddef>
#include <vector>

namespace crquad {

using GRVector = std::vector<GaussianRational>;

// Dense matrix over Q(i).
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussianRational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;

    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix scaled(const GaussianRational& c) const;
    ExactMatrix conj_transpose() const;

    GRVector apply(const GRVector& v) const;

    // Stacks blocks vertically; all blocks must share the column count.
    static ExactMatrix vstack(const std::vector<ExactMatrix>& blocks);

    // Rank by fraction-free (Bareiss) elimination with full pivot search.
    std::size_t rank() const;

    // Determinant by Bareiss elimination. Square matrices only.
    GaussianRational determinant() const;

    bool is_invertible() const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> data_;
};

// Basis of the solution space of M x = 0, in reduced canonical form
// (unique for a given subspace: RREF of the basis as row vectors).
struct KernelBasis {
    std::size_t dimension = 0;
    std::vector<GRVector> basis;  // each of length cols(M)
};

KernelBasis solve_homogeneous(const ExactMatrix& m);

// Reduces a spanning set to the unique RREF basis of its span.
KernelBasis canonicalize_basis(std::vector<GRVector> basis, std::size_t cols);

// Hermitian matrix over Q(i); validated on construction.
class HermitianMatrix {
public:
    // Throws ValidationError naming the offending entry if m is not Hermitian.
    explicit HermitianMatrix(ExactMatrix m, std::size_t which = 0);

    std::size_t size() const { return m_.rows(); }
    const ExactMatrix& mat() const { return m_; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }

    // t(conj x) A y
    GaussianRational sesqui_form(const GRVector& x, const GRVector& y) const;
    // t(conj z) A z; always real, returned as such.
    Rational quadratic_form(const GRVector& z) const;

    friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
        return a.m_ == b.m_;
    }

private:
    ExactMatrix m_;
};

}  // namespace crquad
