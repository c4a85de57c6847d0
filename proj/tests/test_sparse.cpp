#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "crquad/sparse.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>

using namespace crquad;

namespace {

// dense rational matrix alongside the sparse one, for cross-checking
struct Pair {
    SparseRealMatrix sparse;
    ExactMatrix dense;
};

Pair rand_pair(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int density_pct) {
    Pair p{SparseRealMatrix(cols), ExactMatrix(rows, cols)};
    std::uniform_int_distribution<int> pct(0, 99);
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<SparseRealMatrix::Entry> row;
        for (std::size_t j = 0; j < cols; ++j) {
            if (pct(rng) >= density_pct) continue;
            Rational v = testsup::rand_rational(rng, 3, 2);
            p.dense.at(i, j) = GaussianRational(v);
            row.emplace_back(j, v);
        }
        p.sparse.add_row(std::move(row));
    }
    return p;
}

}  // namespace

TEST_CASE("row normalization") {
    SparseRealMatrix m(4);
    m.add_row({{2, Rational(1)}, {0, Rational(1, 2)}, {2, Rational(-1)}});  // duplicate cancels
    m.add_row({{1, Rational(3)}, {1, Rational(-3)}});                       // vanishes entirely
    CHECK(m.rows() == 1);
    CHECK(m.rank() == 1);
    CHECK(m.kernel().dimension == 3);
    CHECK_THROWS_AS(m.add_row({{4, Rational(1)}}), ValidationError);
}

TEST_CASE("hand-sized kernels") {
    SparseRealMatrix m(3);
    m.add_row({{0, Rational(1)}, {1, Rational(-1)}});
    m.add_row({{1, Rational(1)}, {2, Rational(-1)}});
    auto k = m.kernel();
    REQUIRE(k.dimension == 1);
    CHECK(k.basis[0] == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});

    SparseRealMatrix z(2);
    auto kz = z.kernel();
    CHECK(kz.dimension == 2);
}

TEST_CASE("matches dense elimination") {
    std::mt19937_64 rng(2027);
    for (int iter = 0; iter < 120; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(1, 7);
        std::size_t r = dim(rng), c = dim(rng);
        Pair p = rand_pair(rng, r, c, 45);
        CHECK(p.sparse.rank() == p.dense.rank());
        auto sk = p.sparse.kernel();
        auto dk = solve_homogeneous(p.dense);
        REQUIRE(sk.dimension == dk.dimension);

        // same subspace, and the reduced sparse basis is the canonical one
        std::vector<GRVector> lifted;
        for (const auto& v : sk.basis) {
            GRVector g(v.size());
            std::transform(v.begin(), v.end(), g.begin(), [](const Rational& x) { return GaussianRational(x); });
            // annihilation
            GRVector img = p.dense.apply(g);
            CHECK(std::all_of(img.begin(), img.end(), [](const GaussianRational& x) { return x.is_zero(); }));
            lifted.push_back(std::move(g));
        }
        CHECK(canonicalize_basis(lifted, c).basis == dk.basis);
    }
}

TEST_CASE("kernel basis is independent of row order") {
    std::mt19937_64 rng(2029);
    std::uniform_int_distribution<int> pct(0, 99);
    std::vector<std::vector<SparseRealMatrix::Entry>> raw;
    for (int i = 0; i < 12; ++i) {
        std::vector<SparseRealMatrix::Entry> row;
        for (std::size_t j = 0; j < 15; ++j)
            if (pct(rng) < 30) row.emplace_back(j, testsup::rand_rational(rng, 3, 2));
        raw.push_back(std::move(row));
    }
    auto build = [&](const std::vector<std::vector<SparseRealMatrix::Entry>>& rows) {
        SparseRealMatrix m(15);
        for (const auto& r : rows) m.add_row(r);
        return m.kernel();
    };
    auto base = build(raw);
    for (int iter = 0; iter < 6; ++iter) {
        std::shuffle(raw.begin(), raw.end(), rng);
        auto k = build(raw);
        CHECK(k.dimension == base.dimension);
        CHECK(k.basis == base.basis);
    }
}

TEST_CASE("larger block-structured system") {
    // [ I  -I ] over 2b columns: kernel is the diagonal, dimension b
    const std::size_t b = 60;
    SparseRealMatrix m(2 * b);
    for (std::size_t i = 0; i < b; ++i)
        m.add_row({{i, Rational(1)}, {b + i, Rational(-1)}});
    auto k = m.kernel();
    REQUIRE(k.dimension == b);
    for (std::size_t i = 0; i < b; ++i) {
        CHECK(k.basis[i][i] == Rational(1));
        CHECK(k.basis[i][b + i] == Rational(1));
    }
}
