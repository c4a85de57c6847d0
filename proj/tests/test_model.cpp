#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "crquad/model.hpp"
#include "test_support.hpp"

#include <random>

using namespace crquad;

namespace {

ExactMatrix from_rows(std::size_t n, std::vector<std::vector<GaussianRational>> rows) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    return m;
}

const GaussianRational O{Rational(0)}, I1{Rational(1)}, J{GaussianRational::i()};

// n=3, d=3 model whose forms are E11, E12+E21, E13+E31
QuadricModel codim3_model() {
    std::vector<HermitianMatrix> forms;
    forms.emplace_back(from_rows(3, {{I1, O, O}, {O, O, O}, {O, O, O}}), 0);
    forms.emplace_back(from_rows(3, {{O, I1, O}, {I1, O, O}, {O, O, O}}), 1);
    forms.emplace_back(from_rows(3, {{O, O, I1}, {O, O, O}, {I1, O, O}}), 2);
    return QuadricModel(3, 3, std::move(forms));
}

// n=2, d=4 model: diag(1,0), diag(0,1), symmetric and antisymmetric off-diagonal
QuadricModel codim4_model() {
    std::vector<HermitianMatrix> forms;
    forms.emplace_back(from_rows(2, {{I1, O}, {O, O}}), 0);
    forms.emplace_back(from_rows(2, {{O, O}, {O, I1}}), 1);
    forms.emplace_back(from_rows(2, {{O, I1}, {I1, O}}), 2);
    forms.emplace_back(from_rows(2, {{O, J}, {-J, O}}), 3);
    return QuadricModel(2, 4, std::move(forms));
}

GRVector unit(std::size_t n, std::size_t k) {
    GRVector v(n);
    v[k] = I1;
    return v;
}

GRVector rand_vector(std::mt19937_64& rng, std::size_t n) {
    GRVector v(n);
    for (auto& x : v) x = testsup::rand_gaussian(rng, 3, 2);
    return v;
}

ExactMatrix rand_invertible(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        ExactMatrix c = testsup::rand_matrix(rng, n, n, 2);
        if (c.is_invertible()) return c;
    }
}

}  // namespace

TEST_CASE("levi values on probe vectors") {
    QuadricModel m = codim3_model();
    GRVector e1 = unit(3, 0), e2 = unit(3, 1), e3 = unit(3, 2);
    CHECK(m.levi(e1) == std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
    GRVector e12 = e1;
    e12[1] = I1;
    CHECK(m.levi(e12) == std::vector<Rational>{Rational(1), Rational(2), Rational(0)});
    GRVector e13 = e1;
    e13[2] = I1;
    CHECK(m.levi(e13) == std::vector<Rational>{Rational(1), Rational(0), Rational(2)});
    CHECK(m.levi(e2) == std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
    CHECK(m.levi(e3) == std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
}

TEST_CASE("sesquilinear map values") {
    QuadricModel m = codim4_model();
    GRVector v = m.sesqui(unit(2, 0), unit(2, 1));
    CHECK(v == GRVector{O, O, I1, J});
    // conjugate symmetry
    GRVector w = m.sesqui(unit(2, 1), unit(2, 0));
    CHECK(w == GRVector{O, O, I1, -J});
}

TEST_CASE("polarization identity recovers the sesquilinear map") {
    std::mt19937_64 rng(71);
    QuadricModel m = codim4_model();
    for (int iter = 0; iter < 200; ++iter) {
        GRVector x = rand_vector(rng, 2), y = rand_vector(rng, 2);
        GRVector xy(2), xiy(2);
        for (std::size_t k = 0; k < 2; ++k) {
            xy[k] = x[k] + y[k];
            xiy[k] = x[k] + y[k] * J;
        }
        auto lx = m.levi(x), ly = m.levi(y), lxy = m.levi(xy), lxiy = m.levi(xiy);
        GRVector s = m.sesqui(x, y);
        for (std::size_t j = 0; j < 4; ++j) {
            GaussianRational re{lxy[j] - lx[j] - ly[j]};
            GaussianRational im{lx[j] + ly[j] - lxiy[j]};
            CHECK(s[j] + s[j] == re + im * J);
        }
    }
}

TEST_CASE("levi polynomial matches pointwise evaluation") {
    std::mt19937_64 rng(73);
    QuadricModel m = codim4_model();
    VarEnv scalar{0, 0};
    for (int iter = 0; iter < 50; ++iter) {
        GRVector z = rand_vector(rng, 2);
        std::vector<MultiPoly> images(m.env().total(), MultiPoly(scalar));
        for (std::size_t k = 0; k < 2; ++k) {
            images[k] = MultiPoly::constant(scalar, z[k]);
            images[2 + k] = MultiPoly::constant(scalar, z[k].conj());
        }
        for (std::size_t j = 0; j < 4; ++j) {
            MultiPoly val = m.levi_poly(j).compose(scalar, images);
            CHECK(val == MultiPoly::constant(scalar, GaussianRational(m.levi(z)[j])));
        }
    }
    // the form polynomial is formally real
    for (std::size_t j = 0; j < 4; ++j) CHECK(m.levi_poly(j).conj() == m.levi_poly(j));
}

TEST_CASE("coordinate change moves a kernel vector into a zero column") {
    std::vector<HermitianMatrix> forms;
    forms.emplace_back(from_rows(2, {{I1, I1}, {I1, I1}}), 0);
    QuadricModel m(2, 1, std::move(forms));
    // second column of C spans the kernel (1,-1)
    ExactMatrix c = from_rows(2, {{I1, I1}, {O, -I1}});
    QuadricModel moved = m.change_coordinates(c);
    CHECK(moved.form(0).at(0, 0) == I1);
    CHECK(moved.form(0).at(0, 1) == O);
    CHECK(moved.form(0).at(1, 0) == O);
    CHECK(moved.form(0).at(1, 1) == O);
}

TEST_CASE("levi transforms by composition under coordinate change") {
    std::mt19937_64 rng(79);
    QuadricModel m = codim3_model();
    for (int iter = 0; iter < 200; ++iter) {
        ExactMatrix c = rand_invertible(rng, 3);
        QuadricModel moved = m.change_coordinates(c);
        GRVector z = rand_vector(rng, 3);
        CHECK(moved.levi(z) == m.levi(c.apply(z)));
    }
    ExactMatrix singular(3, 3);
    singular.at(0, 0) = I1;
    CHECK_THROWS_AS(m.change_coordinates(singular), ValidationError);
}

TEST_CASE("json round-trip") {
    QuadricModel m = codim4_model();
    std::string text = model_to_json_text(m);
    QuadricModel back = model_from_json_text(text);
    CHECK(back == m);

    QuadricModel m2 = codim3_model();
    CHECK(model_from_json_text(model_to_json_text(m2, false)) == m2);
    CHECK(!(m2 == m));
}

TEST_CASE("json parsing accepts integers, fractions and complex objects") {
    QuadricModel m = model_from_json_text(R"({
        "n": 2, "d": 1,
        "matrices": [[[1, {"re": "0", "im": "1/2"}], [{"re": 0, "im": "-1/2"}, "2/3"]]]
    })");
    CHECK(m.form(0).at(0, 1) == GaussianRational(Rational(0), Rational(1, 2)));
    CHECK(m.form(0).at(1, 1) == GaussianRational(Rational(2, 3)));
}

TEST_CASE("json parsing diagnostics") {
    CHECK_THROWS_WITH_AS(model_from_json_text("{"), doctest::Contains("invalid JSON"), ParseError);
    CHECK_THROWS_WITH_AS(model_from_json_text(R"({"n": 1, "d": 2, "matrices": [[["1"]]]})"),
                         doctest::Contains("expected 2 matrices, got 1"), ParseError);
    CHECK_THROWS_WITH_AS(model_from_json_text(R"({"n": 2, "d": 1, "matrices": [[["1", "0"]]]})"),
                         doctest::Contains("expected 2 rows"), ParseError);
    CHECK_THROWS_WITH_AS(model_from_json_text(R"({"n": 1, "d": 1, "matrices": [[["1/0"]]]})"),
                         doctest::Contains("matrix 1, entry (1,1)"), ParseError);
    CHECK_THROWS_WITH_AS(model_from_json_text(R"({"n": 1, "d": 1, "matrices": [[[1.5]]]})"),
                         doctest::Contains("entry (1,1)"), ParseError);
    // Hermitian violation is reported with the matrix index
    CHECK_THROWS_WITH_AS(
        model_from_json_text(
            R"({"n": 2, "d": 2, "matrices": [[["1","0"],["0","1"]], [["0","1"],["1/2","0"]]]})"),
        doctest::Contains("matrix 2"), ValidationError);
    CHECK_THROWS_AS(model_from_json_text(R"({"n": 0, "d": 1, "matrices": []})"), ParseError);
}
