#include "crquad/catalog.hpp"

namespace crquad {

namespace {

const GaussianRational O{Rational(0)}, one{Rational(1)}, J = GaussianRational::i();

ExactMatrix from_rows(std::size_t n, std::vector<std::vector<GaussianRational>> rows) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    return m;
}

QuadricModel make(std::size_t n, std::vector<ExactMatrix> mats) {
    std::vector<HermitianMatrix> forms;
    for (std::size_t j = 0; j < mats.size(); ++j) forms.emplace_back(std::move(mats[j]), j);
    return QuadricModel(n, mats.size(), std::move(forms));
}

std::vector<Rational> rat_vec(std::vector<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> out;

    out.push_back({"hyperquadric-c2",
                   "the unit-sphere model Im w = |z|^2 in C^2",
                   make(1, {from_rows(1, {{one}})}),
                   true, true, true, Dominance::Dominant, rat_vec({1})});

    out.push_back({"diag-pair-c4",
                   "two diagonal forms on C^2 picking out |z1|^2 and |z2|^2",
                   make(2, {from_rows(2, {{one, O}, {O, O}}), from_rows(2, {{O, O}, {O, one}})}),
                   true, true, true, Dominance::Dominant, rat_vec({1, 1})});

    out.push_back({"beloshapka-c6-codim3",
                   "codimension-3 model on C^3 whose form pencil has identically zero determinant",
                   make(3, {from_rows(3, {{one, O, O}, {O, O, O}, {O, O, O}}),
                            from_rows(3, {{O, one, O}, {one, O, O}, {O, O, O}}),
                            from_rows(3, {{O, O, one}, {O, O, O}, {one, O, O}})}),
                   true, true, false, Dominance::Dominant, std::nullopt});

    out.push_back({"ber-c6-codim4",
                   "codimension-4 model on C^2 whose Levi image satisfies a quadratic relation",
                   make(2, {from_rows(2, {{one, O}, {O, O}}), from_rows(2, {{O, O}, {O, one}}),
                            from_rows(2, {{O, one}, {one, O}}), from_rows(2, {{O, J}, {-J, O}})}),
                   true, true, true, Dominance::NotDominant, rat_vec({1, 1, 0, 0})});

    out.push_back({"corner-a-not-b",
                   "independent forms on C^3 sharing the kernel direction e3",
                   make(3, {from_rows(3, {{one, O, O}, {O, O, O}, {O, O, O}}),
                            from_rows(3, {{O, one, O}, {one, O, O}, {O, O, O}})}),
                   true, false, false, Dominance::Dominant, std::nullopt});

    out.push_back({"flat-b-not-a",
                   "a nonsingular form padded with a zero form, so (b) holds but not (a)",
                   make(1, {from_rows(1, {{one}}), from_rows(1, {{O}})}),
                   false, true, true, Dominance::NotDominant, rat_vec({1, 0})});

    out.push_back({"degenerate-flat",
                   "the zero form: every nondegeneracy condition fails",
                   make(1, {from_rows(1, {{O}})}),
                   false, false, false, Dominance::NotDominant, std::nullopt});

    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw ParseError("unknown catalog model: " + name);
}

}  // namespace crquad
