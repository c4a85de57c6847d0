#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crquad/catalog.hpp"
#include "crquad/jet.hpp"
#include "crquad/nondegeneracy.hpp"
#include "test_support.hpp"

#include <map>
#include <random>
#include <tuple>

using namespace crquad;

namespace {

MultiPoly var(const VarEnv& e, Var k, std::size_t i, std::uint16_t exp = 1) {
    return MultiPoly::variable(e, k, i, exp);
}

// random polynomial in z, zb, u only (what the derivation acts on)
MultiPoly rand_zzu_poly(std::mt19937_64& rng, const VarEnv& env, std::size_t max_terms = 5) {
    std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
    std::uniform_int_distribution<int> expd(0, 2);
    MultiPoly p(env);
    std::size_t limit = 2 * env.n + env.d;  // z, zb, u slots
    for (std::size_t t = nterms(rng); t > 0; --t) {
        Monomial m{std::vector<std::uint16_t>(env.total(), 0)};
        for (std::size_t s = 0; s < limit; ++s) m.exps[s] = static_cast<std::uint16_t>(expd(rng));
        p.add_term(m, testsup::rand_gaussian(rng, 3, 2));
    }
    return p;
}

// random holomorphic pair (z and w slots only)
HolMapPair rand_hol_pair(std::mt19937_64& rng, const VarEnv& env, std::size_t max_terms = 4) {
    std::uniform_int_distribution<std::size_t> nterms(0, max_terms);
    std::uniform_int_distribution<int> expd(0, 2);
    auto rand_poly = [&]() {
        MultiPoly p(env);
        for (std::size_t t = nterms(rng); t > 0; --t) {
            Monomial m{std::vector<std::uint16_t>(env.total(), 0)};
            for (std::size_t i = 0; i < env.n; ++i) m.exps[i] = static_cast<std::uint16_t>(expd(rng));
            for (std::size_t s = 0; s < env.d; ++s)
                m.exps[2 * env.n + env.d + s] = static_cast<std::uint16_t>(expd(rng));
            p.add_term(m, testsup::rand_gaussian(rng, 3, 2));
        }
        return p;
    };
    std::vector<MultiPoly> f, g;
    for (std::size_t k = 0; k < env.n; ++k) f.push_back(rand_poly());
    for (std::size_t j = 0; j < env.d; ++j) g.push_back(rand_poly());
    return HolMapPair(std::move(f), std::move(g));
}

// rank test for span membership, over the realified coefficient coordinates
bool span_contains(const std::vector<HolMapPair>& basis, const HolMapPair& target) {
    using Key = std::tuple<bool, std::size_t, Monomial>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
            if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
            return grlex_less(std::get<2>(a), std::get<2>(b));
        }
    };
    std::map<Key, std::size_t, KeyLess> coords;
    auto note = [&](const HolMapPair& p) {
        for (std::size_t k = 0; k < p.f.size(); ++k)
            for (const auto& [m, c] : p.f[k].terms()) coords.try_emplace({true, k, m}, 0);
        for (std::size_t j = 0; j < p.g.size(); ++j)
            for (const auto& [m, c] : p.g[j].terms()) coords.try_emplace({false, j, m}, 0);
    };
    for (const auto& b : basis) note(b);
    note(target);
    std::size_t idx = 0;
    for (auto& [k, v] : coords) v = idx++;

    auto fill = [&](ExactMatrix& mat, std::size_t row, const HolMapPair& p) {
        auto put = [&](const Key& key, const GaussianRational& c) {
            std::size_t col = coords.at(key);
            mat.at(row, 2 * col) = GaussianRational(c.re());
            mat.at(row, 2 * col + 1) = GaussianRational(c.im());
        };
        for (std::size_t k = 0; k < p.f.size(); ++k)
            for (const auto& [m, c] : p.f[k].terms()) put({true, k, m}, c);
        for (std::size_t j = 0; j < p.g.size(); ++j)
            for (const auto& [m, c] : p.g[j].terms()) put({false, j, m}, c);
    };
    ExactMatrix base(basis.size(), 2 * coords.size());
    for (std::size_t r = 0; r < basis.size(); ++r) fill(base, r, basis[r]);
    ExactMatrix ext(basis.size() + 1, 2 * coords.size());
    for (std::size_t r = 0; r < basis.size(); ++r) fill(ext, r, basis[r]);
    fill(ext, basis.size(), target);
    return base.rank() == ext.rank();
}

}  // namespace

TEST_CASE("tangency identity matches worked expansions") {
    QuadricModel m = catalog_entry("hyperquadric-c2").model;
    VarEnv env = m.env();
    MultiPoly z1 = var(env, Var::Z, 0), w1 = var(env, Var::W, 0);

    SUBCASE("vertical translation leaves the defining function") {
        HolMapPair p({MultiPoly(env)}, {w1});
        auto es = expand_basic_identity(p, m);
        REQUIRE(es.size() == 1);
        MultiPoly expected = -(z1 * var(env, Var::Zb, 0));
        CHECK(es[0] == expected);
        CHECK_FALSE(satisfies_tangency_identity(p, m));
    }
    SUBCASE("real constants, rotations and dilations are solutions") {
        HolMapPair c({MultiPoly(env)}, {MultiPoly::constant(env, GaussianRational(1))});
        CHECK(satisfies_tangency_identity(c, m));
        HolMapPair rot({z1.scaled(GaussianRational::i())}, {MultiPoly(env)});
        CHECK(satisfies_tangency_identity(rot, m));
        HolMapPair dil({z1}, {w1.scaled(GaussianRational(2))});
        CHECK(satisfies_tangency_identity(dil, m));
    }
    SUBCASE("an imaginary constant in g is not a solution") {
        HolMapPair p({MultiPoly(env)}, {MultiPoly::constant(env, GaussianRational::i())});
        CHECK_FALSE(satisfies_tangency_identity(p, m));
    }
    SUBCASE("the identity map is finite-tangent but not infinitesimal") {
        HolMapPair id({z1}, {w1});
        CHECK(is_finite_map_tangent(id, m));
        CHECK_FALSE(satisfies_tangency_identity(id, m));
        HolMapPair zero = HolMapPair::zero(env);
        CHECK(is_finite_map_tangent(zero, m));
        CHECK(satisfies_tangency_identity(zero, m));
    }
}

TEST_CASE("tangential derivation: examples and the second-derivative law") {
    QuadricModel m = catalog_entry("hyperquadric-c2").model;
    VarEnv env = m.env();
    MultiPoly u1 = var(env, Var::U, 0);
    MultiPoly rho = m.levi_poly(0);

    CHECK(delta(u1, m) == rho);
    CHECK(delta(u1 * u1, m) == (rho * u1).scaled(GaussianRational(2)));
    CHECK(delta(delta(u1 * u1, m), m) == (rho * rho).scaled(GaussianRational(2)));

    std::mt19937_64 rng(411);
    std::vector<QuadricModel> models = {m, catalog_entry("diag-pair-c4").model,
                                        catalog_entry("beloshapka-c6-codim3").model};
    for (int iter = 0; iter < 100; ++iter) {
        const QuadricModel& mod = models[iter % models.size()];
        MultiPoly phi = rand_zzu_poly(rng, mod.env());
        MultiPoly lhs = delta(delta(phi, mod), mod);
        MultiPoly rhs(mod.env());
        for (std::size_t s = 0; s < mod.d(); ++s)
            for (std::size_t t = 0; t < mod.d(); ++t) {
                MultiPoly second = phi.partial(Var::U, s).partial(Var::U, t);
                if (!second.is_zero()) rhs += mod.levi_poly(s) * mod.levi_poly(t) * second;
            }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("weighted decomposition is exact under the anisotropic rescaling") {
    QuadricModel m2 = catalog_entry("diag-pair-c4").model;
    VarEnv env = m2.env();

    SUBCASE("a single monomial map is one component") {
        HolMapPair p = HolMapPair::zero(env);
        p.g[0] = var(env, Var::W, 0);
        auto parts = decompose_weighted(p);
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].weight == 2);
        CHECK(parts[0].part == p);
    }

    std::mt19937_64 rng(412);
    for (int iter = 0; iter < 40; ++iter) {
        HolMapPair p = rand_hol_pair(rng, env);
        auto parts = decompose_weighted(p);

        HolMapPair sum = HolMapPair::zero(env);
        for (const auto& wc : parts) {
            sum += wc.part;
            for (const auto& q : wc.part.f) CHECK(q.is_weighted_homogeneous(wc.weight));
            for (const auto& q : wc.part.g) CHECK(q.is_weighted_homogeneous(wc.weight));
        }
        CHECK(sum == p);

        // formal rescaling: component(tz, t^2 w) = t^q component(z, w), with t
        // a fresh variable, so the check is a polynomial identity
        VarEnv big{env.n + 1, env.d};
        MultiPoly t = var(big, Var::Z, env.n);
        std::vector<MultiPoly> scaled_img(env.total()), plain_img(env.total());
        for (std::size_t i = 0; i < env.n; ++i) {
            plain_img[i] = var(big, Var::Z, i);
            scaled_img[i] = var(big, Var::Z, i) * t;
        }
        for (std::size_t s = 0; s < env.d; ++s) {
            std::size_t slot = 2 * env.n + env.d + s;
            plain_img[slot] = var(big, Var::W, s);
            scaled_img[slot] = var(big, Var::W, s) * t * t;
        }
        auto embed = [&](const MultiPoly& q, const std::vector<MultiPoly>& img) {
            return q.compose(big, img);
        };
        for (const auto& wc : parts) {
            auto tq = var(big, Var::Z, env.n, static_cast<std::uint16_t>(wc.weight));
            for (const auto& q : wc.part.f)
                CHECK(embed(q, scaled_img) == tq * embed(q, plain_img));
            for (const auto& q : wc.part.g)
                CHECK(embed(q, scaled_img) == tq * embed(q, plain_img));
        }
    }
}

TEST_CASE("hyperquadric symmetry space: dimension, bounds, generators") {
    QuadricModel m = catalog_entry("hyperquadric-c2").model;
    VarEnv env = m.env();

    SolutionSpace at2 = solve_jet_system(m, 2, Route::Direct);
    SolutionSpace at3 = solve_jet_system(m, 3, Route::Direct);
    SolutionSpace at4 = solve_jet_system(m, 4, Route::Direct);
    CHECK(at2.dimension == 8);
    CHECK(at3.dimension == 8);
    CHECK(at4.dimension == 8);

    SolutionSpace gen2 = solve_jet_system(m, 2, Route::General);
    SolutionSpace gen6 = solve_jet_system(m, 6, Route::General);
    CHECK(gen2.dimension == 8);
    CHECK(gen6.dimension == 8);

    CHECK(at4.max_wdeg_f0 <= 1);
    CHECK(at4.max_wdeg_f1 <= 1);
    CHECK(at4.max_wdeg_f2 == 0);
    CHECK(at4.max_wdeg_g0 <= 2);
    CHECK(at4.max_wdeg_g1 <= 1);
    CHECK(at4.max_weight <= 4);
    CHECK_FALSE(at4.f_has_high_zdeg);
    CHECK_FALSE(at4.g_has_high_zdeg);

    for (const auto& pair : gen6.basis) CHECK(satisfies_tangency_identity(pair, m));

    MultiPoly z1 = var(env, Var::Z, 0), w1 = var(env, Var::W, 0);
    CHECK(span_contains(gen6.basis, HolMapPair({MultiPoly(env)},
                                               {MultiPoly::constant(env, GaussianRational(1))})));
    CHECK(span_contains(gen6.basis, HolMapPair({z1}, {w1.scaled(GaussianRational(2))})));
    CHECK(span_contains(gen6.basis, HolMapPair({z1.scaled(GaussianRational::i())}, {MultiPoly(env)})));

    // rational linear combinations stay solutions; re-verified by substitution
    std::mt19937_64 rng(413);
    for (int iter = 0; iter < 10; ++iter) {
        HolMapPair combo = HolMapPair::zero(env);
        for (const auto& b : at4.basis)
            combo += b.scaled(GaussianRational(testsup::rand_rational(rng, 3, 2)));
        CHECK(satisfies_tangency_identity(combo, m));
    }

    CHECK(two_jet_restriction_is_injective(at4));
}

TEST_CASE("both routes agree exactly on the shared ansatz") {
    for (const auto& entry : catalog()) {
        CAPTURE(entry.name);
        JetSystem direct = assemble_system_direct(entry.model, 2);
        JetSystem general = assemble_system_general(entry.model, Footprint::direct_blocks(2));
        REQUIRE(direct.columns.size() == general.columns.size());
        auto kd = direct.matrix.kernel();
        auto kg = general.matrix.kernel();
        CHECK(kd.dimension == kg.dimension);
        CHECK(kd.basis == kg.basis);
    }
    for (const char* name : {"hyperquadric-c2", "flat-b-not-a"}) {
        QuadricModel m = catalog_entry(name).model;
        auto kd = assemble_system_direct(m, 3).matrix.kernel();
        auto kg = assemble_system_general(m, Footprint::direct_blocks(3)).matrix.kernel();
        CHECK(kd.basis == kg.basis);
    }
}

TEST_CASE("the derived eighth equation family never changes the kernel") {
    for (const char* name : {"hyperquadric-c2", "diag-pair-c4", "ber-c6-codim4", "degenerate-flat"}) {
        CAPTURE(name);
        QuadricModel m = catalog_entry(name).model;
        auto with = assemble_system_direct(m, 2, true).matrix.kernel();
        auto without = assemble_system_direct(m, 2, false).matrix.kernel();
        CHECK(with.dimension == without.dimension);
        CHECK(with.basis == without.basis);
    }
}

TEST_CASE("degenerate directions grow the space and break the degree bounds") {
    QuadricModel flat = catalog_entry("degenerate-flat").model;
    VarEnv fenv = flat.env();

    CHECK(solve_jet_system(flat, 2, Route::Direct).dimension == 21);
    CHECK(solve_jet_system(flat, 4, Route::Direct).dimension == 35);
    CHECK(solve_jet_system(flat, 2, Route::General).dimension == 15);
    SolutionSpace flat4 = solve_jet_system(flat, 4, Route::General);
    CHECK(flat4.dimension == 35);

    CHECK_FALSE(truncation_report(flat4).clean());
    CHECK_FALSE(two_jet_restriction_is_injective(flat4));

    // an explicit rigidity counterexample: z^3 agrees with the zero map to
    // second order but is itself a solution
    HolMapPair cubic({var(fenv, Var::Z, 0, 3)}, {MultiPoly(fenv)});
    CHECK(satisfies_tangency_identity(cubic, flat));
    CHECK_FALSE(jet_determination_check(flat, cubic, HolMapPair::zero(fenv), 4));

    // nondegenerate models keep the truncated shape
    QuadricModel hyper = catalog_entry("hyperquadric-c2").model;
    CHECK(truncation_report(solve_jet_system(hyper, 4, Route::General)).clean());

    // a model violating (b) leaks arbitrary monomials into the null direction
    QuadricModel corner = catalog_entry("corner-a-not-b").model;
    SolutionSpace corner4 = solve_jet_system(corner, 4, Route::General);
    TruncationReport rep = truncation_report(corner4);
    CHECK_FALSE(rep.clean());
}

TEST_CASE("symbol system detects exactly the characteristic directions") {
    QuadricModel hyper = catalog_entry("hyperquadric-c2").model;
    PdSystem pd(hyper);
    CHECK(pd.unknowns() == 5);
    CHECK(pd.rows() > 0);
    CHECK(pd.symbol_kernel_dimension({GaussianRational(0)}) == 4);
    CHECK(pd.characteristic({GaussianRational(0)}));
    CHECK_FALSE(pd.characteristic({GaussianRational(1)}));
    CHECK_THROWS_AS(pd.characteristic({GaussianRational(1), GaussianRational(0)}), ValidationError);

    QuadricModel bel = catalog_entry("beloshapka-c6-codim3").model;
    CHECK(PdSystem(bel).unknowns() == 42);
    std::vector<GaussianRational> zeros3(3, GaussianRational(0));
    CHECK(char_variety_test(bel, zeros3));
    CHECK_FALSE(char_variety_test(bel, {GaussianRational(1), GaussianRational(0), GaussianRational(0)}));

    QuadricModel flat = catalog_entry("degenerate-flat").model;
    CHECK(char_variety_test(flat, {GaussianRational(1)}));

    SUBCASE("probe generator") {
        for (std::size_t d : {1u, 3u, 4u}) {
            auto probes = char_variety_probes(d);
            REQUIRE(probes.size() == 20);
            for (const auto& p : probes) {
                CHECK(p.size() == d);
                bool nonzero = false;
                for (const auto& c : p) nonzero = nonzero || !c.is_zero();
                CHECK(nonzero);
            }
            for (std::size_t a = 0; a < probes.size(); ++a)
                for (std::size_t b = a + 1; b < probes.size(); ++b) CHECK(probes[a] != probes[b]);
        }
        auto p3 = char_variety_probes(3);
        CHECK(p3[0] == std::vector<GaussianRational>{GaussianRational(1), GaussianRational(0), GaussianRational(0)});
        CHECK_FALSE(p3.back()[0].im().is_zero());
    }
}

TEST_CASE("two-jet rigidity checks") {
    QuadricModel m = catalog_entry("hyperquadric-c2").model;
    VarEnv env = m.env();
    MultiPoly z1 = var(env, Var::Z, 0), w1 = var(env, Var::W, 0);

    HolMapPair dil({z1}, {w1.scaled(GaussianRational(2))});
    CHECK(jet_determination_check(m, dil, dil, 2));

    HolMapPair id({z1}, {w1});
    CHECK(jet_determination_check(m, id, dil, 2));  // different 2-jets: nothing to compare

    SUBCASE("candidates beyond the cap are rejected") {
        HolMapPair quad({z1 * w1}, {w1 * w1});
        CHECK(satisfies_tangency_identity(quad, m));
        CHECK(jet_determination_check(m, quad, quad, 2));
        CHECK_THROWS_AS(jet_determination_check(m, quad, quad, 1), ValidationError);
    }
    SUBCASE("non-tangent candidates are rejected") {
        HolMapPair bad({z1 * z1}, {MultiPoly(env)});
        CHECK_FALSE(satisfies_tangency_identity(bad, m));
        CHECK_FALSE(is_finite_map_tangent(bad, m));
        CHECK_THROWS_AS(jet_determination_check(m, bad, bad, 2), ValidationError);
    }
    SUBCASE("solution spaces of nondegenerate models are jet-determined") {
        QuadricModel bel = catalog_entry("beloshapka-c6-codim3").model;
        SolutionSpace sol = solve_jet_system(bel, 4, Route::Direct);
        CHECK(two_jet_restriction_is_injective(sol));
        REQUIRE(sol.dimension >= 2);
        HolMapPair p1 = sol.basis[0];
        HolMapPair p2 = sol.basis[0];
        p2 += sol.basis[1];
        CHECK(jet_determination_check(bel, p1, p2, 4));
        CHECK(jet_determination_check(bel, p1, p1, 4));
    }
}

TEST_CASE("map pair validation and small ansatz shapes") {
    QuadricModel m = catalog_entry("diag-pair-c4").model;
    VarEnv env = m.env();

    CHECK_THROWS_AS(HolMapPair({var(env, Var::Zb, 0), MultiPoly(env)},
                               {MultiPoly(env), MultiPoly(env)}),
                    ValidationError);
    CHECK_THROWS_AS(HolMapPair({var(env, Var::U, 0), MultiPoly(env)},
                               {MultiPoly(env), MultiPoly(env)}),
                    ValidationError);
    CHECK_THROWS_AS(HolMapPair({var(env, Var::Z, 0)}, {MultiPoly(env), MultiPoly(env)}),
                    ValidationError);
    CHECK_THROWS_AS(assemble_system_general(m, 0), ValidationError);

    // degree-1 ansatz already contains every real constant vertical shift
    SolutionSpace deg1 = solve_jet_system(m, 1, Route::General);
    for (std::size_t j = 0; j < m.d(); ++j) {
        HolMapPair shift = HolMapPair::zero(env);
        shift.g[j] = MultiPoly::constant(env, GaussianRational(1));
        CHECK(span_contains(deg1.basis, shift));
    }
}
