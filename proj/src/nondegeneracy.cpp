#include "crquad/nondegeneracy.hpp"

#include <random>
#include <sstream>

namespace crquad {

namespace {

// real coordinates of a Hermitian matrix: diagonal, then re/im of the upper triangle
std::vector<Rational> real_coords(const HermitianMatrix& a) {
    std::size_t n = a.size();
    std::vector<Rational> out;
    out.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(a.at(i, i).re());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            out.push_back(a.at(i, k).re());
            out.push_back(a.at(i, k).im());
        }
    }
    return out;
}

// <A_j x, y> with x, y treated as independent tuples: zb slots carry x
// conjugated, z slots carry y.
MultiPoly sesqui_poly(const QuadricModel& m, std::size_t j, const VarEnv& env) {
    MultiPoly p(env);
    const HermitianMatrix& a = m.form(j);
    for (std::size_t k = 0; k < m.n(); ++k) {
        for (std::size_t l = 0; l < m.n(); ++l) {
            if (a.at(k, l).is_zero()) continue;
            Monomial mono{std::vector<std::uint16_t>(env.total(), 0)};
            mono.exps[env.n + k] += 1;
            mono.exps[l] += 1;
            p.add_term(mono, a.at(k, l));
        }
    }
    return p;
}

std::vector<std::vector<std::uint16_t>> degree_multiindices(std::size_t d, std::size_t m) {
    std::vector<std::vector<std::uint16_t>> out;
    std::vector<std::uint16_t> cur(d, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == d) {
            cur[pos] = static_cast<std::uint16_t>(left);
            out.push_back(cur);
            return;
        }
        for (std::size_t take = 0; take <= left; ++take) {
            cur[pos] = static_cast<std::uint16_t>(take);
            self(self, pos + 1, left - take);
        }
    };
    rec(rec, 0, m);
    return out;
}

bool is_zero_vec(const GRVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace

IndependenceResult check_condition_a(const QuadricModel& m) {
    std::size_t n = m.n(), d = m.d();
    ExactMatrix coords(d, n * n);
    for (std::size_t j = 0; j < d; ++j) {
        auto row = real_coords(m.form(j));
        for (std::size_t c = 0; c < row.size(); ++c) coords.at(j, c) = GaussianRational(row[c]);
    }
    IndependenceResult r;
    r.rank = coords.rank();
    r.holds = (r.rank == d);
    if (!r.holds) {
        // left kernel: a real dependency among the forms
        auto k = solve_homogeneous(coords.conj_transpose());
        std::vector<Rational> lambda;
        for (const auto& x : k.basis.at(0)) lambda.push_back(x.re());
        r.relation = std::move(lambda);
    }
    return r;
}

KernelResult check_condition_b(const QuadricModel& m) {
    std::vector<ExactMatrix> blocks;
    blocks.reserve(m.d());
    for (std::size_t j = 0; j < m.d(); ++j) blocks.push_back(m.form(j).mat());
    ExactMatrix stacked = ExactMatrix::vstack(blocks);
    KernelResult r;
    r.rank = stacked.rank();
    r.holds = (r.rank == m.n());
    if (!r.holds) r.witness = solve_homogeneous(stacked).basis.at(0);
    return r;
}

TumanovResult check_tumanov(const QuadricModel& m) {
    std::size_t n = m.n(), d = m.d();
    double grid_size = 1.0;
    for (std::size_t j = 0; j < d; ++j) grid_size *= static_cast<double>(n + 1);
    if (grid_size > 2e5) throw ValidationError("combination grid too large for this n, d");

    std::vector<std::size_t> c(d, 0);
    for (;;) {
        ExactMatrix sum(n, n);
        for (std::size_t j = 0; j < d; ++j)
            if (c[j] != 0) sum = sum + m.form(j).mat().scaled(GaussianRational(Rational(static_cast<long>(c[j]))));
        if (!sum.determinant().is_zero()) {
            std::vector<Rational> witness;
            for (std::size_t j = 0; j < d; ++j) witness.emplace_back(static_cast<long>(c[j]));
            return {true, std::move(witness)};
        }
        // advance, first coordinate fastest
        std::size_t j = 0;
        while (j < d && c[j] == n) c[j++] = 0;
        if (j == d) return {false, std::nullopt};
        ++c[j];
    }
}

bool check_cone_generating(const QuadricModel& m) {
    std::size_t n = m.n(), d = m.d();
    std::vector<GRVector> probes;
    for (std::size_t i = 0; i < n; ++i) {
        GRVector e(n);
        e[i] = GaussianRational(1);
        probes.push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            GRVector s(n), t(n);
            s[i] = GaussianRational(1);
            s[j] = GaussianRational(1);
            t[i] = GaussianRational(1);
            t[j] = GaussianRational::i();
            probes.push_back(s);
            probes.push_back(t);
        }
    }
    ExactMatrix values(probes.size(), d);
    for (std::size_t p = 0; p < probes.size(); ++p) {
        auto lv = m.levi(probes[p]);
        for (std::size_t j = 0; j < d; ++j) values.at(p, j) = GaussianRational(lv[j]);
    }
    return values.rank() == d;
}

bool check_finite_type_two(const QuadricModel& m) {
    std::size_t n = m.n(), d = m.d();
    ExactMatrix values(n * n, d);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            GRVector ek(n), el(n);
            ek[k] = GaussianRational(1);
            el[l] = GaussianRational(1);
            GRVector v = m.sesqui(ek, el);
            for (std::size_t j = 0; j < d; ++j) values.at(n * k + l, j) = v[j];
        }
    }
    return values.rank() == d;
}

SesquiAnalysis analyze_sesqui_surjectivity(const QuadricModel& m, std::size_t max_relation_degree) {
    std::size_t n = m.n(), d = m.d();
    VarEnv env{n, 0};
    std::vector<MultiPoly> ell;
    for (std::size_t j = 0; j < d; ++j) ell.push_back(sesqui_poly(m, j, env));

    SesquiAnalysis out;
    out.searched_up_to = max_relation_degree;

    // full Jacobian rank d at any point proves the image is dense, and rules
    // out relations of every degree
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<long> small(-3, 3);
    for (int probe = 0; probe < 6; ++probe) {
        std::vector<GaussianRational> point(env.total());
        for (auto& x : point) x = GaussianRational(Rational(small(rng)), Rational(small(rng)));
        ExactMatrix jac(d, 2 * n);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t s = 0; s < n; ++s) {
                jac.at(j, s) = ell[j].partial(Var::Z, s).evaluate(point);
                jac.at(j, n + s) = ell[j].partial(Var::Zb, s).evaluate(point);
            }
        }
        if (jac.rank() == d) {
            out.status = Dominance::Dominant;
            return out;
        }
    }

    // search for a homogeneous polynomial identity satisfied by the image
    VarEnv tenv{0, d, "t"};
    for (std::size_t deg = 1; deg <= max_relation_degree; ++deg) {
        auto alphas = degree_multiindices(d, deg);
        std::vector<MultiPoly> products;
        products.reserve(alphas.size());
        for (const auto& alpha : alphas) {
            MultiPoly p = MultiPoly::constant(env, GaussianRational(1));
            for (std::size_t j = 0; j < d; ++j)
                for (std::uint16_t e = 0; e < alpha[j]; ++e) p = p * ell[j];
            products.push_back(std::move(p));
        }
        std::map<Monomial, std::size_t, GrlexLess> row_of;
        for (const auto& p : products)
            for (const auto& [mono, c] : p.terms())
                row_of.emplace(mono, row_of.size());
        ExactMatrix sys(row_of.size(), products.size());
        for (std::size_t col = 0; col < products.size(); ++col)
            for (const auto& [mono, c] : products[col].terms()) sys.at(row_of.at(mono), col) = c;
        auto kernel = solve_homogeneous(sys);
        if (kernel.dimension == 0) continue;

        MultiPoly rel(tenv);
        for (std::size_t col = 0; col < alphas.size(); ++col) {
            if (kernel.basis[0][col].is_zero()) continue;
            Monomial mono{std::vector<std::uint16_t>(tenv.total(), 0)};
            for (std::size_t j = 0; j < d; ++j) mono.exps[j] = alphas[col][j];
            rel.add_term(mono, kernel.basis[0][col]);
        }
        out.status = Dominance::NotDominant;
        out.relation = std::move(rel);
        out.relation_degree = deg;
        return out;
    }

    out.status = Dominance::Unknown;
    return out;
}

Report classify_unchecked(const QuadricModel& m, std::size_t max_relation_degree) {
    Report r;
    r.n = m.n();
    r.d = m.d();
    r.independent = check_condition_a(m);
    r.trivial_kernel = check_condition_b(m);
    r.nondegenerate = r.independent.holds && r.trivial_kernel.holds;
    r.tumanov = check_tumanov(m);
    r.cone_generating = check_cone_generating(m);
    r.finite_type_two = check_finite_type_two(m);
    r.sesqui = analyze_sesqui_surjectivity(m, max_relation_degree);
    return r;
}

std::vector<std::string> invariant_violations(const QuadricModel& m, const Report& r) {
    std::vector<std::string> bad;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };
    std::size_t n = m.n(), d = m.d();

    expect(r.nondegenerate == (r.independent.holds && r.trivial_kernel.holds),
           "nondegenerate must be the conjunction of (a) and (b)");
    expect(r.cone_generating == r.independent.holds, "cone condition must match (a)");
    expect(r.finite_type_two == r.independent.holds, "finite type two must match (a)");
    expect(!r.tumanov.holds || r.trivial_kernel.holds, "tumanov implies (b)");
    if (r.independent.holds && d > (n - 1) * (n - 1))
        expect(r.trivial_kernel.holds, "(a) with d > (n-1)^2 implies (b)");
    if (d == 1) expect(!r.trivial_kernel.holds || r.independent.holds, "(b) implies (a) when d = 1");
    if (d > n * n) expect(!r.independent.holds, "(a) is impossible when d > n^2");
    expect(r.sesqui.status != Dominance::Dominant || r.finite_type_two,
           "a dense image requires finite type two");

    if (r.independent.relation) {
        const auto& lam = *r.independent.relation;
        ExactMatrix sum(n, n);
        bool nonzero = false;
        for (std::size_t j = 0; j < d; ++j) {
            if (!lam[j].is_zero()) nonzero = true;
            sum = sum + m.form(j).mat().scaled(GaussianRational(lam[j]));
        }
        expect(nonzero && sum.is_zero(), "dependence witness must annihilate the forms");
    }
    if (r.trivial_kernel.witness) {
        const auto& v = *r.trivial_kernel.witness;
        bool ok = !is_zero_vec(v);
        for (std::size_t j = 0; j < d; ++j)
            if (!is_zero_vec(m.form(j).mat().apply(v))) ok = false;
        expect(ok, "kernel witness must be a nonzero common kernel vector");
    }
    if (r.tumanov.witness) {
        ExactMatrix sum(n, n);
        for (std::size_t j = 0; j < d; ++j)
            sum = sum + m.form(j).mat().scaled(GaussianRational((*r.tumanov.witness)[j]));
        expect(!sum.determinant().is_zero(), "tumanov witness must give a nonsingular combination");
    }
    if (r.sesqui.relation) {
        VarEnv env{n, 0};
        std::vector<MultiPoly> images(VarEnv{0, d, "t"}.total(), MultiPoly(env));
        for (std::size_t j = 0; j < d; ++j) images[j] = sesqui_poly(m, j, env);
        expect(!r.sesqui.relation->is_zero() && r.sesqui.relation->compose(env, images).is_zero(),
               "image relation must vanish identically on the sesquilinear values");
    }
    return bad;
}

Report classify(const QuadricModel& m, std::size_t max_relation_degree) {
    Report r = classify_unchecked(m, max_relation_degree);
    auto bad = invariant_violations(m, r);
    if (!bad.empty()) {
        std::ostringstream os;
        os << "internal consistency failure:";
        for (const auto& s : bad) os << " [" << s << "]";
        throw std::logic_error(os.str());
    }
    return r;
}

QuadricModel random_model(std::size_t n, std::size_t d, long bound, std::uint64_t seed) {
    if (bound < 1) throw ValidationError("entry bound must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, 2);
    auto entry = [&]() { return Rational(num(rng), den(rng)); };
    std::vector<HermitianMatrix> forms;
    for (std::size_t j = 0; j < d; ++j) {
        ExactMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            a.at(i, i) = GaussianRational(entry());
            for (std::size_t k = i + 1; k < n; ++k) {
                a.at(i, k) = GaussianRational(entry(), entry());
                a.at(k, i) = a.at(i, k).conj();
            }
        }
        forms.emplace_back(std::move(a), j);
    }
    return QuadricModel(n, d, std::move(forms));
}

HarnessResult run_harness(const HarnessConfig& cfg) {
    if (cfg.count < 1) throw ValidationError("harness count must be positive");
    if (cfg.n_min < 1 || cfg.n_min > cfg.n_max || cfg.d_min < 1 || cfg.d_min > cfg.d_max)
        throw ValidationError("harness dimension range is empty");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick_n(cfg.n_min, cfg.n_max), pick_d(cfg.d_min, cfg.d_max);
    HarnessResult out;
    out.count = cfg.count;
    std::size_t h_cone = 0, h_ft2 = 0, h_tum = 0, h_codim = 0, h_hyp = 0, h_excess = 0;
    for (std::size_t k = 0; k < cfg.count; ++k) {
        std::size_t n = pick_n(rng), d = pick_d(rng);
        std::uint64_t model_seed = rng();
        QuadricModel m = random_model(n, d, cfg.bound, model_seed);
        Report r = classify_unchecked(m, 2);
        if (r.cone_generating) ++h_cone;
        if (r.finite_type_two) ++h_ft2;
        if (r.tumanov.holds) ++h_tum;
        if (r.independent.holds && d > (n - 1) * (n - 1)) ++h_codim;
        if (d == 1 && r.trivial_kernel.holds) ++h_hyp;
        if (d > n * n) ++h_excess;
        auto bad = invariant_violations(m, r);
        if (!bad.empty()) {
            ++out.violations;
            std::ostringstream os;
            os << "model " << k << " (n=" << n << ", d=" << d << ", seed=" << model_seed << "):";
            for (const auto& s : bad) os << " [" << s << "]";
            out.details.push_back(os.str());
        }
    }
    out.hypothesis_counts = {
        {"cone-generating <=> (a)", h_cone},
        {"finite type two <=> (a)", h_ft2},
        {"tumanov => (b)", h_tum},
        {"(a) and d > (n-1)^2 => (b)", h_codim},
        {"d = 1: (b) => (a)", h_hyp},
        {"d > n^2 => not (a)", h_excess},
    };
    return out;
}

}  // namespace crquad
