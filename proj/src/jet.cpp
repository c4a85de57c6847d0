#include "crquad/jet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace crquad {

namespace {

std::size_t slot_z(const VarEnv& e, std::size_t i) {
    (void)e;
    return i;
}
std::size_t slot_u(const VarEnv& e, std::size_t s) { return 2 * e.n + s; }
std::size_t slot_w(const VarEnv& e, std::size_t s) { return 2 * e.n + e.d + s; }

std::size_t mono_zdeg(const VarEnv& e, const Monomial& m) {
    std::size_t t = 0;
    for (std::size_t i = 0; i < e.n; ++i) t += m.exps[slot_z(e, i)];
    return t;
}

std::size_t mono_wdeg(const VarEnv& e, const Monomial& m) {
    std::size_t t = 0;
    for (std::size_t s = 0; s < e.d; ++s) t += m.exps[slot_w(e, s)];
    return t;
}

MultiPoly mono_poly(const VarEnv& e, const Monomial& m, const GaussianRational& c) {
    MultiPoly p(e);
    p.add_term(m, c);
    return p;
}

// Precomputed polynomial shards of the model: the defining forms as
// polynomials, plus per-form row and column pairings against z and zb.
struct ModelPolys {
    VarEnv env;
    std::vector<MultiPoly> rho;                  // <A_j z, z>
    std::vector<std::vector<MultiPoly>> rowz;    // rowz[j][k] = sum_l A_j[k][l] z_l
    std::vector<std::vector<MultiPoly>> colzb;   // colzb[j][k] = sum_l zb_l A_j[l][k]
};

ModelPolys make_model_polys(const QuadricModel& m) {
    ModelPolys mp;
    mp.env = m.env();
    const std::size_t n = m.n(), d = m.d();
    for (std::size_t j = 0; j < d; ++j) {
        mp.rho.push_back(m.levi_poly(j));
        std::vector<MultiPoly> row, col;
        for (std::size_t k = 0; k < n; ++k) {
            MultiPoly r(mp.env), c(mp.env);
            for (std::size_t l = 0; l < n; ++l) {
                const GaussianRational& a_kl = m.form(j).at(k, l);
                if (!a_kl.is_zero()) r += MultiPoly::variable(mp.env, Var::Z, l).scaled(a_kl);
                const GaussianRational& a_lk = m.form(j).at(l, k);
                if (!a_lk.is_zero()) c += MultiPoly::variable(mp.env, Var::Zb, l).scaled(a_lk);
            }
            row.push_back(std::move(r));
            col.push_back(std::move(c));
        }
        mp.rowz.push_back(std::move(row));
        mp.colzb.push_back(std::move(col));
    }
    return mp;
}

using DeltaFn = std::function<MultiPoly(const MultiPoly&)>;

struct Contrib {
    int eq;  // 1..8 for the structured equations, 0 for raw identity rows
    std::size_t j;
    MultiPoly poly;
};

// Linear contribution of a single structured-route unknown (one block
// monomial with a fixed coefficient) to each equation family. The equations,
// by bidegree in (z, zb):
//   E1  Im g0 = 0
//   E2  i g1 + 2 <f0-bar, A z> = 0
//   E3  <zb, A f2> - 2i <(D f0)-bar, A z> = 0
//   E4  <(D^2 f0)-bar, A z> = 0
//   E5  2 Re <f1-bar, A z> - Re D g0 = 0
//   E6  Im <(D f1)-bar, A z> = 0
//   E7  Re D^3 g0 = 0
//   E8  <zb, A (D f2)> = 0        (consequence of E3 and E4)
// where D is the tangential derivation handed in as `dl`.
std::vector<Contrib> structured_contributions(const ModelPolys& mp, bool in_f, std::size_t comp,
                                              std::size_t zdeg, const MultiPoly& p,
                                              const DeltaFn& dl, bool include_redundant) {
    std::vector<Contrib> out;
    const std::size_t d = mp.env.d;
    auto push = [&](int eq, std::size_t j, MultiPoly q) {
        if (!q.is_zero()) out.push_back({eq, j, std::move(q)});
    };
    if (in_f) {
        const std::size_t k = comp;
        if (zdeg == 0) {
            MultiPoly dp = dl(p);
            MultiPoly ddp = dl(dp);
            for (std::size_t j = 0; j < d; ++j) {
                push(2, j, (p.conj() * mp.rowz[j][k]).scaled(GaussianRational(2)));
                push(3, j, (dp.conj() * mp.rowz[j][k]).scaled(GaussianRational(Rational(0), Rational(-2))));
                push(4, j, ddp.conj() * mp.rowz[j][k]);
            }
        } else if (zdeg == 1) {
            MultiPoly dp = dl(p);
            for (std::size_t j = 0; j < d; ++j) {
                push(5, j, (p.conj() * mp.rowz[j][k]).real_part().scaled(GaussianRational(2)));
                push(6, j, (dp.conj() * mp.rowz[j][k]).imag_part());
            }
        } else {
            MultiPoly dp = dl(p);
            for (std::size_t j = 0; j < d; ++j) {
                push(3, j, mp.colzb[j][k] * p);
                if (include_redundant) push(8, j, mp.colzb[j][k] * dp);
            }
        }
    } else {
        const std::size_t j = comp;
        if (zdeg == 0) {
            MultiPoly dp = dl(p);
            push(1, j, p.imag_part());
            push(5, j, -dp.real_part());
            push(7, j, dl(dl(dp)).real_part());
        } else {
            push(2, j, p.scaled(GaussianRational::i()));
        }
    }
    return out;
}

struct RowKey {
    int eq;
    std::size_t j;
    int part;  // 0 = real, 1 = imaginary
    Monomial mono;
};

struct RowKeyLess {
    bool operator()(const RowKey& a, const RowKey& b) const {
        if (a.eq != b.eq) return a.eq < b.eq;
        if (a.j != b.j) return a.j < b.j;
        if (a.part != b.part) return a.part < b.part;
        return grlex_less(a.mono, b.mono);
    }
};

using RowMap = std::map<RowKey, std::vector<SparseRealMatrix::Entry>, RowKeyLess>;

void scatter(RowMap& rows, const std::vector<Contrib>& cs, std::size_t col) {
    for (const auto& c : cs)
        for (const auto& [m, coef] : c.poly.terms()) {
            if (!coef.re().is_zero()) rows[RowKey{c.eq, c.j, 0, m}].push_back({col, coef.re()});
            if (!coef.im().is_zero()) rows[RowKey{c.eq, c.j, 1, m}].push_back({col, coef.im()});
        }
}

// All (z, w)-monomials of a single component allowed by the footprint.
std::vector<Monomial> component_monomials(const VarEnv& env, bool shared_budget,
                                          std::size_t z_cap, std::size_t w_cap) {
    std::vector<std::size_t> zslots, wslots;
    for (std::size_t i = 0; i < env.n; ++i) zslots.push_back(slot_z(env, i));
    for (std::size_t s = 0; s < env.d; ++s) wslots.push_back(slot_w(env, s));

    std::vector<Monomial> out;
    std::vector<std::uint16_t> exps(env.total(), 0);
    auto rec = [&](auto&& self, const std::vector<std::size_t>& slots, std::size_t idx,
                   std::size_t left, const std::function<void(std::size_t)>& done) -> void {
        if (idx == slots.size()) {
            done(left);
            return;
        }
        for (std::uint16_t e = 0; e <= left; ++e) {
            exps[slots[idx]] = e;
            self(self, slots, idx + 1, left - e, done);
        }
        exps[slots[idx]] = 0;
    };

    if (shared_budget) {
        std::vector<std::size_t> all = zslots;
        all.insert(all.end(), wslots.begin(), wslots.end());
        rec(rec, all, 0, z_cap, [&](std::size_t) { out.push_back(Monomial{exps}); });
    } else {
        rec(rec, zslots, 0, z_cap, [&](std::size_t) {
            rec(rec, wslots, 0, w_cap, [&](std::size_t) { out.push_back(Monomial{exps}); });
        });
    }
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
}

std::vector<JetSystem::Column> enumerate_columns(const VarEnv& env, const Footprint& fp) {
    std::vector<JetSystem::Column> cols;
    std::vector<Monomial> f_monos, g_monos;
    if (fp.kind == Footprint::Kind::TotalDegree) {
        if (fp.cap < 1) throw ValidationError("general ansatz cap must be at least 1");
        f_monos = component_monomials(env, true, fp.cap, fp.cap);
        g_monos = f_monos;
    } else {
        f_monos = component_monomials(env, false, 2, fp.cap);
        g_monos = component_monomials(env, false, 1, fp.cap);
    }
    for (std::size_t k = 0; k < env.n; ++k)
        for (const auto& m : f_monos) cols.push_back({true, k, m});
    for (std::size_t j = 0; j < env.d; ++j)
        for (const auto& m : g_monos) cols.push_back({false, j, m});
    return cols;
}

SparseRealMatrix rows_to_matrix(RowMap&& rows, std::size_t cols) {
    SparseRealMatrix mat(cols);
    for (auto& [key, entries] : rows) mat.add_row(std::move(entries));
    return mat;
}

// Memoized products of (u_s + i rho_s)^{gamma_s}: the image of w^gamma under
// restriction to the model.
class WPowers {
public:
    WPowers(const ModelPolys& mp) : mp_(mp) {
        for (std::size_t s = 0; s < mp.env.d; ++s)
            bases_.push_back(MultiPoly::variable(mp.env, Var::U, s) +
                             mp.rho[s].scaled(GaussianRational::i()));
        memo_[std::vector<std::uint16_t>(mp.env.d, 0)] = MultiPoly::constant(mp_.env, GaussianRational(1));
    }

    const MultiPoly& get(const std::vector<std::uint16_t>& gamma) {
        auto it = memo_.find(gamma);
        if (it != memo_.end()) return it->second;
        std::size_t s = 0;
        while (gamma[s] == 0) ++s;
        std::vector<std::uint16_t> prev = gamma;
        --prev[s];
        MultiPoly val = get(prev) * bases_[s];
        return memo_.emplace(gamma, std::move(val)).first->second;
    }

private:
    const ModelPolys& mp_;
    std::vector<MultiPoly> bases_;
    std::map<std::vector<std::uint16_t>, MultiPoly> memo_;
};

std::vector<std::uint16_t> w_exps(const VarEnv& env, const Monomial& m) {
    std::vector<std::uint16_t> g(env.d, 0);
    for (std::size_t s = 0; s < env.d; ++s) g[s] = m.exps[slot_w(env, s)];
    return g;
}

// Substitute w_s -> u_s + i rho_s throughout.
MultiPoly restrict_to_model(const MultiPoly& p, const ModelPolys& mp) {
    MultiPoly out = p;
    for (std::size_t s = 0; s < mp.env.d; ++s)
        out = out.substitute(Var::W, s,
                             MultiPoly::variable(mp.env, Var::U, s) +
                                 mp.rho[s].scaled(GaussianRational::i()));
    return out;
}

}  // namespace

HolMapPair::HolMapPair(std::vector<MultiPoly> f_parts, std::vector<MultiPoly> g_parts)
    : f(std::move(f_parts)), g(std::move(g_parts)) {
    if (f.empty() || g.empty())
        throw ValidationError("map pair needs at least one component on each side");
    const VarEnv& e = f.front().env();
    if (f.size() != e.n || g.size() != e.d)
        throw ValidationError("map pair has wrong component counts for its variable set");
    auto check = [&](const MultiPoly& p) {
        if (!p.env().compatible(e))
            throw ValidationError("map pair components disagree on variables");
        if (p.max_block_degree(Var::Zb) > 0 || p.max_block_degree(Var::U) > 0)
            throw ValidationError("holomorphic components may only involve z and w");
    };
    for (const auto& p : f) check(p);
    for (const auto& p : g) check(p);
}

HolMapPair HolMapPair::zero(const VarEnv& env) {
    return HolMapPair(std::vector<MultiPoly>(env.n, MultiPoly(env)),
                      std::vector<MultiPoly>(env.d, MultiPoly(env)));
}

bool HolMapPair::is_zero() const {
    auto z = [](const MultiPoly& p) { return p.is_zero(); };
    return std::all_of(f.begin(), f.end(), z) && std::all_of(g.begin(), g.end(), z);
}

std::size_t HolMapPair::total_degree() const {
    std::size_t t = 0;
    for (const auto& p : f) t = std::max(t, p.total_degree());
    for (const auto& p : g) t = std::max(t, p.total_degree());
    return t;
}

HolMapPair& HolMapPair::operator+=(const HolMapPair& o) {
    if (f.size() != o.f.size() || g.size() != o.g.size())
        throw ValidationError("cannot add map pairs of different shapes");
    for (std::size_t k = 0; k < f.size(); ++k) f[k] += o.f[k];
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += o.g[j];
    return *this;
}

HolMapPair HolMapPair::scaled(const GaussianRational& c) const {
    HolMapPair out = *this;
    for (auto& p : out.f) p = p.scaled(c);
    for (auto& p : out.g) p = p.scaled(c);
    return out;
}

bool HolMapPair::operator==(const HolMapPair& o) const { return f == o.f && g == o.g; }

std::vector<WeightedComponent> decompose_weighted(const HolMapPair& pair) {
    const VarEnv& e = pair.env();
    std::map<std::size_t, HolMapPair> parts;
    auto bucket = [&](std::size_t wt) -> HolMapPair& {
        auto it = parts.find(wt);
        if (it == parts.end()) it = parts.emplace(wt, HolMapPair::zero(e)).first;
        return it->second;
    };
    for (std::size_t k = 0; k < pair.f.size(); ++k)
        for (const auto& [m, c] : pair.f[k].terms())
            bucket(mono_zdeg(e, m) + 2 * mono_wdeg(e, m)).f[k].add_term(m, c);
    for (std::size_t j = 0; j < pair.g.size(); ++j)
        for (const auto& [m, c] : pair.g[j].terms())
            bucket(mono_zdeg(e, m) + 2 * mono_wdeg(e, m)).g[j].add_term(m, c);
    std::vector<WeightedComponent> out;
    for (auto& [wt, part] : parts) out.push_back({wt, std::move(part)});
    return out;
}

MultiPoly delta(const MultiPoly& phi, const QuadricModel& model) {
    if (!phi.env().compatible(model.env()))
        throw ValidationError("polynomial does not live in the model's variables");
    MultiPoly acc(phi.env());
    for (std::size_t s = 0; s < model.d(); ++s) {
        MultiPoly part = phi.partial(Var::U, s);
        if (!part.is_zero()) acc += model.levi_poly(s) * part;
    }
    return acc;
}

std::vector<MultiPoly> expand_basic_identity(const HolMapPair& pair, const QuadricModel& model) {
    if (!pair.env().compatible(model.env()))
        throw ValidationError("map pair does not live in the model's variables");
    ModelPolys mp = make_model_polys(model);
    std::vector<MultiPoly> ft, gt;
    for (const auto& p : pair.f) ft.push_back(restrict_to_model(p, mp));
    for (const auto& p : pair.g) gt.push_back(restrict_to_model(p, mp));
    std::vector<MultiPoly> out;
    for (std::size_t j = 0; j < model.d(); ++j) {
        MultiPoly x = gt[j].scaled(GaussianRational::i());
        for (std::size_t k = 0; k < model.n(); ++k)
            x += (ft[k].conj() * mp.rowz[j][k]).scaled(GaussianRational(2));
        out.push_back(x.real_part());
    }
    return out;
}

bool satisfies_tangency_identity(const HolMapPair& pair, const QuadricModel& model) {
    auto es = expand_basic_identity(pair, model);
    return std::all_of(es.begin(), es.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

bool is_finite_map_tangent(const HolMapPair& pair, const QuadricModel& model) {
    if (!pair.env().compatible(model.env()))
        throw ValidationError("map pair does not live in the model's variables");
    ModelPolys mp = make_model_polys(model);
    std::vector<MultiPoly> ft, gt;
    for (const auto& p : pair.f) ft.push_back(restrict_to_model(p, mp));
    for (const auto& p : pair.g) gt.push_back(restrict_to_model(p, mp));
    for (std::size_t j = 0; j < model.d(); ++j) {
        MultiPoly s = gt[j].imag_part();
        for (std::size_t k = 0; k < model.n(); ++k)
            for (std::size_t l = 0; l < model.n(); ++l) {
                const GaussianRational& a_kl = model.form(j).at(k, l);
                if (!a_kl.is_zero()) s -= (ft[k].conj() * ft[l]).scaled(a_kl);
            }
        if (!s.is_zero()) return false;
    }
    return true;
}

HolMapPair JetSystem::reassemble(const std::vector<Rational>& kernel_vector) const {
    if (kernel_vector.size() != 2 * columns.size())
        throw ValidationError("kernel vector length does not match the system");
    HolMapPair out = HolMapPair::zero(env);
    for (std::size_t t = 0; t < columns.size(); ++t) {
        GaussianRational c(kernel_vector[2 * t], kernel_vector[2 * t + 1]);
        if (c.is_zero()) continue;
        const Column& col = columns[t];
        (col.in_f ? out.f[col.comp] : out.g[col.comp]).add_term(col.mono, c);
    }
    return out;
}

JetSystem assemble_system_direct(const QuadricModel& model, std::size_t u_degree_cap,
                                 bool include_redundant) {
    ModelPolys mp = make_model_polys(model);
    const VarEnv& env = mp.env;
    JetSystem sys;
    sys.env = env;
    sys.columns = enumerate_columns(env, Footprint::direct_blocks(u_degree_cap));

    DeltaFn dl = [&](const MultiPoly& q) {
        MultiPoly acc(env);
        for (std::size_t s = 0; s < env.d; ++s) {
            MultiPoly part = q.partial(Var::U, s);
            if (!part.is_zero()) acc += mp.rho[s] * part;
        }
        return acc;
    };

    RowMap rows;
    for (std::size_t t = 0; t < sys.columns.size(); ++t) {
        const auto& col = sys.columns[t];
        // move the w-exponents of the column onto the u slots: the block
        // coefficient function u^gamma attached to z^beta
        Monomial block = col.mono;
        for (std::size_t s = 0; s < env.d; ++s) {
            block.exps[slot_u(env, s)] = block.exps[slot_w(env, s)];
            block.exps[slot_w(env, s)] = 0;
        }
        std::size_t zdeg = mono_zdeg(env, col.mono);
        for (int part = 0; part < 2; ++part) {
            GaussianRational c = part == 0 ? GaussianRational(1) : GaussianRational::i();
            auto cs = structured_contributions(mp, col.in_f, col.comp, zdeg,
                                               mono_poly(env, block, c), dl, include_redundant);
            scatter(rows, cs, 2 * t + part);
        }
    }
    sys.matrix = rows_to_matrix(std::move(rows), 2 * sys.columns.size());
    return sys;
}

JetSystem assemble_system_general(const QuadricModel& model, const Footprint& footprint) {
    ModelPolys mp = make_model_polys(model);
    const VarEnv& env = mp.env;
    JetSystem sys;
    sys.env = env;
    sys.columns = enumerate_columns(env, footprint);

    WPowers wp(mp);
    RowMap rows;
    for (std::size_t t = 0; t < sys.columns.size(); ++t) {
        const auto& col = sys.columns[t];
        Monomial zpart = col.mono;
        for (std::size_t s = 0; s < env.d; ++s) zpart.exps[slot_w(env, s)] = 0;
        MultiPoly restricted = mono_poly(env, zpart, GaussianRational(1)) * wp.get(w_exps(env, col.mono));
        for (int part = 0; part < 2; ++part) {
            GaussianRational c = part == 0 ? GaussianRational(1) : GaussianRational::i();
            MultiPoly p = restricted.scaled(c);
            std::vector<Contrib> cs;
            if (col.in_f) {
                for (std::size_t j = 0; j < env.d; ++j) {
                    MultiPoly e = (p.conj() * mp.rowz[j][col.comp]).scaled(GaussianRational(2)).real_part();
                    if (!e.is_zero()) cs.push_back({0, j, std::move(e)});
                }
            } else {
                MultiPoly e = p.scaled(GaussianRational::i()).real_part();
                if (!e.is_zero()) cs.push_back({0, col.comp, std::move(e)});
            }
            scatter(rows, cs, 2 * t + part);
        }
    }
    sys.matrix = rows_to_matrix(std::move(rows), 2 * sys.columns.size());
    return sys;
}

JetSystem assemble_system_general(const QuadricModel& model, std::size_t total_degree_cap) {
    return assemble_system_general(model, Footprint::total_degree(total_degree_cap));
}

SolutionSpace solve_system(const JetSystem& system) {
    SolutionSpace out;
    auto ker = system.matrix.kernel();
    out.dimension = ker.dimension;
    const VarEnv& env = system.env;
    for (const auto& v : ker.basis) {
        HolMapPair pair = system.reassemble(v);
        for (std::size_t k = 0; k < pair.f.size(); ++k)
            for (const auto& [m, c] : pair.f[k].terms()) {
                std::size_t zd = mono_zdeg(env, m), wd = mono_wdeg(env, m);
                if (zd == 0) out.max_wdeg_f0 = std::max(out.max_wdeg_f0, wd);
                else if (zd == 1) out.max_wdeg_f1 = std::max(out.max_wdeg_f1, wd);
                else if (zd == 2) out.max_wdeg_f2 = std::max(out.max_wdeg_f2, wd);
                else out.f_has_high_zdeg = true;
                out.max_weight = std::max(out.max_weight, zd + 2 * wd);
            }
        for (std::size_t j = 0; j < pair.g.size(); ++j)
            for (const auto& [m, c] : pair.g[j].terms()) {
                std::size_t zd = mono_zdeg(env, m), wd = mono_wdeg(env, m);
                if (zd == 0) out.max_wdeg_g0 = std::max(out.max_wdeg_g0, wd);
                else if (zd == 1) out.max_wdeg_g1 = std::max(out.max_wdeg_g1, wd);
                else out.g_has_high_zdeg = true;
                out.max_weight = std::max(out.max_weight, zd + 2 * wd);
            }
        out.basis.push_back(std::move(pair));
    }
    return out;
}

SolutionSpace solve_jet_system(const QuadricModel& model, std::size_t cap, Route route) {
    JetSystem sys = route == Route::Direct ? assemble_system_direct(model, cap)
                                           : assemble_system_general(model, cap);
    return solve_system(sys);
}

TruncationReport truncation_report(const SolutionSpace& space) {
    TruncationReport rep;
    for (std::size_t e = 0; e < space.basis.size(); ++e) {
        const HolMapPair& pair = space.basis[e];
        const VarEnv& env = pair.env();
        for (std::size_t k = 0; k < pair.f.size(); ++k)
            for (const auto& [m, c] : pair.f[k].terms())
                if (mono_zdeg(env, m) >= 3) {
                    std::ostringstream os;
                    os << "basis element " << e + 1 << ": f component " << k + 1
                       << " contains " << pair.f[k].monomial_str(m) << " (z-degree "
                       << mono_zdeg(env, m) << ")";
                    rep.violations.push_back(os.str());
                }
        for (std::size_t j = 0; j < pair.g.size(); ++j)
            for (const auto& [m, c] : pair.g[j].terms())
                if (mono_zdeg(env, m) >= 2) {
                    std::ostringstream os;
                    os << "basis element " << e + 1 << ": g component " << j + 1
                       << " contains " << pair.g[j].monomial_str(m) << " (z-degree "
                       << mono_zdeg(env, m) << ")";
                    rep.violations.push_back(os.str());
                }
    }
    return rep;
}

PdSystem::PdSystem(const QuadricModel& model) : d_(model.d()), symbol_env_{0, model.d(), "D"} {
    ModelPolys mp = make_model_polys(model);
    VarEnv env = mp.env;
    env.u_display = "D";

    // symbol of the tangential derivation: multiplication by sum_s rho_s D_s
    MultiPoly sigma(env);
    for (std::size_t s = 0; s < env.d; ++s)
        sigma += mp.rho[s] * MultiPoly::variable(env, Var::U, s);
    DeltaFn dl = [&](const MultiPoly& q) { return sigma * q; };

    auto cols = enumerate_columns(env, Footprint::direct_blocks(0));
    block_count_ = cols.size();

    struct PdKeyLess {
        bool operator()(const RowKey& a, const RowKey& b) const { return RowKeyLess{}(a, b); }
    };
    std::map<RowKey, std::map<std::size_t, MultiPoly>, PdKeyLess> acc;

    for (std::size_t t = 0; t < cols.size(); ++t) {
        const auto& col = cols[t];
        std::size_t zdeg = mono_zdeg(env, col.mono);
        for (int part = 0; part < 2; ++part) {
            GaussianRational c = part == 0 ? GaussianRational(1) : GaussianRational::i();
            auto cs = structured_contributions(mp, col.in_f, col.comp, zdeg,
                                               mono_poly(env, col.mono, c), dl, true);
            for (const auto& contrib : cs)
                for (const auto& [m, coef] : contrib.poly.terms()) {
                    Monomial mz = m;
                    Monomial md{std::vector<std::uint16_t>(symbol_env_.total(), 0)};
                    for (std::size_t s = 0; s < env.d; ++s) {
                        md.exps[s] = m.exps[slot_u(env, s)];
                        mz.exps[slot_u(env, s)] = 0;
                    }
                    auto add = [&](int re_im, const Rational& v) {
                        if (v.is_zero()) return;
                        auto& entry = acc[RowKey{contrib.eq, contrib.j, re_im, mz}]
                                          .try_emplace(2 * t + part, MultiPoly(symbol_env_))
                                          .first->second;
                        entry.add_term(md, GaussianRational(v));
                    };
                    add(0, coef.re());
                    add(1, coef.im());
                }
        }
    }
    for (auto& [key, entries] : acc) {
        Row row;
        for (auto& [col, poly] : entries)
            if (!poly.is_zero()) row.entries.emplace_back(col, std::move(poly));
        if (!row.entries.empty()) rows_.push_back(std::move(row));
    }
}

std::size_t PdSystem::symbol_kernel_dimension(const std::vector<GaussianRational>& zeta) const {
    if (zeta.size() != d_)
        throw ValidationError("direction vector has wrong length for the model");
    std::vector<GaussianRational> point(symbol_env_.total(), GaussianRational(0));
    for (std::size_t s = 0; s < d_; ++s) point[s] = zeta[s];
    ExactMatrix mat(std::max<std::size_t>(rows_.size(), 1), 2 * block_count_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [col, poly] : rows_[r].entries) mat.at(r, col) = poly.evaluate(point);
    return solve_homogeneous(mat).dimension;
}

bool PdSystem::characteristic(const std::vector<GaussianRational>& zeta) const {
    return symbol_kernel_dimension(zeta) > 0;
}

bool char_variety_test(const QuadricModel& model, const std::vector<GaussianRational>& zeta,
                       std::size_t cap) {
    (void)cap;  // the symbol matrix does not depend on a truncation order
    return PdSystem(model).characteristic(zeta);
}

std::vector<std::vector<GaussianRational>> char_variety_probes(std::size_t d) {
    if (d == 0) throw ValidationError("model codimension must be positive");
    std::vector<std::vector<GaussianRational>> out;
    auto push = [&](std::vector<GaussianRational> v) {
        if (out.size() >= 19) return;
        if (std::all_of(v.begin(), v.end(), [](const GaussianRational& c) { return c.is_zero(); }))
            return;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    };
    auto unit = [&](std::size_t i, long s) {
        std::vector<GaussianRational> v(d, GaussianRational(0));
        v[i] = GaussianRational(s);
        return v;
    };
    for (std::size_t i = 0; i < d; ++i) push(unit(i, 1));
    for (std::size_t i = 0; i < d; ++i) push(unit(i, -1));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            auto v = unit(i, 1);
            v[j] = GaussianRational(1);
            push(v);
            v[j] = GaussianRational(-1);
            push(v);
        }
    {
        std::vector<GaussianRational> ones(d, GaussianRational(1));
        push(ones);
        std::vector<GaussianRational> alt(d);
        for (std::size_t i = 0; i < d; ++i) alt[i] = GaussianRational(i % 2 == 0 ? 1 : -1);
        push(alt);
    }
    for (long k = 2; out.size() < 19; ++k) push(unit(0, k));
    std::vector<GaussianRational> gauss(d, GaussianRational(1));
    gauss[0] = GaussianRational(Rational(1, 2), Rational(1, 3));
    out.push_back(std::move(gauss));
    return out;
}

std::vector<GaussianRational> two_jet(const HolMapPair& pair) {
    const VarEnv& env = pair.env();
    std::vector<Monomial> monos = component_monomials(env, true, 2, 2);
    std::vector<GaussianRational> out;
    for (const auto& p : pair.f)
        for (const auto& m : monos) out.push_back(p.coefficient(m));
    for (const auto& p : pair.g)
        for (const auto& m : monos) out.push_back(p.coefficient(m));
    return out;
}

bool two_jet_restriction_is_injective(const SolutionSpace& space) {
    if (space.dimension == 0) return true;
    std::vector<std::vector<GaussianRational>> jets;
    for (const auto& pair : space.basis) jets.push_back(two_jet(pair));
    ExactMatrix mat(jets.size(), 2 * jets.front().size());
    for (std::size_t r = 0; r < jets.size(); ++r)
        for (std::size_t c = 0; c < jets[r].size(); ++c) {
            mat.at(r, 2 * c) = GaussianRational(jets[r][c].re());
            mat.at(r, 2 * c + 1) = GaussianRational(jets[r][c].im());
        }
    return mat.rank() == space.dimension;
}

bool jet_determination_check(const QuadricModel& model, const HolMapPair& pair1,
                             const HolMapPair& pair2, std::size_t cap) {
    for (const HolMapPair* p : {&pair1, &pair2}) {
        if (!p->env().compatible(model.env()))
            throw ValidationError("map pair does not live in the model's variables");
        if (p->total_degree() > cap) {
            std::ostringstream os;
            os << "jet cap " << cap << " cannot express a candidate of degree "
               << p->total_degree();
            throw ValidationError(os.str());
        }
        if (!satisfies_tangency_identity(*p, model) && !is_finite_map_tangent(*p, model))
            throw ValidationError(
                "candidate map is neither an infinitesimal nor a finite tangent map of the model");
    }
    if (two_jet(pair1) != two_jet(pair2)) return true;  // nothing to determine
    return pair1 == pair2;
}

}  // namespace crquad
