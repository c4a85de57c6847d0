#include "crquad/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace crquad {

std::size_t Monomial::total_degree() const {
    return std::accumulate(exps.begin(), exps.end(), std::size_t{0});
}

bool Monomial::is_constant() const {
    return std::all_of(exps.begin(), exps.end(), [](std::uint16_t e) { return e == 0; });
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    std::size_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.exps.size() && i < b.exps.size(); ++i)
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
    return a.exps.size() < b.exps.size();
}

MultiPoly MultiPoly::constant(const VarEnv& env, const GaussianRational& c) {
    MultiPoly p(env);
    if (!c.is_zero()) p.terms_[Monomial{std::vector<std::uint16_t>(env.total(), 0)}] = c;
    return p;
}

std::size_t MultiPoly::slot(Var kind, std::size_t index) const {
    std::size_t base = 0, count = 0;
    switch (kind) {
        case Var::Z: base = 0; count = env_.n; break;
        case Var::Zb: base = env_.n; count = env_.n; break;
        case Var::U: base = 2 * env_.n; count = env_.d; break;
        case Var::W: base = 2 * env_.n + env_.d; count = env_.d; break;
    }
    if (index >= count) throw ValidationError("variable index out of range");
    return base + index;
}

MultiPoly MultiPoly::variable(const VarEnv& env, Var kind, std::size_t index, std::uint16_t exp) {
    MultiPoly p(env);
    Monomial m{std::vector<std::uint16_t>(env.total(), 0)};
    m.exps[p.slot(kind, index)] = exp;
    if (exp == 0) return constant(env, GaussianRational(1));
    p.terms_[m] = GaussianRational(1);
    return p;
}

std::size_t MultiPoly::block_degree(const Monomial& m, Var kind) const {
    std::size_t base = 0, count = 0;
    switch (kind) {
        case Var::Z: base = 0; count = env_.n; break;
        case Var::Zb: base = env_.n; count = env_.n; break;
        case Var::U: base = 2 * env_.n; count = env_.d; break;
        case Var::W: base = 2 * env_.n + env_.d; count = env_.d; break;
    }
    std::size_t s = 0;
    for (std::size_t i = 0; i < count; ++i) s += m.exps[base + i];
    return s;
}

std::size_t MultiPoly::total_degree() const {
    std::size_t deg = 0;
    for (const auto& [m, c] : terms_) deg = std::max(deg, m.total_degree());
    return deg;
}

std::size_t MultiPoly::max_block_degree(Var kind) const {
    std::size_t deg = 0;
    for (const auto& [m, c] : terms_) deg = std::max(deg, block_degree(m, kind));
    return deg;
}

std::size_t MultiPoly::weight() const {
    std::size_t wt = 0;
    for (const auto& [m, c] : terms_) {
        std::size_t v = block_degree(m, Var::Z) + block_degree(m, Var::Zb) +
                        2 * block_degree(m, Var::U) + 2 * block_degree(m, Var::W);
        wt = std::max(wt, v);
    }
    return wt;
}

bool MultiPoly::is_weighted_homogeneous(std::size_t q) const {
    for (const auto& [m, c] : terms_) {
        std::size_t v = block_degree(m, Var::Z) + block_degree(m, Var::Zb) +
                        2 * block_degree(m, Var::U) + 2 * block_degree(m, Var::W);
        if (v != q) return false;
    }
    return true;
}

void MultiPoly::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    if (m.exps.size() != env_.total()) throw ValidationError("monomial size mismatch");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiPoly::require_compatible(const MultiPoly& o) const {
    if (!env_.compatible(o.env_)) throw ValidationError("polynomial environment mismatch");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(env_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_compatible(b);
    MultiPoly r(a.env_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::scaled(const GaussianRational& c) const {
    MultiPoly r(env_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

MultiPoly MultiPoly::conj() const {
    MultiPoly r(env_);
    for (const auto& [m, c] : terms_) {
        if (block_degree(m, Var::W) != 0)
            throw ValidationError("formal conjugation of a polynomial containing w");
        Monomial mm = m;
        for (std::size_t i = 0; i < env_.n; ++i)
            std::swap(mm.exps[i], mm.exps[env_.n + i]);
        r.terms_.emplace(std::move(mm), c.conj());
    }
    return r;
}

MultiPoly MultiPoly::real_part() const {
    MultiPoly r = *this;
    r += conj();
    return r.scaled(GaussianRational(Rational(1, 2)));
}

MultiPoly MultiPoly::imag_part() const {
    MultiPoly r = *this;
    r -= conj();
    // 1/(2i) = -i/2
    return r.scaled(GaussianRational(Rational(0), Rational(-1, 2)));
}

MultiPoly MultiPoly::partial(Var kind, std::size_t index) const {
    const std::size_t s = slot(kind, index);
    MultiPoly r(env_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[s] == 0) continue;
        Monomial mm = m;
        const long e = mm.exps[s];
        mm.exps[s] -= 1;
        r.add_term(mm, c * GaussianRational(Rational(e)));
    }
    return r;
}

MultiPoly MultiPoly::substitute(Var kind, std::size_t index, const MultiPoly& replacement) const {
    require_compatible(replacement);
    const std::size_t s = slot(kind, index);
    std::vector<MultiPoly> powers{constant(env_, GaussianRational(1))};
    MultiPoly r(env_);
    for (const auto& [m, c] : terms_) {
        const std::uint16_t e = m.exps[s];
        while (powers.size() <= e) powers.push_back(powers.back() * replacement);
        Monomial mm = m;
        mm.exps[s] = 0;
        MultiPoly base(env_);
        base.terms_.emplace(std::move(mm), c);
        r += base * powers[e];
    }
    return r;
}

MultiPoly MultiPoly::extract_bidegree(std::size_t k, std::size_t l) const {
    MultiPoly r(env_);
    for (const auto& [m, c] : terms_)
        if (block_degree(m, Var::Z) == k && block_degree(m, Var::Zb) == l)
            r.terms_.emplace(m, c);
    return r;
}

GaussianRational MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

GaussianRational MultiPoly::evaluate(const std::vector<GaussianRational>& point) const {
    if (point.size() != env_.total()) throw ValidationError("evaluate: one value required per variable slot");
    GaussianRational acc(0);
    for (const auto& [m, c] : terms_) {
        GaussianRational t = c;
        for (std::size_t s = 0; s < point.size(); ++s)
            for (std::uint16_t e = 0; e < m.exps[s]; ++e) t = t * point[s];
        acc = acc + t;
    }
    return acc;
}

MultiPoly MultiPoly::compose(const VarEnv& out_env, const std::vector<MultiPoly>& images) const {
    if (images.size() != env_.total())
        throw ValidationError("compose: one image required per variable slot");
    MultiPoly r(out_env);
    std::vector<std::vector<MultiPoly>> powers(images.size());
    for (auto& pw : powers) pw.push_back(MultiPoly::constant(out_env, GaussianRational(1)));
    for (const auto& [m, c] : terms_) {
        MultiPoly term = MultiPoly::constant(out_env, c);
        for (std::size_t s = 0; s < images.size(); ++s) {
            const std::uint16_t e = m.exps[s];
            if (e == 0) continue;
            if (!images[s].env().compatible(out_env))
                throw ValidationError("compose: missing image for a used variable");
            while (powers[s].size() <= e) powers[s].push_back(powers[s].back() * images[s]);
            term = term * powers[s][e];
        }
        r += term;
    }
    return r;
}

std::string MultiPoly::monomial_str(const Monomial& m) const {
    std::string out;
    auto emit = [&](const std::string& name, std::size_t idx, std::uint16_t e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += name + std::to_string(idx + 1);
        if (e > 1) out += "^" + std::to_string(e);
    };
    for (std::size_t i = 0; i < env_.n; ++i) emit("z", i, m.exps[i]);
    for (std::size_t i = 0; i < env_.n; ++i) emit("zb", i, m.exps[env_.n + i]);
    for (std::size_t i = 0; i < env_.d; ++i) emit(env_.u_display, i, m.exps[2 * env_.n + i]);
    for (std::size_t i = 0; i < env_.d; ++i) emit("w", i, m.exps[2 * env_.n + env_.d + i]);
    return out;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // descending graded-lex
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        // single-term coefficient beginning with '-': fold the sign into the join
        const bool simple_negative =
            cs[0] == '-' && cs.find('+') == std::string::npos && cs.find('-', 1) == std::string::npos;
        if (!out.empty()) {
            out += simple_negative ? " - " : " + ";
            if (simple_negative) cs = cs.substr(1);
        }
        const bool composite =
            cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos;
        const std::string ms = monomial_str(m);
        if (ms.empty())
            out += cs;
        else if (cs == "1")
            out += ms;
        else if (cs == "-1")
            out += "-" + ms;
        else
            out += (composite ? "(" + cs + ")" : cs) + "*" + ms;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    return os << p.str();
}

}  // namespace crquad
