#pragma once

#include "crquad/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace crquad {

// Variable environment for polynomials in z_1..z_n, zb_1..zb_n (the formal
// conjugates), u_1..u_d and w_1..w_d. Slot layout: [z | zb | u | w].
// u_display customizes how the u block prints ("u", "t", "D", ...); it does
// not affect arithmetic compatibility.
struct VarEnv {
    std::size_t n = 0;
    std::size_t d = 0;
    std::string u_display = "u";

    std::size_t total() const { return 2 * n + 2 * d; }
    bool compatible(const VarEnv& o) const { return n == o.n && d == o.d; }
};

enum class Var : std::uint8_t { Z, Zb, U, W };

// Exponent vector with graded lexicographic ordering (total degree first,
// then lex over the fixed slot order z, zb, u, w).
struct Monomial {
    std::vector<std::uint16_t> exps;

    std::size_t total_degree() const;
    bool is_constant() const;
    bool operator==(const Monomial&) const = default;
};

bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(a, b); }
};

// Sparse multivariate polynomial over Q(i). Canonical: no zero coefficients.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(VarEnv env) : env_(std::move(env)) {}

    static MultiPoly constant(const VarEnv& env, const GaussianRational& c);
    static MultiPoly variable(const VarEnv& env, Var kind, std::size_t index,
                              std::uint16_t exp = 1);

    const VarEnv& env() const { return env_; }
    const std::map<Monomial, GaussianRational, GrlexLess>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    std::size_t slot(Var kind, std::size_t index) const;
    std::size_t block_degree(const Monomial& m, Var kind) const;

    // max over monomials; 0 for the zero polynomial
    std::size_t total_degree() const;
    std::size_t max_block_degree(Var kind) const;
    // z and zb count 1, u and w count 2
    std::size_t weight() const;
    bool is_weighted_homogeneous(std::size_t q) const;

    void add_term(const Monomial& m, const GaussianRational& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

    MultiPoly scaled(const GaussianRational& c) const;

    // Formal conjugation: swaps z and zb exponents, conjugates coefficients,
    // fixes u. Rejects polynomials containing w (no formal conjugate carried).
    MultiPoly conj() const;
    MultiPoly real_part() const;  // (p + conj p)/2
    MultiPoly imag_part() const;  // (p - conj p)/(2i)

    MultiPoly partial(Var kind, std::size_t index) const;

    // Substitutes `replacement` for the named variable. The replacement may
    // mention the variable itself (powers are taken of the full replacement).
    MultiPoly substitute(Var kind, std::size_t index, const MultiPoly& replacement) const;

    // Terms of z-degree k and zb-degree l.
    MultiPoly extract_bidegree(std::size_t k, std::size_t l) const;

    GaussianRational coefficient(const Monomial& m) const;

    // Point evaluation; the point assigns a value to every slot, so z and zb
    // may be given unrelated values (useful after complexification).
    GaussianRational evaluate(const std::vector<GaussianRational>& point) const;

    // Image under slot -> images[slot]; every image must live in out_env.
    // images may leave unused slots empty (zero polynomial of wrong env).
    MultiPoly compose(const VarEnv& out_env, const std::vector<MultiPoly>& images) const;

    std::string str() const;
    std::string monomial_str(const Monomial& m) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.env_.compatible(b.env_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    void require_compatible(const MultiPoly& o) const;

    VarEnv env_;
    std::map<Monomial, GaussianRational, GrlexLess> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace crquad
