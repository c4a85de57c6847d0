#pragma once

#include "crquad/model.hpp"
#include "crquad/sparse.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace crquad {

// A polynomial map germ (f, g): C^n x C^d -> C^n x C^d, holomorphic in the
// sense that only z and w slots may appear (no formal conjugates, no u).
// f has n components, g has d.
struct HolMapPair {
    std::vector<MultiPoly> f;
    std::vector<MultiPoly> g;

    HolMapPair(std::vector<MultiPoly> f_parts, std::vector<MultiPoly> g_parts);

    static HolMapPair zero(const VarEnv& env);

    const VarEnv& env() const { return f.front().env(); }
    bool is_zero() const;
    // max plain total degree over all components
    std::size_t total_degree() const;

    HolMapPair& operator+=(const HolMapPair& o);
    HolMapPair scaled(const GaussianRational& c) const;
    bool operator==(const HolMapPair& o) const;
};

// Piece of a map that rescales as t^q under (z, w) -> (tz, t^2 w).
struct WeightedComponent {
    std::size_t weight = 0;
    HolMapPair part;
};

// Splits a pair into weighted-homogeneous components (ascending weight,
// empty components omitted). The parts sum back to the input.
std::vector<WeightedComponent> decompose_weighted(const HolMapPair& pair);

// The tangential derivation sum_s <A_s z, z> * d/du_s applied to phi.
MultiPoly delta(const MultiPoly& phi, const QuadricModel& model);

// Restriction of the tangency condition for the vector field with components
// (f, g): substitutes w_j = u_j + i<A_j z, z>, forms i*g_j + 2*conj(f)^T A_j z
// and takes the formal real part. One polynomial per defining equation; the
// pair is an infinitesimal automorphism iff every component vanishes.
std::vector<MultiPoly> expand_basic_identity(const HolMapPair& pair, const QuadricModel& model);

// True iff expand_basic_identity vanishes identically.
bool satisfies_tangency_identity(const HolMapPair& pair, const QuadricModel& model);

// Finite-map tangency: Im g_j(z, u+iL) = <A_j f~, f~> for all j, where f~ is
// f restricted the same way. Holds for the identity map; the infinitesimal
// condition above is its linearization.
bool is_finite_map_tangent(const HolMapPair& pair, const QuadricModel& model);

enum class Route { Direct, General };

// Ansatz shape for the assembled linear systems. TotalDegree caps the plain
// total degree in (z, w) of every component. DirectBlocks mirrors the
// structured ansatz: f quadratic in z, g linear in z, coefficient functions
// of degree <= cap in w.
struct Footprint {
    enum class Kind { TotalDegree, DirectBlocks };
    Kind kind = Kind::TotalDegree;
    std::size_t cap = 6;

    static Footprint total_degree(std::size_t c) { return {Kind::TotalDegree, c}; }
    static Footprint direct_blocks(std::size_t c) { return {Kind::DirectBlocks, c}; }
};

// Homogeneous linear system over Q whose kernel vectors are automorphism
// candidates. Each complex unknown is one monomial coefficient of one map
// component; realification interleaves (real, imaginary) parts, so column
// 2t and 2t+1 belong to unknown t.
struct JetSystem {
    struct Column {
        bool in_f = true;        // otherwise in g
        std::size_t comp = 0;    // component index within f or g
        Monomial mono;           // holomorphic monomial (z and w slots only)
    };

    VarEnv env;
    std::vector<Column> columns;
    SparseRealMatrix matrix{0};

    std::size_t unknowns() const { return columns.size(); }
    // kernel_vector.size() must equal 2 * unknowns()
    HolMapPair reassemble(const std::vector<Rational>& kernel_vector) const;
};

// Structured route: unknowns follow the DirectBlocks shape and the equations
// are the seven consequences of the tangency identity sorted by bidegree
// (imaginary part of g at z-degree 0, the linear link between g and f, the
// chain of derivation identities). include_redundant appends the derived
// eighth family, which never changes the kernel.
JetSystem assemble_system_direct(const QuadricModel& model, std::size_t u_degree_cap,
                                 bool include_redundant = true);

// Expansion route: unknowns range over the footprint and the rows are the
// raw coefficients of the expanded tangency identity.
JetSystem assemble_system_general(const QuadricModel& model, const Footprint& footprint);
JetSystem assemble_system_general(const QuadricModel& model, std::size_t total_degree_cap);

struct SolutionSpace {
    std::size_t dimension = 0;
    std::vector<HolMapPair> basis;

    // per-block max w-degree over the basis (f split by z-degree 0/1/2,
    // g by z-degree 0/1)
    std::size_t max_wdeg_f0 = 0, max_wdeg_f1 = 0, max_wdeg_f2 = 0;
    std::size_t max_wdeg_g0 = 0, max_wdeg_g1 = 0;
    // any basis monomial of z-degree >= 3 in f, resp. >= 2 in g
    bool f_has_high_zdeg = false, g_has_high_zdeg = false;
    std::size_t max_weight = 0;
};

SolutionSpace solve_system(const JetSystem& system);
SolutionSpace solve_jet_system(const QuadricModel& model, std::size_t cap, Route route);

// Degree-shape audit of a solution space (meant for general-route spaces):
// flags every basis monomial of z-degree >= 3 in f or >= 2 in g. Empty for
// models with trivial kernel (condition (b)); degenerate directions admit
// genuine violations.
struct TruncationReport {
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

TruncationReport truncation_report(const SolutionSpace& space);

// The function-level system P(D): coefficients of the u-derivative operators
// acting on the block unknowns, with the derivation replaced by the symbol
// variables D_1..D_d. Evaluating at D = zeta tests whether exponential
// solutions e^{<zeta,u>} exist in that direction.
class PdSystem {
public:
    explicit PdSystem(const QuadricModel& model);

    std::size_t unknowns() const { return block_count_; }   // complex block unknowns
    std::size_t rows() const { return rows_.size(); }

    // dimension of the kernel of the symbol matrix at D = zeta
    std::size_t symbol_kernel_dimension(const std::vector<GaussianRational>& zeta) const;
    bool characteristic(const std::vector<GaussianRational>& zeta) const;

private:
    struct Row {
        std::vector<std::pair<std::size_t, MultiPoly>> entries;  // (realified column, symbol poly)
    };

    std::size_t d_ = 0;
    std::size_t block_count_ = 0;
    VarEnv symbol_env_;
    std::vector<Row> rows_;
};

// True iff zeta is a characteristic direction of the model's jet system.
// The cap parameter is accepted for interface symmetry and ignored: the
// symbol matrix is independent of any truncation.
bool char_variety_test(const QuadricModel& model, const std::vector<GaussianRational>& zeta,
                       std::size_t cap = 0);

// Deterministic nonzero probe directions: unit vectors, sign patterns, small
// integer multiples, one Gaussian-rational vector. Always 20 entries.
std::vector<std::vector<GaussianRational>> char_variety_probes(std::size_t d);

// Coefficients of all monomials of plain total degree <= 2, across every
// component, in a fixed order. Two pairs have the same 2-jet iff equal.
std::vector<GaussianRational> two_jet(const HolMapPair& pair);

// Whether the 2-jet map restricted to the span of the basis is injective.
bool two_jet_restriction_is_injective(const SolutionSpace& space);

// Checks two automorphism candidates against the 2-jet rigidity statement:
// returns true iff (equal 2-jets implies equal maps) holds for the pair.
// Throws ValidationError if either candidate fails both tangency tests or
// has degree beyond cap.
bool jet_determination_check(const QuadricModel& model, const HolMapPair& pair1,
                             const HolMapPair& pair2, std::size_t cap);

}  // namespace crquad
