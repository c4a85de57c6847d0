#pragma once

#include "crquad/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crquad {

// Condition (a): the forms A_1..A_d are linearly independent over R.
struct IndependenceResult {
    bool holds = false;
    std::size_t rank = 0;  // of the d x n^2 real coefficient matrix
    std::optional<std::vector<Rational>> relation;  // sum lambda_j A_j = 0 when it fails
};

// Condition (b): the forms have no common kernel vector.
struct KernelResult {
    bool holds = false;
    std::size_t rank = 0;  // of the stacked (dn) x n matrix
    std::optional<GRVector> witness;  // v != 0 with A_j v = 0 for all j
};

// Some real combination sum c_j A_j is nonsingular. Decided exactly on the
// grid {0..n}^d: det is a polynomial of degree at most n in each c_j, so it
// vanishes on that grid only if it vanishes identically.
struct TumanovResult {
    bool holds = false;
    std::optional<std::vector<Rational>> witness;
};

enum class Dominance { Dominant, NotDominant, Unknown };

// Image analysis of the full sesquilinear map (x, y) -> (<A_j x, y>)_j as a
// polynomial map C^{2n} -> C^d.
struct SesquiAnalysis {
    Dominance status = Dominance::Unknown;
    std::optional<MultiPoly> relation;  // poly in t_1..t_d vanishing on the image
    std::size_t relation_degree = 0;
    std::size_t searched_up_to = 0;
};

struct Report {
    std::size_t n = 0, d = 0;
    IndependenceResult independent;
    KernelResult trivial_kernel;
    bool nondegenerate = false;  // both of the above
    TumanovResult tumanov;
    bool cone_generating = false;
    bool finite_type_two = false;
    SesquiAnalysis sesqui;
};

IndependenceResult check_condition_a(const QuadricModel& m);
KernelResult check_condition_b(const QuadricModel& m);
TumanovResult check_tumanov(const QuadricModel& m);

// The values of the Levi map on a fixed finite probe set span R^d.
bool check_cone_generating(const QuadricModel& m);

// The values of the sesquilinear map span C^d.
bool check_finite_type_two(const QuadricModel& m);

SesquiAnalysis analyze_sesqui_surjectivity(const QuadricModel& m,
                                           std::size_t max_relation_degree = 3);

Report classify_unchecked(const QuadricModel& m, std::size_t max_relation_degree = 3);

// Cross-checks between the report's answers that hold for every model; a
// non-empty result means a bug, not a property of the input.
std::vector<std::string> invariant_violations(const QuadricModel& m, const Report& r);

// classify_unchecked + invariant_violations; throws std::logic_error on any hit.
Report classify(const QuadricModel& m, std::size_t max_relation_degree = 3);

QuadricModel random_model(std::size_t n, std::size_t d, long bound, std::uint64_t seed);

struct HarnessConfig {
    std::size_t count = 500;
    std::uint64_t seed = 1;
    std::size_t n_min = 1, n_max = 3;
    std::size_t d_min = 1, d_max = 4;
    long bound = 2;
};

struct HarnessResult {
    std::size_t count = 0;
    std::size_t violations = 0;
    std::vector<std::string> details;
    // per checked implication: (name, number of models where the hypothesis held)
    std::vector<std::pair<std::string, std::size_t>> hypothesis_counts;
};

HarnessResult run_harness(const HarnessConfig& cfg);

}  // namespace crquad
