#pragma once

#include "crquad/matrix.hpp"
#include "crquad/multipoly.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace crquad {

// Quadric model in C^{n+d}: the real submanifold Im w_j = <A_j z, z> for a
// tuple of Hermitian forms A_1..A_d on C^n.
class QuadricModel {
public:
    QuadricModel(std::size_t n, std::size_t d, std::vector<HermitianMatrix> forms);

    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }
    const HermitianMatrix& form(std::size_t j) const { return forms_.at(j); }

    // Variable layout shared with the polynomial machinery.
    VarEnv env() const { return VarEnv{n_, d_}; }

    // L(z) = (<A_j z, z>)_j; components are exactly real.
    std::vector<Rational> levi(const GRVector& z) const;

    // Full sesquilinear map, conjugate-linear in x.
    GRVector sesqui(const GRVector& x, const GRVector& y) const;

    // <A_j z, z> as a polynomial in z, zb.
    MultiPoly levi_poly(std::size_t j) const;

    // A_j -> C^H A_j C for invertible C.
    QuadricModel change_coordinates(const ExactMatrix& c) const;

    bool operator==(const QuadricModel& other) const;

private:
    std::size_t n_, d_;
    std::vector<HermitianMatrix> forms_;
};

QuadricModel model_from_json_text(const std::string& text);
std::string model_to_json_text(const QuadricModel& m, bool pretty = true);
QuadricModel load_model_file(const std::string& path);

}  // namespace crquad
