#ifndef TCBE_DIRAC_HPP
#define TCBE_DIRAC_HPP

#include <array>

#include "tcbe/coeffs.hpp"

namespace tcbe {

using vec2 = std::array<double, 2>;
using cvec2 = std::array<cplx, 2>;

// Cayley map U(z) = (z - i)/(z + i) from the upper half plane to the disk.
cplx cayley(cplx z);
// U^{-1}(b) = i (1 + b)/(1 - b); returns an infinite value at b = 1.
cplx cayley_inverse(cplx b);
double hyperbolic_distance(cplx z, cplx w);

// b_0..b_n and z_0..z_n (b_{-1} = 1 is implicit); n steps.
struct hyperbolic_path {
    cvec disk;
    cvec halfplane;

    std::size_t steps() const { return disk.empty() ? 0 : disk.size() - 1; }
};

hyperbolic_path path_from_regular(const verblunsky& alpha);
hyperbolic_path path_from_modified(const modified_verblunsky& gamma);
hyperbolic_path reversed_path(const verblunsky& alpha);
hyperbolic_path pulled_back_path(const hyperbolic_path& rev);
// pulled_back_path(reversed_path(alpha)) computed directly in the anchored frame, which keeps
// relative accuracy for points close to the real axis.
hyperbolic_path pulled_back_reversed_path(const verblunsky& alpha);

// The two alternative disk routes for b_k, kept for cross-checking.
cvec disk_path_recursive(const modified_verblunsky& gamma);
cvec disk_path_composed(const modified_verblunsky& gamma);

// Dirac operator with piecewise-constant weight R_k built from z_0..z_{n-1}.
struct dirac_operator {
    cvec cells;            // z_k for the n cells [k/n, (k+1)/n)
    vec2 u0{1.0, 0.0};
    vec2 u1{0.0, -1.0};

    std::size_t n() const { return cells.size(); }
};

// Operator of a measure: cells z_0..z_{n-1}, u1 = (-z_n, -1); rejects z_n = infinity.
dirac_operator measure_operator(const hyperbolic_path& path);

// R = X^T X / (2 det X), X = [[1, -x], [0, y]]; entries r11, r12, r22.
std::array<double, 3> weight_matrix(cplx z);

double hs_norm(const dirac_operator& op);
double integral_trace(const dirac_operator& op);

// H(k/n, z) by exact cell exponentials; k in 0..n.
cvec2 canonical_solution(const dirac_operator& op, cplx z, std::size_t k);
// t is rounded down to the cell grid.
cvec2 canonical_solution(const dirac_operator& op, cplx z, double t);

cplx secular_function(const dirac_operator& op, cplx z);
cplx structure_function(const dirac_operator& op, cplx z);

// aff H((n-1)/n, z)^T (1, -i) on the pulled-back reversed operator.
cplx finite_structure_function(const verblunsky& alpha, cplx z);

} // namespace tcbe

#endif
