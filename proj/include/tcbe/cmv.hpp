#ifndef TCBE_CMV_HPP
#define TCBE_CMV_HPP

#include <utility>
#include <vector>

#include "tcbe/coeffs.hpp"

namespace tcbe {

// Dense ascending-degree polynomial.
struct polynomial {
    cvec coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    cplx operator()(cplx z) const;
    // value and derivative by Horner
    std::pair<cplx, cplx> eval_with_derivative(cplx z) const;
};

polynomial operator*(const polynomial& p, const polynomial& q);

// Row-major dense square matrix; CMV matrices only fill five diagonals.
struct cmv_matrix {
    std::size_t n = 0;
    cvec entries;

    cmv_matrix() = default;
    explicit cmv_matrix(std::size_t size) : n(size), entries(size * size) {}

    cplx& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

cmv_matrix build_cmv(const verblunsky& alpha);
cmv_matrix truncate_matrix(const cmv_matrix& c);
cmv_matrix multiply(const cmv_matrix& a, const cmv_matrix& b);
cmv_matrix adjoint(const cmv_matrix& a);
// max |(C C^H - I)_{ij}|
double unitarity_defect(const cmv_matrix& c);

// (rev a_0, ..., rev a_{n-2}, r rev a_{n-1}); spectrum of U diag(r, 1, ..., 1).
verblunsky perturb_coefficients(const verblunsky& alpha, double r);

struct opuc_pair {
    polynomial phi;
    polynomial phi_star;
};

// k = 0..n
std::vector<opuc_pair> szego_polynomials(const verblunsky& alpha);
// Psi_k = Phi_k / Phi_k(1), k = 0..n
std::vector<opuc_pair> modified_szego_polynomials(const modified_verblunsky& gamma);

// Phi_n only, without keeping the intermediate polynomials.
polynomial characteristic_polynomial(const verblunsky& alpha);

// Evaluate (Phi_n(z), Phi_n*(z)) and the modified pair at a point, O(n).
std::pair<cplx, cplx> szego_eval(const verblunsky& alpha, cplx z);
std::pair<cplx, cplx> modified_szego_eval(const modified_verblunsky& gamma, cplx z);

} // namespace tcbe

#endif
