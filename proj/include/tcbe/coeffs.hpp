#ifndef TCBE_COEFFS_HPP
#define TCBE_COEFFS_HPP

#include "tcbe/types.hpp"

namespace tcbe {

// Regular Verblunsky coefficients alpha_0..alpha_{n-1}.
struct verblunsky {
    cvec values;

    std::size_t size() const { return values.size(); }
    bool unitary(double tol = 1e-12) const;
};

// Modified coefficients gamma_k, normalised at the point 1.
struct modified_verblunsky {
    cvec values;

    std::size_t size() const { return values.size(); }
};

inline constexpr double degenerate_tol = 1e-14;

modified_verblunsky modified_from_regular(const verblunsky& alpha);
verblunsky regular_from_modified(const modified_verblunsky& gamma);

// (-a_{n-1} conj a_{n-2}, ..., -a_{n-1} conj a_0, a_{n-1}); last entry must be unimodular.
verblunsky reverse(const verblunsky& alpha);

// -g (1 - conj g) / (1 - g)
cplx gamma_iota(cplx g);

} // namespace tcbe

#endif
