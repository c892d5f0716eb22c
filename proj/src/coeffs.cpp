#include "tcbe/coeffs.hpp"

#include <cmath>

namespace tcbe {

bool verblunsky::unitary(double tol) const
{
    return !values.empty() && std::abs(std::abs(values.back()) - 1.0) <= tol;
}

namespace {

void check_nondegenerate(cplx g, std::size_t k)
{
    if (std::abs(1.0 - g) < degenerate_tol)
        throw degenerate_error("modified coefficient " + std::to_string(k) + " is too close to 1");
}

} // namespace

modified_verblunsky modified_from_regular(const verblunsky& alpha)
{
    modified_verblunsky out;
    out.values.reserve(alpha.size());
    cplx factor = 1.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        cplx g = std::conj(alpha.values[k]) * factor;
        out.values.push_back(g);
        if (k + 1 < alpha.size()) {
            check_nondegenerate(g, k);
            factor *= (1.0 - std::conj(g)) / (1.0 - g);
        }
    }
    return out;
}

verblunsky regular_from_modified(const modified_verblunsky& gamma)
{
    verblunsky out;
    out.values.reserve(gamma.size());
    cplx factor = 1.0;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        cplx g = gamma.values[k];
        // |factor| = 1, so dividing is conjugating
        out.values.push_back(std::conj(g * std::conj(factor)));
        if (k + 1 < gamma.size()) {
            check_nondegenerate(g, k);
            factor *= (1.0 - std::conj(g)) / (1.0 - g);
        }
    }
    return out;
}

verblunsky reverse(const verblunsky& alpha)
{
    if (!alpha.unitary())
        throw domain_error("reverse: last coefficient is not unimodular");
    const std::size_t n = alpha.size();
    const cplx last = alpha.values[n - 1];
    verblunsky out;
    out.values.resize(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        out.values[k] = -last * std::conj(alpha.values[n - 2 - k]);
    out.values[n - 1] = last;
    return out;
}

cplx gamma_iota(cplx g)
{
    if (std::abs(1.0 - g) < degenerate_tol)
        throw domain_error("gamma_iota: argument equals 1");
    return -g * (1.0 - std::conj(g)) / (1.0 - g);
}

} // namespace tcbe
