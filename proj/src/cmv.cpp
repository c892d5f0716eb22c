#include "tcbe/cmv.hpp"

#include <algorithm>
#include <cmath>

namespace tcbe {

cplx polynomial::operator()(cplx z) const
{
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

std::pair<cplx, cplx> polynomial::eval_with_derivative(cplx z) const
{
    cplx p = 0.0, dp = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

polynomial operator*(const polynomial& p, const polynomial& q)
{
    if (p.coeffs.empty() || q.coeffs.empty())
        return {};
    polynomial out;
    out.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs.size(); ++j)
            out.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
    return out;
}

namespace {

// Place Xi_k on rows/cols k, k+1 (or the 1x1 tail block at n-1).
void place_xi(cmv_matrix& m, const cvec& a, long k)
{
    const long n = static_cast<long>(m.n);
    if (k < 0) {
        m(0, 0) = 1.0;
    } else if (k == n - 1) {
        m(k, k) = std::conj(a[k]);
    } else {
        const double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(a[k])));
        m(k, k) = std::conj(a[k]);
        m(k, k + 1) = rho;
        m(k + 1, k) = rho;
        m(k + 1, k + 1) = -a[k];
    }
}

} // namespace

cmv_matrix build_cmv(const verblunsky& alpha)
{
    const long n = static_cast<long>(alpha.size());
    if (n == 0)
        throw domain_error("build_cmv: empty coefficient sequence");
    cmv_matrix l(n), m(n);
    for (long k = 0; k < n; k += 2)
        place_xi(l, alpha.values, k);
    for (long k = -1; k < n; k += 2)
        place_xi(m, alpha.values, k);
    return multiply(l, m);
}

cmv_matrix truncate_matrix(const cmv_matrix& c)
{
    if (c.n < 2)
        throw domain_error("truncate_matrix: size must be at least 2");
    cmv_matrix out(c.n - 1);
    for (std::size_t i = 1; i < c.n; ++i)
        for (std::size_t j = 1; j < c.n; ++j)
            out(i - 1, j - 1) = c(i, j);
    return out;
}

cmv_matrix multiply(const cmv_matrix& a, const cmv_matrix& b)
{
    cmv_matrix out(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            const cplx aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (std::size_t j = 0; j < a.n; ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

cmv_matrix adjoint(const cmv_matrix& a)
{
    cmv_matrix out(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            out(j, i) = std::conj(a(i, j));
    return out;
}

double unitarity_defect(const cmv_matrix& c)
{
    const cmv_matrix p = multiply(c, adjoint(c));
    double worst = 0.0;
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = 0; j < c.n; ++j)
            worst = std::max(worst, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

verblunsky perturb_coefficients(const verblunsky& alpha, double r)
{
    if (r < 0.0 || r > 1.0)
        throw domain_error("perturb_coefficients: r must lie in [0,1]");
    verblunsky out = reverse(alpha);
    out.values.back() *= r;
    return out;
}

namespace {

// One Szego step on coefficient vectors of degree k -> k+1.
void szego_step(cvec& phi, cvec& phi_star, cplx a, cplx b, cplx c, cplx d)
{
    // [phi; phi*] <- [[a, b], [c, d]] [z phi; phi*]
    const std::size_t m = phi.size();
    cvec np(m + 1, 0.0), ns(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        np[i + 1] += a * phi[i];
        ns[i + 1] += c * phi[i];
        np[i] += b * phi_star[i];
        ns[i] += d * phi_star[i];
    }
    phi.swap(np);
    phi_star.swap(ns);
}

} // namespace

std::vector<opuc_pair> szego_polynomials(const verblunsky& alpha)
{
    std::vector<opuc_pair> out;
    out.reserve(alpha.size() + 1);
    cvec phi{1.0}, star{1.0};
    out.push_back({{phi}, {star}});
    for (cplx a : alpha.values) {
        szego_step(phi, star, 1.0, -std::conj(a), -a, 1.0);
        out.push_back({{phi}, {star}});
    }
    return out;
}

std::vector<opuc_pair> modified_szego_polynomials(const modified_verblunsky& gamma)
{
    std::vector<opuc_pair> out;
    out.reserve(gamma.size() + 1);
    cvec psi{1.0}, star{1.0};
    out.push_back({{psi}, {star}});
    for (cplx g : gamma.values) {
        if (std::abs(1.0 - g) < degenerate_tol)
            throw degenerate_error("modified_szego_polynomials: coefficient equals 1");
        const cplx s = 1.0 / (1.0 - g), t = 1.0 / (1.0 - std::conj(g));
        szego_step(psi, star, s, -g * s, -std::conj(g) * t, t);
        out.push_back({{psi}, {star}});
    }
    return out;
}

polynomial characteristic_polynomial(const verblunsky& alpha)
{
    cvec phi{1.0}, star{1.0};
    for (cplx a : alpha.values)
        szego_step(phi, star, 1.0, -std::conj(a), -a, 1.0);
    return {phi};
}

std::pair<cplx, cplx> szego_eval(const verblunsky& alpha, cplx z)
{
    cplx phi = 1.0, star = 1.0;
    for (cplx a : alpha.values) {
        const cplx zp = z * phi;
        phi = zp - std::conj(a) * star;
        star = star - a * zp;
    }
    return {phi, star};
}

std::pair<cplx, cplx> modified_szego_eval(const modified_verblunsky& gamma, cplx z)
{
    cplx psi = 1.0, star = 1.0;
    for (cplx g : gamma.values) {
        const cplx zp = z * psi;
        psi = (zp - g * star) / (1.0 - g);
        star = (star - std::conj(g) * zp) / (1.0 - std::conj(g));
    }
    return {psi, star};
}

} // namespace tcbe
