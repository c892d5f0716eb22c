#include "tcbe/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tcbe::oracle {

namespace {

constexpr double pi = std::numbers::pi;

cvec poly_add(const cvec& a, const cvec& b)
{
    cvec out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    return out;
}

// (c0 + c1 z) * p
cvec poly_mul_linear(cplx c0, cplx c1, const cvec& p)
{
    cvec out(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += c0 * p[i];
        out[i + 1] += c1 * p[i];
    }
    return out;
}

} // namespace

cvec cofactor_char_poly(const cmv_matrix& c)
{
    const std::size_t n = c.n;
    if (n > 20)
        throw domain_error("cofactor_char_poly: matrix too large for exact expansion");
    std::unordered_map<std::uint32_t, cvec> memo;
    // determinant of (zI - C) restricted to rows n-|cols|.. and the column set
    std::function<cvec(std::uint32_t)> minor = [&](std::uint32_t cols) -> cvec {
        if (cols == 0)
            return {1.0};
        if (auto it = memo.find(cols); it != memo.end())
            return it->second;
        std::size_t row = n - std::size_t(std::popcount(cols));
        cvec acc{0.0};
        int pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(cols & (1u << j)))
                continue;
            cplx c0 = -c(row, j);
            cplx c1 = row == j ? 1.0 : 0.0;
            if (c0 != 0.0 || c1 != 0.0) {
                cvec term = poly_mul_linear(c0, c1, minor(cols & ~(1u << j)));
                if (pos % 2)
                    for (auto& t : term)
                        t = -t;
                acc = poly_add(acc, term);
            }
            ++pos;
        }
        memo[cols] = acc;
        return acc;
    };
    cvec p = minor((1u << n) - 1u);
    p.resize(n + 1, 0.0);
    return p;
}

cvec eigenvalues(const cmv_matrix& c)
{
    Eigen::MatrixXcd m(c.n, c.n);
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = 0; j < c.n; ++j)
            m(i, j) = c(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw numeric_error("oracle::eigenvalues: Schur iteration failed");
    cvec out(c.n);
    for (std::size_t i = 0; i < c.n; ++i)
        out[i] = solver.eigenvalues()[Eigen::Index(i)];
    return out;
}

double matching_distance(const cvec& a, const cvec& b)
{
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    std::vector<bool> used(n, false);
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, double)> search = [&](std::size_t i, double cur) {
        if (cur >= best)
            return;
        if (i == n) {
            best = cur;
            return;
        }
        std::vector<std::pair<double, std::size_t>> order;
        for (std::size_t j = 0; j < n; ++j)
            if (!used[j])
                order.push_back({std::abs(a[i] - b[j]), j});
        std::sort(order.begin(), order.end());
        for (auto [d, j] : order) {
            used[j] = true;
            search(i + 1, std::max(cur, d));
            used[j] = false;
        }
    };
    search(0, 0.0);
    return n == 0 ? 0.0 : best;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

double edge_intensity_quadrature(cplx z)
{
    double y = z.imag();
    return integrate([y](double t) { return t * std::exp(-2.0 * t * y); }, 0.0, 1.0) / pi;
}

double edge_box_mass_quadrature(const box& b)
{
    double inner = integrate([](double y) {
        return integrate([y](double t) { return t * std::exp(-2.0 * t * y); }, 0.0, 1.0, 1e-14);
    }, b.y0, b.y1);
    return (b.x1 - b.x0) * inner / pi;
}

double annulus_mass_quadrature(const std::function<double(double)>& rho, double r0, double r1)
{
    return integrate([&](double r) { return 2.0 * pi * r * rho(r); }, r0, r1);
}

double polar_cell_mass(const std::function<double(cplx)>& density, double r0, double r1,
                       double t0, double t1)
{
    return integrate([&](double r) {
        return r * integrate([&](double t) { return density(std::polar(r, t)); }, t0, t1, 1e-11);
    }, r0, r1, 1e-11);
}

theta_delta_density::theta_delta_density(double a, cplx delta) : a_(a), delta_(delta)
{
    if (a <= 0.0)
        throw domain_error("theta_delta_density: a must be positive");
    norm_ = polar_cell_mass([this](cplx z) { return unnormalised(z); }, 0.0, 1.0, -pi, pi);
}

double theta_delta_density::unnormalised(cplx z) const
{
    double r2 = std::norm(z);
    if (r2 >= 1.0)
        return 0.0;
    // (1 - z)^{conj d} (1 - conj z)^d, a positive real
    double w = std::exp(2.0 * (std::conj(delta_) * std::log(1.0 - z)).real());
    return std::pow(1.0 - r2, a_ / 2.0 - 1.0) * w;
}

double theta_delta_density::operator()(cplx z) const
{
    return unnormalised(z) / norm_;
}

double theta_delta_density::cell_mass(double r0, double r1, double t0, double t1) const
{
    return polar_cell_mass([this](cplx z) { return (*this)(z); }, r0, r1, t0, t1);
}

} // namespace tcbe::oracle
