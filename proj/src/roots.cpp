#include "tcbe/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tcbe {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

struct local_eval {
    cplx ratio;      // p / p'
    double backward; // |p(z)| / sum |a_k| |z|^k
};

// Outside the unit disk the reversed polynomial r(y) = y^d p(1/y) is used, so that
// high degrees do not overflow: p / p' = z / (d - y r'(y) / r(y)) with y = 1/z.
local_eval evaluate(const cvec& a, cplx z)
{
    const std::size_t d = a.size() - 1;
    cplx p = 0.0, dp = 0.0;
    double scale = 0.0;
    if (std::abs(z) <= 1.0) {
        const double r = std::abs(z);
        for (std::size_t k = d + 1; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + a[k];
            scale = scale * r + std::abs(a[k]);
        }
        return {p / dp, std::abs(p) / scale};
    }
    const cplx y = 1.0 / z;
    const double r = std::abs(y);
    for (std::size_t k = 0; k <= d; ++k) {
        dp = dp * y + p;
        p = p * y + a[k];
        scale = scale * r + std::abs(a[k]);
    }
    return {z / (double(d) - y * dp / p), std::abs(p) / scale};
}

} // namespace

cvec find_roots(const polynomial& p, const root_options& opts)
{
    if (p.coeffs.size() < 2 || p.coeffs.back() == 0.0)
        throw domain_error("find_roots: need degree >= 1 with nonzero leading coefficient");

    // exact zero roots come off the constant end
    std::size_t zeros = 0;
    while (p.coeffs[zeros] == 0.0)
        ++zeros;
    cvec roots(zeros, 0.0);
    polynomial q{cvec(p.coeffs.begin() + zeros, p.coeffs.end())};
    const std::size_t deg = q.degree();
    if (deg == 0)
        return roots;
    const cplx lead = q.coeffs.back();
    for (auto& c : q.coeffs)
        c /= lead;

    // Fujiwara bound, and the geometric mean of root moduli as the start radius
    double bound = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
        double t = std::pow(std::abs(q.coeffs[k]), 1.0 / double(deg - k));
        if (k == 0)
            t *= std::pow(0.5, 1.0 / double(deg));
        bound = std::max(bound, 2.0 * t);
    }
    double radius = std::pow(std::abs(q.coeffs[0]), 1.0 / double(deg));
    radius = std::clamp(radius, 1e-3 * bound, bound);

    cvec z(deg);
    for (std::size_t k = 0; k < deg; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(deg) + 0.4);

    std::vector<char> done(deg, 0);
    std::size_t remaining = deg;
    for (int it = 0; it < opts.max_iterations && remaining > 0; ++it) {
        for (std::size_t i = 0; i < deg; ++i) {
            if (done[i])
                continue;
            const local_eval e = evaluate(q.coeffs, z[i]);
            if (e.backward <= 4.0 * eps) {
                done[i] = 1;
                --remaining;
                continue;
            }
            cplx sum = 0.0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i)
                    sum += 1.0 / (z[i] - z[j]);
            const cplx ratio = e.ratio;
            const cplx w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                // collision or critical point: nudge off it and retry next sweep
                z[i] += std::polar(1e-7 * (1.0 + std::abs(z[i])), 0.7 + double(i));
                continue;
            }
            z[i] -= w;
            if (std::abs(w) <= 2.0 * eps * std::abs(z[i])) {
                done[i] = 1;
                --remaining;
            }
        }
    }

    std::string failed;
    for (std::size_t i = 0; i < deg; ++i) {
        local_eval e = evaluate(q.coeffs, z[i]);
        for (int s = 0; s < opts.polish_steps && e.backward > 0.0; ++s) {
            const cplx cand = z[i] - e.ratio;
            if (!std::isfinite(cand.real()) || !std::isfinite(cand.imag()))
                break;
            const local_eval next = evaluate(q.coeffs, cand);
            if (!(next.backward < e.backward))
                break;
            z[i] = cand;
            e = next;
        }
        // accept roots of a polynomial whose coefficients are perturbed by at most 1e-10 relative
        if (!(e.backward <= 1e-10))
            failed += (failed.empty() ? "" : ",") + std::to_string(i);
    }
    if (!failed.empty())
        throw numeric_error("find_roots: no convergence for root indices " + failed);

    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

cplx edge_map(cplx z, std::size_t n)
{
    return cplx(0.0, -double(n)) * std::log(z);
}

point_sample edge_scale(const point_sample& points, std::size_t n)
{
    if (points.where != frame::unit_disk)
        throw domain_error("edge_scale: input must be in the unit-disk frame");
    point_sample out = points;
    out.where = frame::upper_half_plane;
    out.points.clear();
    for (cplx z : points.points) {
        const double cut_dist = z.real() <= 0.0 ? std::abs(z.imag()) : std::abs(z);
        if (cut_dist <= 1e-12) {
            ++out.dropped;
            continue;
        }
        out.points.push_back(edge_map(z, n));
    }
    return out;
}

} // namespace tcbe
