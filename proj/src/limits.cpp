#include "tcbe/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tcbe {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double pi = std::numbers::pi;

// cos and sin of a complex argument, Taylor near 0 where it is cheap
void cos_sin(cplx x, cplx& c, cplx& s)
{
    if (std::abs(x) < 0.05) {
        const cplx x2 = x * x;
        c = 1.0 - x2 / 2.0 * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0 * (1.0 - x2 / 56.0)));
        s = x * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0))));
    } else {
        c = std::cos(x);
        s = std::sin(x);
    }
}

} // namespace

limit_family parse_limit_family(const std::string& name)
{
    if (name == "sine")
        return limit_family::sine;
    if (name == "bessel")
        return limit_family::bessel;
    if (name == "hp")
        return limit_family::hua_pickrell;
    throw domain_error("unknown family '" + name + "' (expected sine, bessel or hp)");
}

std::string to_string(limit_family family)
{
    switch (family) {
    case limit_family::sine:
        return "sine";
    case limit_family::bessel:
        return "bessel";
    case limit_family::hua_pickrell:
        return "hp";
    }
    return "?";
}

double default_u_min(double beta, double z_max)
{
    double u = 160.0 / beta;
    if (z_max > 0.0)
        u = std::max(u, 4.0 / beta * std::log(2e6 * z_max));
    return -u;
}

void sde_config::validate() const
{
    if (!(beta > 0.0))
        throw domain_error("sde: beta must be positive");
    if (!(step > 0.0))
        throw domain_error("sde: step must be positive");
    if (!(u_min < 0.0))
        throw domain_error("sde: u_min must be negative");
    if (family == limit_family::bessel && !(a > -1.0))
        throw domain_error("sde: Bessel parameter a must exceed -1");
    if (family == limit_family::hua_pickrell && !(delta.real() > -0.5))
        throw domain_error("sde: Re(delta) must exceed -1/2");
    double z_max = 0.0;
    for (cplx z : z_grid)
        z_max = std::max(z_max, std::abs(z));
    const double tail = z_max * std::exp(beta * u_min / 4.0) / 2.0;
    if (tail > 1e-6 * (1.0 + 1e-9))
        throw domain_error("sde: u_min too large, potential tail " + std::to_string(tail) +
                           " exceeds 1e-6; need u_min <= " + std::to_string(4.0 / beta * std::log(2e-6 / z_max)));
}

std::size_t sde_config::steps() const
{
    return static_cast<std::size_t>(std::ceil(-u_min / step - 1e-9));
}

brownian_increments brownian_increments::draw(std::size_t steps, double step, rng_stream& rng, int micro)
{
    if (micro < 1)
        throw domain_error("brownian_increments: need at least one sub-step");
    brownian_increments out;
    out.step = step;
    out.db1.resize(steps);
    out.db2.resize(steps);
    out.levy.resize(steps);
    out.st1.resize(steps);
    out.st2.resize(steps);
    const double dt = step / double(micro);
    const double sd = std::sqrt(dt), sd_area = std::sqrt(dt * dt * dt / 12.0);
    for (std::size_t k = 0; k < steps; ++k) {
        double w1 = 0.0, w2 = 0.0, area = 0.0, s1 = 0.0, s2 = 0.0;
        for (int j = 0; j < micro; ++j) {
            const double d1 = sd * rng.normal(), d2 = sd * rng.normal();
            // int of the sub-step bridge is Gaussian around the trapezoid value
            s1 += dt * (w1 + 0.5 * d1) + sd_area * rng.normal();
            s2 += dt * (w2 + 0.5 * d2) + sd_area * rng.normal();
            area += 0.5 * (w2 * d1 - w1 * d2);
            w1 += d1;
            w2 += d2;
        }
        out.db1[k] = w1;
        out.db2[k] = w2;
        out.levy[k] = area;
        out.st1[k] = s1 - 0.5 * step * w1;
        out.st2[k] = s2 - 0.5 * step * w2;
    }
    return out;
}

brownian_increments brownian_increments::zero(std::size_t steps, double step)
{
    brownian_increments out;
    out.step = step;
    out.db1.assign(steps, 0.0);
    out.db2.assign(steps, 0.0);
    out.levy.assign(steps, 0.0);
    out.st1.assign(steps, 0.0);
    out.st2.assign(steps, 0.0);
    out.silent = true;
    return out;
}

brownian_increments brownian_increments::coarsen() const
{
    if (db1.size() % 2 != 0)
        throw domain_error("coarsen: odd number of steps");
    brownian_increments out;
    out.step = 2.0 * step;
    out.silent = silent;
    for (std::size_t k = 0; k < db1.size(); k += 2) {
        out.db1.push_back(db1[k] + db1[k + 1]);
        out.db2.push_back(db2[k] + db2[k + 1]);
        out.levy.push_back(levy[k] + levy[k + 1] + 0.5 * (db2[k] * db1[k + 1] - db1[k] * db2[k + 1]));
        out.st1.push_back(st1[k] + st1[k + 1] + 0.5 * step * (db1[k] - db1[k + 1]));
        out.st2.push_back(st2[k] + st2[k + 1] + 0.5 * step * (db2[k] - db2[k + 1]));
    }
    return out;
}

const cvec2& limit_field::at(cplx z) const
{
    for (std::size_t k = 0; k < z_grid.size(); ++k)
        if (z_grid[k] == z)
            return h0[k];
    throw domain_error("limit_field: z is not on the simulated grid");
}

limit_field simulate_H(sde_config config)
{
    config.validate();
    std::optional<double> q;
    if (config.family != limit_family::bessel) {
        // U^{-1}(eta) with eta ~ Theta(1, delta); standard Cauchy when delta = 0
        const cplx d = config.family == limit_family::sine ? cplx(0.0) : config.delta;
        q = sample_pearson_iv(d.real() + 1.0, -2.0 * d.imag(), config.rng);
    }
    const auto noise = brownian_increments::draw(config.steps(), config.step, config.rng);
    return simulate_H(config, noise, q);
}

limit_field simulate_H(const sde_config& config, const brownian_increments& noise,
                       std::optional<double> boundary_q)
{
    const double h = noise.step;
    const std::size_t steps = noise.db1.size();
    const double beta = config.beta;
    const double u0 = -double(steps) * h;

    // Sine is Hua-Pickrell at delta = 0, sharing the arithmetic exactly
    const bool bessel = config.family == limit_family::bessel;
    const cplx delta = config.family == limit_family::hua_pickrell ? config.delta : cplx(0.0);
    const double kappa = 1.0 - beta / 4.0 * (2.0 * config.a + 1.0);
    // Ito corrections of the log-normal diagonal factor; absent without diffusion
    const double ito = noise.silent ? 0.0 : 0.5;

    const std::size_t m = config.z_grid.size();
    // structure of arrays in real arithmetic; this loop dominates Monte Carlo cost
    std::vector<double> zr(m), zi(m), ar(m, 1.0), ai(m, 0.0), br(m, 0.0), bi(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        zr[j] = config.z_grid[j].real();
        zi[j] = config.z_grid[j].imag();
    }

    // integral of (beta/8) e^{beta u/4} between two times
    auto potential = [beta](double lo, double hi) {
        return 0.5 * (std::exp(beta * hi / 4.0) - std::exp(beta * lo / 4.0));
    };
    auto rotate = [&](double theta) {
        // H <- (cos(z theta) I - sin(z theta) J) H
        for (std::size_t j = 0; j < m; ++j) {
            const cplx x(zr[j] * theta, zi[j] * theta);
            cplx c, s;
            if (std::abs(x.real()) + std::abs(x.imag()) < 0.01) {
                const double x2r = x.real() * x.real() - x.imag() * x.imag();
                const double x2i = 2.0 * x.real() * x.imag();
                // c = 1 - x2/2 + x2^2/24, s = x (1 - x2/6 + x2^2/120)
                const double q4r = x2r * x2r - x2i * x2i, q4i = 2.0 * x2r * x2i;
                c = {1.0 - 0.5 * x2r + q4r / 24.0, -0.5 * x2i + q4i / 24.0};
                const double tr = 1.0 - x2r / 6.0 + q4r / 120.0, ti = -x2i / 6.0 + q4i / 120.0;
                s = {x.real() * tr - x.imag() * ti, x.real() * ti + x.imag() * tr};
            } else {
                cos_sin(x, c, s);
            }
            const double a_r = ar[j], a_i = ai[j], b_r = br[j], b_i = bi[j];
            ar[j] = c.real() * a_r - c.imag() * a_i + s.real() * b_r - s.imag() * b_i;
            ai[j] = c.real() * a_i + c.imag() * a_r + s.real() * b_i + s.imag() * b_r;
            br[j] = -(s.real() * a_r - s.imag() * a_i) + c.real() * b_r - c.imag() * b_i;
            bi[j] = -(s.real() * a_i + s.imag() * a_r) + c.real() * b_i + c.imag() * b_r;
        }
    };

    // Strang splitting: potential over [u_k - h/2, u_k + h/2] around each noise step
    double lo = u0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double hi = std::min(u0 + (double(k) + 0.5) * h, 0.0);
        rotate(potential(lo, hi));
        lo = hi;
        if (k == steps)
            break;

        double n12, n22;
        if (bessel) {
            n22 = std::exp(std::sqrt(2.0) * noise.db2[k] + (kappa - 2.0 * ito) * h);
            n12 = 0.0;
        } else {
            n22 = std::exp(noise.db2[k] - (delta.real() + ito) * h);
            // -int e^{b2(s)-b2(u)-...}(db1 + Im(delta) ds) to first order, Levy area included
            n12 = -(noise.db1[k] + delta.imag() * h) * (1.0 + n22) / 2.0 - noise.levy[k];
        }
        // commutator of the potential with the noise, weighted by the space-time areas
        const double cm = beta / 8.0 * std::exp(beta * (u0 + (double(k) + 0.5) * h) / 4.0);
        const double e1 = bessel ? 0.0 : -cm * noise.st1[k];
        const double e2 = cm * noise.st2[k] * (bessel ? std::sqrt(2.0) : 1.0);
        for (std::size_t j = 0; j < m; ++j) {
            double a_r = ar[j] + n12 * br[j], a_i = ai[j] + n12 * bi[j];
            double b_r = n22 * br[j], b_i = n22 * bi[j];
            // (e1 a + e2 b, e2 a - e1 b) scaled by z
            const double pr = e1 * a_r + e2 * b_r, pi_ = e1 * a_i + e2 * b_i;
            const double qr = e2 * a_r - e1 * b_r, qi = e2 * a_i - e1 * b_i;
            ar[j] = a_r + zr[j] * pr - zi[j] * pi_;
            ai[j] = a_i + zr[j] * pi_ + zi[j] * pr;
            br[j] = b_r + zr[j] * qr - zi[j] * qi;
            bi[j] = b_i + zr[j] * qi + zi[j] * qr;
        }
        if (k % 256 == 0) {
            for (std::size_t j = 0; j < m; ++j)
                if (!(std::max({std::abs(ar[j]), std::abs(ai[j]), std::abs(br[j]), std::abs(bi[j])}) < 1e12))
                    throw path_overflow("simulate_H: |H| exceeded 1e12");
        }
    }
    std::vector<cvec2> hv(m);
    for (std::size_t j = 0; j < m; ++j) {
        hv[j] = {cplx(ar[j], ai[j]), cplx(br[j], bi[j])};
        if (!(std::abs(hv[j][0]) < 1e12 && std::abs(hv[j][1]) < 1e12))
            throw path_overflow("simulate_H: |H| exceeded 1e12");
    }

    limit_field out;
    out.family = config.family;
    out.z_grid = config.z_grid;
    out.h0 = std::move(hv);
    out.boundary_q = bessel ? std::nullopt : boundary_q;
    return out;
}

namespace {

cplx secular_from(const cvec2& h, limit_family family, const std::optional<double>& q)
{
    if (family == limit_family::bessel)
        return h[0];
    if (!q)
        throw domain_error("secular_fn: boundary value missing");
    return h[0] - *q * h[1];
}

cplx perturbed_from(const cvec2& h, limit_family family, const std::optional<double>& q, double r)
{
    if (r < 0.0 || r > 1.0)
        throw domain_error("perturbed_structure_fn: r must lie in [0,1]");
    if (family == limit_family::bessel)
        return h[0] - I * ((1.0 - r) / (1.0 + r)) * h[1];
    if (!q)
        throw domain_error("perturbed_structure_fn: boundary value missing");
    return h[0] - perturbation_coefficient(*q, r) * h[1];
}

} // namespace

cplx structure_fn(const limit_field& field, cplx z)
{
    const cvec2& h = field.at(z);
    return h[0] - I * h[1];
}

cplx secular_fn(const limit_field& field, cplx z)
{
    return secular_from(field.at(z), field.family, field.boundary_q);
}

cplx perturbation_coefficient(double q, double r)
{
    const double k = (1.0 - r) / (1.0 + r);
    return (q + I * k) / (1.0 - I * q * k);
}

cplx perturbed_structure_fn(const limit_field& field, double r, cplx z)
{
    return perturbed_from(field.at(z), field.family, field.boundary_q, r);
}

cplx perturbed_structure_fn(const limit_field& field, double r, cplx gamma, cplx z)
{
    if (std::abs(1.0 + r * gamma) < 1e-14)
        throw domain_error("perturbed_structure_fn: pole at r gamma = -1");
    const cvec2& h = field.at(z);
    return h[0] - I * (1.0 - r * gamma) / (1.0 + r * gamma) * h[1];
}

cvec circle_grid(cplx center, double radius, std::size_t count)
{
    cvec out(count);
    for (std::size_t j = 0; j < count; ++j)
        out[j] = center + std::polar(radius, 2.0 * pi * double(j) / double(count));
    return out;
}

field_interpolant::field_interpolant(const limit_field& field, cplx center, double radius)
    : center_(center), radius_(radius), q_(field.boundary_q), family_(field.family)
{
    const std::size_t m = field.z_grid.size();
    const cvec expect = circle_grid(center, radius, m);
    for (std::size_t j = 0; j < m; ++j)
        if (std::abs(expect[j] - field.z_grid[j]) > 1e-12 * (1.0 + radius))
            throw domain_error("field_interpolant: field was not simulated on the matching circle");
    c1_.assign(m, 0.0);
    c2_.assign(m, 0.0);
    // Taylor coefficients about the centre by the trapezoid rule on the circle
    for (std::size_t k = 0; k < m; ++k) {
        cplx s1 = 0.0, s2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const cplx w = std::polar(1.0, -2.0 * pi * double(j * k % m) / double(m));
            s1 += field.h0[j][0] * w;
            s2 += field.h0[j][1] * w;
        }
        const double scale = std::pow(radius, -double(k)) / double(m);
        c1_[k] = s1 * scale;
        c2_[k] = s2 * scale;
    }
}

cvec2 field_interpolant::h0(cplx z) const
{
    const cplx d = z - center_;
    cplx a = 0.0, b = 0.0;
    for (std::size_t k = c1_.size(); k-- > 0;) {
        a = a * d + c1_[k];
        b = b * d + c2_[k];
    }
    return {a, b};
}

cplx structure_fn(const field_interpolant& field, cplx z)
{
    const cvec2 h = field.h0(z);
    return h[0] - I * h[1];
}

cplx secular_fn(const field_interpolant& field, cplx z)
{
    return secular_from(field.h0(z), field.family(), field.boundary_q());
}

cplx perturbed_structure_fn(const field_interpolant& field, double r, cplx z)
{
    return perturbed_from(field.h0(z), field.family(), field.boundary_q(), r);
}

// ---- zero location ----

namespace {

struct winding {
    double turns = 0.0;
    bool ok = false;
};

// Phase change of f along the segment a -> b with n samples, refining locally
// where consecutive samples turn by more than 0.5 rad.
double segment_phase(const std::function<cplx(cplx)>& f, cplx a, cplx b, std::size_t n)
{
    double total = 0.0;
    cplx prev_z = a, prev_f = f(a);
    for (std::size_t j = 1; j <= n; ++j) {
        const cplx z = a + (b - a) * (double(j) / double(n));
        const cplx fz = f(z);
        double d = std::arg(fz / prev_f);
        if (std::abs(d) > 0.5) {
            // bisect the offending piece a few times
            const std::size_t sub = 16;
            d = 0.0;
            cplx pz = prev_f;
            for (std::size_t i = 1; i <= sub; ++i) {
                const cplx zi = prev_z + (z - prev_z) * (double(i) / double(sub));
                const cplx fi = i == sub ? fz : f(zi);
                d += std::arg(fi / pz);
                pz = fi;
            }
        }
        total += d;
        prev_z = z;
        prev_f = fz;
    }
    return total;
}

winding measure_winding(const std::function<cplx(cplx)>& f, const box& b, std::size_t n)
{
    const cplx c00(b.x0, b.y0), c10(b.x1, b.y0), c11(b.x1, b.y1), c01(b.x0, b.y1);
    const double total = segment_phase(f, c00, c10, n) + segment_phase(f, c10, c11, n) +
                         segment_phase(f, c11, c01, n) + segment_phase(f, c01, c00, n);
    winding w;
    w.turns = total / (2.0 * pi);
    w.ok = std::isfinite(w.turns) && std::abs(w.turns - std::round(w.turns)) <= 0.1;
    return w;
}

cplx newton(const std::function<cplx(cplx)>& f, cplx z, bool& converged)
{
    converged = false;
    for (int it = 0; it < 100; ++it) {
        const double h = 1e-6 * (1.0 + std::abs(z));
        const cplx fz = f(z);
        if (fz == 0.0) {
            converged = true;
            return z;
        }
        const cplx df = (f(z + h) - f(z - h)) / (2.0 * h);
        if (df == 0.0 || !std::isfinite(std::abs(df)))
            return z;
        const cplx step = fz / df;
        z -= step;
        if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z))) {
            converged = true;
            return z;
        }
    }
    return z;
}

bool inside(const box& b, cplx z, double slack)
{
    return z.real() >= b.x0 - slack && z.real() <= b.x1 + slack && z.imag() >= b.y0 - slack &&
           z.imag() <= b.y1 + slack;
}

void search(const std::function<cplx(cplx)>& f, const box& b, int count, int depth,
            const zero_options& opts, cvec& out)
{
    if (count <= 0)
        return;
    const double size = std::max(b.x1 - b.x0, b.y1 - b.y0);
    const cplx mid(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1));
    if (count == 1) {
        bool ok = false;
        const cplx z = newton(f, mid, ok);
        if (ok && inside(b, z, 1e-9 * (1.0 + std::abs(z)))) {
            out.push_back(z);
            return;
        }
    }
    if (depth >= opts.max_depth || size < 1e-12 * (1.0 + std::abs(mid))) {
        // cluster below resolution: report the centre with multiplicity
        for (int k = 0; k < count; ++k)
            out.push_back(mid);
        return;
    }
    // split slightly off-centre so grid-aligned zeros do not land on the cut
    const double xm = b.x0 + 0.5123 * (b.x1 - b.x0), ym = b.y0 + 0.4871 * (b.y1 - b.y0);
    const box parts[4] = {{b.x0, xm, b.y0, ym}, {xm, b.x1, b.y0, ym}, {b.x0, xm, ym, b.y1}, {xm, b.x1, ym, b.y1}};
    int found = 0;
    for (const box& p : parts) {
        const int c = count_zeros(f, p, opts);
        found += c;
        search(f, p, c, depth + 1, opts, out);
    }
    if (found != count)
        throw numeric_error("locate_zeros: subdivision count mismatch (" + std::to_string(found) +
                            " vs " + std::to_string(count) + ")");
}

} // namespace

int count_zeros(const std::function<cplx(cplx)>& f, const box& b, const zero_options& opts)
{
    if (!(b.x1 > b.x0 && b.y1 > b.y0))
        throw domain_error("count_zeros: degenerate box");
    for (std::size_t n = opts.initial_samples; n <= opts.max_samples; n *= 2) {
        const winding w = measure_winding(f, b, n);
        if (w.ok)
            return static_cast<int>(std::lround(w.turns));
    }
    // a zero is probably sitting on the contour; nudge the box outward once
    const double ex = 1e-7 * (b.x1 - b.x0), ey = 1e-7 * (b.y1 - b.y0);
    const box moved{b.x0 - ex, b.x1 + ex, b.y0 - ey, b.y1 + ey};
    const winding w = measure_winding(f, moved, opts.max_samples);
    if (w.ok)
        return static_cast<int>(std::lround(w.turns));
    throw numeric_error("count_zeros: winding number did not settle on box [" + std::to_string(b.x0) + "," +
                        std::to_string(b.x1) + "]x[" + std::to_string(b.y0) + "," + std::to_string(b.y1) + "]");
}

cvec locate_zeros(const std::function<cplx(cplx)>& f, const box& b, const zero_options& opts)
{
    cvec out;
    search(f, b, count_zeros(f, b, opts), 0, opts, out);
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
        return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
    return out;
}

} // namespace tcbe
