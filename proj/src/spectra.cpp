#include "tcbe/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "tcbe/parallel.hpp"

namespace tcbe {

spectrum_mode parse_spectrum_mode(const std::string& name)
{
    if (name == "full")
        return spectrum_mode::full;
    if (name == "truncated")
        return spectrum_mode::truncated;
    if (name == "perturbed")
        return spectrum_mode::perturbed;
    throw domain_error("unknown spectrum mode: " + name);
}

std::string to_string(spectrum_mode mode)
{
    switch (mode) {
    case spectrum_mode::full: return "full";
    case spectrum_mode::truncated: return "truncated";
    case spectrum_mode::perturbed: return "perturbed";
    }
    return "?";
}

scaling parse_scaling(const std::string& name)
{
    if (name == "none")
        return scaling::none;
    if (name == "edge")
        return scaling::edge;
    throw domain_error("unknown scaling: " + name);
}

void spectrum_request::validate() const
{
    spec.validate();
    if (mode == spectrum_mode::perturbed && !(r >= 0.0 && r <= 1.0))
        throw domain_error("--r must lie in [0,1]");
}

std::size_t spectrum_request::eigenvalue_count() const
{
    std::size_t n = spec.matrix_size();
    return mode == spectrum_mode::truncated ? n - 1 : n;
}

cvec spectrum_points(const verblunsky& alpha, spectrum_mode mode, double r)
{
    polynomial p;
    switch (mode) {
    case spectrum_mode::full:
        p = characteristic_polynomial(alpha);
        break;
    case spectrum_mode::truncated: {
        verblunsky rev = reverse(alpha);
        rev.values.pop_back();
        if (rev.values.empty())
            return {};
        p = characteristic_polynomial(rev);
        break;
    }
    case spectrum_mode::perturbed:
        p = characteristic_polynomial(perturb_coefficients(alpha, r));
        break;
    }
    cvec z = find_roots(p);
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        double ta = std::arg(a), tb = std::arg(b);
        return ta != tb ? ta < tb : std::abs(a) < std::abs(b);
    });
    return z;
}

point_sample spectrum_replicate(const spectrum_request& req, std::uint64_t seed, std::uint64_t replicate)
{
    rng_stream rng(seed, replicate);
    verblunsky alpha = sample_regular_coefficients(req.spec, rng);
    point_sample out;
    out.points = spectrum_points(alpha, req.mode, req.r);
    out.where = frame::unit_disk;
    out.n = req.spec.matrix_size();
    out.ensemble = req.spec.describe();
    out.seed = seed;
    if (req.scale == scaling::edge)
        out = edge_scale(out, req.eigenvalue_count());
    return out;
}

std::vector<point_sample> sample_spectra(const spectrum_request& req, std::size_t reps, std::uint64_t seed)
{
    req.validate();
    std::vector<point_sample> out(reps);
    exception_slot error;
    #pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(reps); ++i)
        error.run([&] { out[i] = spectrum_replicate(req, seed, std::uint64_t(i)); });
    error.rethrow();
    return out;
}

std::vector<point_sample> sample_spectra_serial(const spectrum_request& req, std::size_t reps, std::uint64_t seed)
{
    req.validate();
    std::vector<point_sample> out(reps);
    for (std::size_t i = 0; i < reps; ++i)
        out[i] = spectrum_replicate(req, seed, i);
    return out;
}

std::vector<coefficient_draw> sample_coefficients(const ensemble_spec& spec, std::size_t reps, std::uint64_t seed)
{
    spec.validate();
    std::vector<coefficient_draw> out(reps);
    exception_slot error;
    #pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(reps); ++i)
        error.run([&] {
            rng_stream rng(seed, std::uint64_t(i));
            out[i] = sample_ensemble_coefficients(spec, rng);
        });
    error.rethrow();
    return out;
}

namespace {

std::optional<limit_field> one_path(const sde_config& base, std::uint64_t seed, std::size_t i)
{
    sde_config c = base;
    c.rng = rng_stream(seed, i);
    try {
        return simulate_H(c);
    } catch (const path_overflow&) {
        return std::nullopt;
    }
}

path_batch collect(std::vector<std::optional<limit_field>>& slots)
{
    path_batch out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i]) {
            out.fields.push_back(std::move(*slots[i]));
            out.path_index.push_back(i);
        } else {
            out.discarded.push_back(i);
        }
    }
    return out;
}

} // namespace

path_batch simulate_paths(const sde_config& base, std::size_t paths, std::uint64_t seed)
{
    base.validate();
    std::vector<std::optional<limit_field>> slots(paths);
    exception_slot error;
    #pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(paths); ++i)
        error.run([&] { slots[i] = one_path(base, seed, std::size_t(i)); });
    error.rethrow();
    return collect(slots);
}

path_batch simulate_paths_serial(const sde_config& base, std::size_t paths, std::uint64_t seed)
{
    base.validate();
    std::vector<std::optional<limit_field>> slots(paths);
    for (std::size_t i = 0; i < paths; ++i)
        slots[i] = one_path(base, seed, i);
    return collect(slots);
}

limit_function parse_limit_function(const std::string& name)
{
    if (name == "zeta")
        return limit_function::zeta;
    if (name == "E")
        return limit_function::structure;
    if (name == "Er")
        return limit_function::perturbed;
    throw domain_error("unknown function: " + name + " (expected zeta, E or Er)");
}

std::string to_string(limit_function fn)
{
    switch (fn) {
    case limit_function::zeta: return "zeta";
    case limit_function::structure: return "E";
    case limit_function::perturbed: return "Er";
    }
    return "?";
}

circle_plan circle_plan::around(const box& b)
{
    cplx center(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1));
    double half_diag = 0.5 * std::hypot(b.x1 - b.x0, b.y1 - b.y0);
    double radius = std::max(1.5 * half_diag, half_diag + 2.0);
    auto count = std::size_t(8 * std::ceil(radius));
    return {center, radius, std::max<std::size_t>(64, count)};
}

cvec limit_zeros(const limit_field& field, const circle_plan& plan, limit_function fn,
                 double r, const box& b)
{
    field_interpolant interp(field, plan.center, plan.radius);
    std::function<cplx(cplx)> f;
    switch (fn) {
    case limit_function::zeta:
        f = [&](cplx z) { return secular_fn(interp, z); };
        break;
    case limit_function::structure:
        f = [&](cplx z) { return structure_fn(interp, z); };
        break;
    case limit_function::perturbed:
        f = [&](cplx z) { return perturbed_structure_fn(interp, r, z); };
        break;
    }
    return locate_zeros(f, b);
}

} // namespace tcbe
