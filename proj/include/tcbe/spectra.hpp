#ifndef TCBE_SPECTRA_HPP
#define TCBE_SPECTRA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tcbe/limits.hpp"
#include "tcbe/roots.hpp"
#include "tcbe/sampling.hpp"

// Replicate drivers. Each replicate i draws from rng_stream(seed, i), so the
// OpenMP drivers and their serial twins return identical results.
namespace tcbe {

enum class spectrum_mode { full, truncated, perturbed };
enum class scaling { none, edge };

spectrum_mode parse_spectrum_mode(const std::string& name);
std::string to_string(spectrum_mode mode);
scaling parse_scaling(const std::string& name);

struct spectrum_request {
    ensemble_spec spec;
    spectrum_mode mode = spectrum_mode::full;
    double r = 1.0;               // perturbed mode only
    scaling scale = scaling::none;

    void validate() const;
    // N for full and perturbed, N - 1 for truncated
    std::size_t eigenvalue_count() const;
};

// Eigenvalues of one coefficient draw, sorted by angle then modulus.
cvec spectrum_points(const verblunsky& alpha, spectrum_mode mode, double r);

point_sample spectrum_replicate(const spectrum_request& req, std::uint64_t seed, std::uint64_t replicate);
std::vector<point_sample> sample_spectra(const spectrum_request& req, std::size_t reps, std::uint64_t seed);
std::vector<point_sample> sample_spectra_serial(const spectrum_request& req, std::size_t reps, std::uint64_t seed);

std::vector<coefficient_draw> sample_coefficients(const ensemble_spec& spec, std::size_t reps, std::uint64_t seed);

struct path_batch {
    std::vector<limit_field> fields;        // successful paths in path order
    std::vector<std::size_t> path_index;    // original index of each field
    std::vector<std::size_t> discarded;     // overflowed paths
};

// Path i integrates with rng_stream(seed, i); base.rng is ignored.
path_batch simulate_paths(const sde_config& base, std::size_t paths, std::uint64_t seed);
path_batch simulate_paths_serial(const sde_config& base, std::size_t paths, std::uint64_t seed);

enum class limit_function { zeta, structure, perturbed };

limit_function parse_limit_function(const std::string& name);
std::string to_string(limit_function fn);

// Simulation circle enclosing a box, for zero search by interpolation.
struct circle_plan {
    cplx center;
    double radius;
    std::size_t count;

    static circle_plan around(const box& b);
    cvec grid() const { return circle_grid(center, radius, count); }
};

// Zeros of the chosen function inside the box from a field simulated on plan.grid().
cvec limit_zeros(const limit_field& field, const circle_plan& plan, limit_function fn,
                 double r, const box& b);

} // namespace tcbe

#endif
