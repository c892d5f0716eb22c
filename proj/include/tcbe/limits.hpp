#ifndef TCBE_LIMITS_HPP
#define TCBE_LIMITS_HPP

#include <functional>
#include <optional>

#include "tcbe/dirac.hpp"
#include "tcbe/sampling.hpp"

namespace tcbe {

enum class limit_family { sine, bessel, hua_pickrell };

limit_family parse_limit_family(const std::string& name);
std::string to_string(limit_family family);

// -max(160/beta, (4/beta) ln(2e6 |z|_max))
double default_u_min(double beta, double z_max);

struct sde_config {
    double beta = 2.0;
    limit_family family = limit_family::sine;
    double a = 0.0;       // Bessel
    cplx delta = 0.0;     // Hua-Pickrell
    double u_min = -80.0;
    double step = 1e-3;
    cvec z_grid;
    rng_stream rng{0, 0};

    void validate() const;
    std::size_t steps() const;
};

// Brownian increments on the step grid; db2 drives the diagonal entry
// (B for Bessel), db1 the off-diagonal one. Per step we also keep the Levy
// area (1/2) int (b2 db1 - b1 db2) and the space-time areas
// int (b_i(s) - b_i(u)) ds - h db_i / 2, built from `micro` sub-steps.
struct brownian_increments {
    double step = 0.0;
    std::vector<double> db1, db2, levy, st1, st2;
    bool silent = false;   // diffusion switched off entirely (test hook)

    static brownian_increments draw(std::size_t steps, double step, rng_stream& rng, int micro = 4);
    static brownian_increments zero(std::size_t steps, double step);
    // same path on the doubled step (Chen's relation for the areas)
    brownian_increments coarsen() const;
};

struct limit_field {
    limit_family family = limit_family::sine;
    cvec z_grid;
    std::vector<cvec2> h0;         // H(0, z) per grid point
    std::optional<double> boundary_q;

    const cvec2& at(cplx z) const;
};

class path_overflow : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Draws q then the increments from config.rng.
limit_field simulate_H(sde_config config);
// Uses the supplied increments and boundary value; increments.step overrides config.step.
limit_field simulate_H(const sde_config& config, const brownian_increments& noise,
                       std::optional<double> boundary_q);

cplx structure_fn(const limit_field& field, cplx z);
cplx secular_fn(const limit_field& field, cplx z);
// c_r = (q + i k)/(1 - i q k), k = (1-r)/(1+r)
cplx perturbation_coefficient(double q, double r);
cplx perturbed_structure_fn(const limit_field& field, double r, cplx z);
// general form H^T (1, -i (1 - r g)/(1 + r g))
cplx perturbed_structure_fn(const limit_field& field, double r, cplx gamma, cplx z);

// Points on a circle, and a Taylor interpolant of a field simulated on them.
cvec circle_grid(cplx center, double radius, std::size_t count);

class field_interpolant {
public:
    field_interpolant(const limit_field& field, cplx center, double radius);

    cvec2 h0(cplx z) const;
    std::optional<double> boundary_q() const { return q_; }
    limit_family family() const { return family_; }

private:
    cplx center_;
    double radius_;
    cvec c1_, c2_;
    std::optional<double> q_;
    limit_family family_;
};

cplx structure_fn(const field_interpolant& field, cplx z);
cplx secular_fn(const field_interpolant& field, cplx z);
cplx perturbed_structure_fn(const field_interpolant& field, double r, cplx z);

struct box {
    double x0, x1, y0, y1;
};

struct zero_options {
    std::size_t initial_samples = 512;
    std::size_t max_samples = 1 << 15;
    int max_depth = 40;
};

// Argument-principle count of zeros inside the box.
int count_zeros(const std::function<cplx(cplx)>& f, const box& b, const zero_options& opts = {});
cvec locate_zeros(const std::function<cplx(cplx)>& f, const box& b, const zero_options& opts = {});

} // namespace tcbe

#endif
