#ifndef TCBE_STATS_HPP
#define TCBE_STATS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tcbe/limits.hpp"
#include "tcbe/roots.hpp"
#include "tcbe/sampling.hpp"

namespace tcbe {

// Per-replicate counts in a fixed region.
struct count_statistics {
    box region{0, 0, 0, 0};
    std::vector<int> counts;
    std::size_t replicates = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased

    static count_statistics from_counts(const box& region, std::vector<int> counts);
    // mean == sum / replicates, recomputed
    bool consistent(double tol = 1e-12) const;
    double standard_error() const;
};

// Lebesgue density of the one-point intensity of the size-n truncated CUE
// (n eigenvalues): (1/pi) sum_{k<n} (k+1) |z|^{2k}.
double rho1_trunc_cue(cplx z, std::size_t n);
// expected number of eigenvalues in |z| <= r: sum_{k=1}^n r^{2k}
double trunc_cue_disk_mass(double r, std::size_t n);

// K_edge(z, z) = (1/pi) int_0^1 t e^{-2 t Im z} dt on the upper half plane.
double edge_kernel_intensity(cplx z);
// closed-form integral of K_edge(z, z) over a box in the closed upper half plane
double edge_kernel_box_mass(const box& b);

// log Gamma on the complex plane (principal branch away from the poles).
cplx log_gamma(cplx z);

// One-eigenvalue density of the truncation of a size-2 circular or
// circular-Jacobi ensemble with respect to Lebesgue measure on the disk.
double trunc_density_oracle(const ensemble_spec& parent, cplx z);
std::vector<double> trunc_density_oracle(const ensemble_spec& parent, const cvec& z_points);

struct ks_result {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Asymptotic Kolmogorov tail P(K > lambda).
double kolmogorov_tail(double lambda);
ks_result ks_two_sample(std::vector<double> x, std::vector<double> y);
ks_result ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);

struct chi_square_result {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    double min_expected = 0.0;
};

// Pearson chi-square; dof = bins - constraints.
chi_square_result chi_square_test(const std::vector<double>& observed,
                                  const std::vector<double>& expected,
                                  std::size_t constraints = 1);

// Closed box with inclusive edges; the sample frame must match the chart.
int count_in_box(const point_sample& points, const box& b, frame chart);

enum class identity_kind { reversed_cbe, hitting, claim_cj, fact_iota };

identity_kind parse_identity_kind(const std::string& name);
std::string to_string(identity_kind kind);

struct identity_params {
    double beta = 2.0;
    std::size_t n = 5;
    cplx delta = 0.0;
    std::vector<double> a_seq;   // claim_cj: a_0 = 0, a_1, ...
    double a = 0.0;              // fact_iota
};

struct component_test {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
};

struct identity_report {
    identity_kind kind = identity_kind::reversed_cbe;
    identity_params params;
    std::size_t replicates = 0;
    std::vector<component_test> components;

    double min_p() const;
    // Bonferroni: min(1, m * min p)
    double adjusted_p() const;
    bool passed(double level = 0.01) const { return adjusted_p() > level; }
};

// Two independent replicate sets, one per side of the identity, compared
// componentwise by two-sample KS (modulus and angle relative to 1).
identity_report mc_identity_suite(identity_kind kind, const identity_params& params,
                                  std::size_t replicates, std::uint64_t seed);

// Angle of z relative to the point 1, in (-pi, pi].
double angle_from_one(cplx z);

} // namespace tcbe

#endif
