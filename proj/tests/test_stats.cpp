#include <cmath>

#include "doctest.h"
#include "tcbe/dirac.hpp"
#include "tcbe/oracles.hpp"
#include "tcbe/sampling.hpp"
#include "tcbe/stats.hpp"

using namespace tcbe;

TEST_CASE("count statistics")
{
    auto s = count_statistics::from_counts({0, 1, 0, 1}, {1, 2, 3, 6});
    CHECK(s.replicates == 4);
    CHECK(s.mean == doctest::Approx(3.0));
    CHECK(s.variance == doctest::Approx(14.0 / 3.0));
    CHECK(s.consistent());
    s.mean += 1e-6;
    CHECK_FALSE(s.consistent());
    CHECK(count_statistics::from_counts({0, 1, 0, 1}, {}).replicates == 0);
}

TEST_CASE("rho1 of the truncated CUE")
{
    CHECK(rho1_trunc_cue(0.0, 9) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    CHECK(rho1_trunc_cue(cplx(0.3, 0.6), 1) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    cplx z(0.2, -0.5);
    double bergman = 1.0 / (M_PI * std::pow(1.0 - std::norm(z), 2));
    CHECK(std::abs(rho1_trunc_cue(z, 400) - bergman) <= 1e-12);
    CHECK_THROWS_AS(rho1_trunc_cue(1.0, 3), domain_error);

    for (std::size_t n : {1u, 4u, 8u, 20u}) {
        auto rho = [n](double r) { return rho1_trunc_cue(r, n); };
        CHECK(std::abs(oracle::annulus_mass_quadrature(rho, 0.0, 1.0 - 1e-15) - double(n)) <= 1e-8);
        CHECK(std::abs(oracle::annulus_mass_quadrature(rho, 0.0, 0.7) - trunc_cue_disk_mass(0.7, n)) <= 1e-10);
    }
}

TEST_CASE("edge kernel intensity")
{
    CHECK(std::abs(edge_kernel_intensity(cplx(0.0, 1e-12)) - 1.0 / (2.0 * M_PI)) <= 1e-12);
    CHECK(std::abs(edge_kernel_intensity(cplx(3.0, 1.0)) - (1.0 - 3.0 * std::exp(-2.0)) / (4.0 * M_PI)) <= 1e-15);
    double prev = 1e300;
    for (double y = 1e-6; y < 30.0; y *= 1.3) {
        double k = edge_kernel_intensity(cplx(0.0, y));
        CHECK(k < prev);
        prev = k;
        CHECK(std::abs(k - oracle::edge_intensity_quadrature(cplx(0.0, y))) <= 1e-12);
    }
    CHECK_THROWS_AS(edge_kernel_intensity(cplx(1.0, 0.0)), domain_error);

    box b{0, 10, 0, 3};
    CHECK(std::abs(edge_kernel_box_mass(b) - oracle::edge_box_mass_quadrature(b)) <= 1e-10);
    CHECK(edge_kernel_box_mass(b) == doctest::Approx(1.327).epsilon(1e-3));
}

TEST_CASE("complex log gamma")
{
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 30.0})
        CHECK(std::abs(log_gamma(x) - std::lgamma(x)) <= 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
    for (cplx z : {cplx(0.3, 0.7), cplx(2.0, -1.5), cplx(-0.4, 2.0)}) {
        cplx rec = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
        CHECK(std::abs(std::exp(rec) - 1.0) <= 1e-12);
        cplx refl = std::exp(log_gamma(z) + log_gamma(1.0 - z)) * std::sin(M_PI * z);
        CHECK(std::abs(refl - M_PI) <= 1e-11);
    }
}

TEST_CASE("truncated density oracle")
{
    ensemble_spec cue{ensemble_kind::circular, 2, 2.0};
    CHECK(trunc_density_oracle(cue, cplx(0.3, 0.2)) == doctest::Approx(1.0 / M_PI).epsilon(1e-13));
    ensemble_spec four{ensemble_kind::circular, 2, 4.0};
    CHECK(trunc_density_oracle(four, 0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
    ensemble_spec cj0{ensemble_kind::circular_jacobi, 2, 3.0, 0, 0, 0.0};
    ensemble_spec c3{ensemble_kind::circular, 2, 3.0};
    CHECK(trunc_density_oracle(cj0, cplx(-0.4, 0.1)) == doctest::Approx(trunc_density_oracle(c3, cplx(-0.4, 0.1))).epsilon(1e-13));

    // normalisation by quadrature, independent of the Gamma constant
    for (ensemble_spec s : {ensemble_spec{ensemble_kind::circular_jacobi, 2, 2.0, 0, 0, {0.5, 0.3}},
                            ensemble_spec{ensemble_kind::circular_jacobi, 2, 5.0, 0, 0, {-0.3, -1.2}}}) {
        double mass = oracle::polar_cell_mass([&](cplx z) { return trunc_density_oracle(s, z); }, 0.0, 1.0, -M_PI, M_PI);
        CHECK(std::abs(mass - 1.0) <= 1e-8);
    }
    CHECK_THROWS_AS(trunc_density_oracle({ensemble_kind::circular, 3, 2.0}, 0.0), domain_error);
    CHECK_THROWS_AS(trunc_density_oracle({ensemble_kind::real_orthogonal, 2, 2.0}, 0.0), domain_error);
    CHECK(trunc_density_oracle(cue, cvec{0.0, 0.5}).size() == 2);
}

TEST_CASE("kolmogorov tail")
{
    CHECK(kolmogorov_tail(0.0) == 1.0);
    CHECK(std::abs(kolmogorov_tail(1.0) - 0.26999967167735456) <= 1e-12);
    CHECK(std::abs(kolmogorov_tail(1.3580986393225507) - 0.05) <= 1e-10);
    CHECK(std::abs(kolmogorov_tail(1.0 - 1e-12) - kolmogorov_tail(1.0 + 1e-12)) <= 1e-10);
    CHECK(kolmogorov_tail(0.2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-sample KS")
{
    std::vector<double> x{0.3, 0.1, 0.7, 0.9};
    auto same = ks_two_sample(x, x);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);

    rng_stream rng(1, 0);
    std::vector<double> u, v;
    for (int i = 0; i < 10000; ++i) {
        u.push_back(rng.uniform());
        v.push_back(0.5 + rng.uniform());
    }
    CHECK(ks_two_sample(u, v).p_value < 1e-10);
}

TEST_CASE("KS null calibration")
{
    rng_stream rng(2, 0);
    int rejections_two = 0, rejections_one = 0;
    const int runs = 1000;
    for (int r = 0; r < runs; ++r) {
        std::vector<double> a(200), b(300);
        for (auto& x : a)
            x = rng.uniform();
        for (auto& x : b)
            x = rng.uniform();
        rejections_two += ks_two_sample(a, b).p_value < 0.01;
        rejections_one += ks_one_sample(a, [](double t) { return t; }).p_value < 0.01;
    }
    const double sd = std::sqrt(0.01 * 0.99 / runs);
    CHECK(std::abs(rejections_two / double(runs) - 0.01) <= 3.0 * sd);
    CHECK(std::abs(rejections_one / double(runs) - 0.01) <= 3.0 * sd);
}

TEST_CASE("chi square")
{
    auto c = chi_square_test({10, 20, 30}, {20, 20, 20}, 1);
    CHECK(c.statistic == doctest::Approx(10.0));
    CHECK(c.dof == 2);
    CHECK(c.p_value == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
    CHECK(c.min_expected == 20.0);
    CHECK_THROWS_AS(chi_square_test({1, 2}, {1, 0}, 0), domain_error);
    CHECK_THROWS_AS(chi_square_test({1}, {1}, 1), domain_error);
}

TEST_CASE("count_in_box")
{
    point_sample empty;
    empty.where = frame::upper_half_plane;
    CHECK(count_in_box(empty, {0, 1, 0, 1}, frame::upper_half_plane) == 0);
    point_sample corner = empty;
    corner.points = {cplx(1.0, 1.0), cplx(0.0, 0.0), cplx(1.0 + 1e-12, 0.5)};
    CHECK(count_in_box(corner, {0, 1, 0, 1}, frame::upper_half_plane) == 2);
    CHECK_THROWS_AS(count_in_box(corner, {0, 1, 0, 1}, frame::unit_disk), domain_error);
}

TEST_CASE("angle relative to one")
{
    CHECK(angle_from_one(1.0) == 0.0);
    CHECK(std::abs(angle_from_one(cplx(0.0, 2.0)) - M_PI / 2) <= 1e-15);
    CHECK(std::abs(angle_from_one(-1.0) - M_PI) <= 1e-15);
}

TEST_CASE("distributional identities at moderate size")
{
    const std::size_t reps = 20000;
    identity_params rev;
    rev.beta = 2.0;
    rev.n = 5;
    auto r1 = mc_identity_suite(identity_kind::reversed_cbe, rev, reps, 3);
    CHECK(r1.replicates == reps);
    CHECK(r1.components.size() >= 8);
    CHECK(r1.passed());

    identity_params hit;
    hit.beta = 1.0;
    hit.n = 6;
    hit.delta = {0.5, 0.3};
    CHECK(mc_identity_suite(identity_kind::hitting, hit, reps, 3).passed());

    identity_params cj;
    cj.n = 3;
    cj.delta = 0.3;
    cj.a_seq = {0.0, 2.0, 4.0};
    CHECK(mc_identity_suite(identity_kind::claim_cj, cj, reps, 3).passed());

    identity_params iota;
    iota.a = 1.0;
    iota.delta = {0.5, 0.3};
    CHECK(mc_identity_suite(identity_kind::fact_iota, iota, reps, 3).passed());
}

TEST_CASE("hitting comparison has power against a conjugated parameter")
{
    // b_n of the CJ path for delta against Theta(1, conj delta): the angle laws differ
    const cplx delta{0.5, 0.3};
    rng_stream left(5, 0), right(5, 1);
    std::vector<double> a, b;
    for (int i = 0; i < 20000; ++i) {
        auto g = std::get<modified_verblunsky>(
            sample_ensemble_coefficients({ensemble_kind::circular_jacobi, 6, 1.0, 0, 0, delta}, left));
        a.push_back(angle_from_one(path_from_modified(g).disk.back()));
        b.push_back(angle_from_one(sample_theta_delta(0.0, std::conj(delta), right)));
    }
    CHECK(ks_two_sample(a, b).p_value < 1e-6);
}

TEST_CASE("identity report helpers")
{
    CHECK(identity_report{}.adjusted_p() == 1.0);
    identity_report r;
    r.components = {{"x", 0.1, 0.004}, {"y", 0.1, 0.5}, {"z", 0.1, 0.9}};
    CHECK(r.min_p() == 0.004);
    CHECK(r.adjusted_p() == doctest::Approx(0.012));
    CHECK(r.passed());
    CHECK_FALSE(r.passed(0.02));
    CHECK(parse_identity_kind("fact_iota") == identity_kind::fact_iota);
    CHECK(to_string(identity_kind::claim_cj) == "claim_cj");
    CHECK_THROWS_AS(parse_identity_kind("nope"), domain_error);
}
