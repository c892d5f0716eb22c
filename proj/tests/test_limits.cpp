#include <cmath>

#include "doctest.h"
#include "tcbe/cmv.hpp"
#include "tcbe/dirac.hpp"
#include "tcbe/limits.hpp"
#include "tcbe/roots.hpp"
#include "tcbe/sampling.hpp"

using namespace tcbe;

namespace {

constexpr cplx I{0.0, 1.0};

sde_config config(limit_family family, cvec grid, double step = 1e-2)
{
    sde_config c;
    c.family = family;
    c.beta = 2.0;
    c.step = step;
    c.z_grid = std::move(grid);
    double zmax = 0.0;
    for (cplx z : c.z_grid)
        zmax = std::max(zmax, std::abs(z));
    c.u_min = default_u_min(c.beta, zmax);
    return c;
}

} // namespace

TEST_CASE("u_min rule")
{
    CHECK(default_u_min(2.0, 0.0) == -80.0);
    CHECK(default_u_min(2.0, 5.0) == -80.0);
    CHECK(std::abs(default_u_min(0.1, 1e3) + 1600.0) < 1e-12);
    CHECK(std::abs(default_u_min(2.0, 1e30) + 2.0 * std::log(2e36)) < 1e-9);

    auto c = config(limit_family::sine, {5.0});
    c.u_min = -5.0;
    try {
        c.validate();
        FAIL("expected a u_min violation");
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("need u_min <=") != std::string::npos);
    }
    c.u_min = 4.0 / 2.0 * std::log(2e-6 / 5.0);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("H(0,0) = (1,0) for every family")
{
    for (auto fam : {limit_family::sine, limit_family::bessel, limit_family::hua_pickrell}) {
        auto c = config(fam, {0.0, 1.5});
        c.a = 0.7;
        c.delta = {0.3, -0.8};
        c.rng = rng_stream(3, 1);
        auto f = simulate_H(c);
        CHECK(f.at(0.0)[0] == cplx(1.0));
        CHECK(f.at(0.0)[1] == cplx(0.0));
        CHECK(std::abs(structure_fn(f, 0.0) - 1.0) == 0.0);
        CHECK(std::abs(secular_fn(f, 0.0) - 1.0) == 0.0);
        CHECK(f.boundary_q.has_value() == (fam != limit_family::bessel));
    }
}

TEST_CASE("noise switched off gives the closed form")
{
    cvec grid;
    for (int k = -5; k <= 5; ++k)
        grid.push_back(double(k));
    grid.push_back(cplx(3.0, 4.0));
    auto c = config(limit_family::sine, grid, 1e-3);
    auto f = simulate_H(c, brownian_increments::zero(c.steps(), c.step), 0.0);
    for (cplx z : grid) {
        auto h = f.at(z);
        double scale = std::max(1.0, std::abs(std::cos(z / 2.0)));
        CHECK(std::abs(h[0] - std::cos(z / 2.0)) <= 1e-4 * scale);
        CHECK(std::abs(h[1] + std::sin(z / 2.0)) <= 1e-4 * scale);
        CHECK(std::abs(structure_fn(f, z) - std::exp(I * z / 2.0)) <= 2e-4 * scale);
    }
}

TEST_CASE("coarsened increments obey Chen's relation for the sums")
{
    rng_stream rng(4, 0);
    auto fine = brownian_increments::draw(64, 1e-3, rng);
    auto coarse = fine.coarsen();
    REQUIRE(coarse.db1.size() == 32);
    CHECK(coarse.step == 2e-3);
    double s1 = 0, s2 = 0;
    for (std::size_t k = 0; k < 32; ++k) {
        s1 += coarse.db1[k];
        s2 += fine.db1[2 * k] + fine.db1[2 * k + 1];
    }
    CHECK(std::abs(s1 - s2) <= 1e-14);
    CHECK_THROWS_AS(brownian_increments::draw(3, 1e-3, rng).coarsen(), domain_error);
}

TEST_CASE("Hua-Pickrell with delta = 0 is Sine under shared noise")
{
    cvec grid{-3.0, 0.5, cplx(2.0, 1.0)};
    auto s = config(limit_family::sine, grid);
    auto h = config(limit_family::hua_pickrell, grid);
    s.rng = rng_stream(9, 2);
    h.rng = rng_stream(9, 2);
    auto fs = simulate_H(s), fh = simulate_H(h);
    CHECK(*fs.boundary_q == *fh.boundary_q);
    for (cplx z : grid) {
        CHECK(fs.at(z)[0] == fh.at(z)[0]);
        CHECK(fs.at(z)[1] == fh.at(z)[1]);
    }
}

TEST_CASE("real grid points give real fields and real secular values")
{
    for (auto fam : {limit_family::sine, limit_family::bessel, limit_family::hua_pickrell}) {
        cvec grid{-4.0, -1.0, 2.0, 5.0};
        auto c = config(fam, grid);
        c.a = 1.5;
        c.delta = {0.4, 0.9};
        c.rng = rng_stream(11, std::uint64_t(fam));
        auto f = simulate_H(c);
        for (cplx x : grid) {
            auto h = f.at(x);
            CHECK(std::abs(h[0].imag()) <= 1e-10 * (1 + std::abs(h[0])));
            CHECK(std::abs(h[1].imag()) <= 1e-10 * (1 + std::abs(h[1])));
            cplx zeta = secular_fn(f, x);
            CHECK(std::abs(zeta.imag()) <= 1e-10 * (1 + std::abs(zeta)));
            if (fam != limit_family::bessel) {
                cplx e = structure_fn(f, x);
                CHECK(std::abs(zeta.real() - (e.real() + *f.boundary_q * e.imag())) <= 1e-10 * (1 + std::abs(zeta)));
            } else {
                CHECK(zeta == h[0]);
            }
        }
    }
}

TEST_CASE("perturbation endpoints")
{
    for (double q : {-2.0, 0.0, 0.3, 7.0}) {
        CHECK(std::abs(perturbation_coefficient(q, 1.0) - q) <= 1e-15 * (1 + std::abs(q)));
        CHECK(std::abs(perturbation_coefficient(q, 0.0) - I) <= 1e-15);
    }
    cvec grid{1.0, cplx(-2.0, 0.5)};
    for (auto fam : {limit_family::sine, limit_family::bessel}) {
        auto c = config(fam, grid);
        c.rng = rng_stream(12, 0);
        auto f = simulate_H(c);
        for (cplx z : grid) {
            CHECK(std::abs(perturbed_structure_fn(f, 0.0, z) - structure_fn(f, z)) <= 1e-14 * (1 + std::abs(structure_fn(f, z))));
            if (fam == limit_family::sine)
                CHECK(std::abs(perturbed_structure_fn(f, 1.0, z) - secular_fn(f, z)) <= 1e-12 * (1 + std::abs(secular_fn(f, z))));
            CHECK(std::abs(perturbed_structure_fn(f, 0.0, 1.0, z) - structure_fn(f, z)) <= 1e-14 * (1 + std::abs(structure_fn(f, z))));
        }
        CHECK_THROWS_AS(perturbed_structure_fn(f, 1.0, -1.0, 1.0), domain_error);
        CHECK_THROWS_AS(perturbed_structure_fn(f, 1.5, 1.0), domain_error);
    }
}

TEST_CASE("locate_zeros on closed forms")
{
    auto c = locate_zeros([](cplx z) { return std::cos(z / 2.0); }, {-4, 4, -1, 1});
    REQUIRE(c.size() == 2);
    std::sort(c.begin(), c.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    CHECK(std::abs(c[0] + M_PI) <= 1e-8);
    CHECK(std::abs(c[1] - M_PI) <= 1e-8);

    auto q = locate_zeros([](cplx z) { return z * z + 1.0; }, {-2, 2, 0, 2});
    REQUIRE(q.size() == 1);
    CHECK(std::abs(q[0] - I) <= 1e-8);

    CHECK(count_zeros([](cplx z) { return std::exp(z); }, {-3, 3, -3, 3}) == 0);
    CHECK(count_zeros([](cplx z) { return std::sin(z); }, {-10, 10, -1, 1}) == 7);
    CHECK_THROWS_AS(count_zeros([](cplx z) { return z; }, {1, 1, 0, 1}), domain_error);
}

TEST_CASE("finite structure zeros: contour count equals root count")
{
    rng_stream rng(13, 0);
    const std::size_t n = 50;
    const box b{0.0, 20.0, 1e-9, 5.0};
    for (int trial = 0; trial < 3; ++trial) {
        auto a = sample_regular_coefficients({ensemble_kind::circular, n, 2.0}, rng);
        auto rev = reverse(a);
        rev.values.pop_back();
        point_sample s;
        s.points = find_roots(characteristic_polynomial(rev));
        auto scaled = edge_scale(s, n);
        int expected = 0;
        for (cplx w : scaled.points)
            expected += (w.real() >= b.x0 && w.real() <= b.x1 && w.imag() > b.y0 && w.imag() <= b.y1);
        CHECK(count_zeros([&](cplx z) { return finite_structure_function(a, z); }, b) == expected);
    }
}

TEST_CASE("circle interpolant reproduces direct simulation")
{
    const cplx center{5.0, 1.5};
    const double radius = 8.0;
    auto grid = circle_grid(center, radius, 96);
    REQUIRE(grid.size() == 96);
    CHECK(std::abs(std::abs(grid[17] - center) - radius) <= 1e-12);

    cvec probe{cplx(1.0, 0.5), cplx(9.0, 2.5), cplx(4.0, 0.0)};
    cvec all = grid;
    all.insert(all.end(), probe.begin(), probe.end());
    auto c = config(limit_family::sine, all);
    c.rng = rng_stream(14, 0);
    auto f = simulate_H(c);
    limit_field ring = f;
    ring.z_grid = grid;
    ring.h0.resize(grid.size());
    field_interpolant interp(ring, center, radius);
    for (cplx z : probe) {
        auto direct = f.at(z);
        auto approx = interp.h0(z);
        CHECK(std::abs(approx[0] - direct[0]) <= 1e-8 * (1 + std::abs(direct[0])));
        CHECK(std::abs(approx[1] - direct[1]) <= 1e-8 * (1 + std::abs(direct[1])));
    }
    CHECK(std::abs(structure_fn(interp, probe[0]) - structure_fn(f, probe[0])) <= 1e-7);
    CHECK_THROWS_AS(field_interpolant(ring, center, radius + 1.0), domain_error);
}

TEST_CASE("Sine secular zeros lie on the real axis")
{
    const double radius = 9.0;
    auto c = config(limit_family::sine, circle_grid(0.0, radius, 96));
    for (std::uint64_t path = 0; path < 4; ++path) {
        c.rng = rng_stream(15, path);
        auto f = simulate_H(c);
        field_interpolant interp(f, 0.0, radius);
        auto zeros = locate_zeros([&](cplx z) { return secular_fn(interp, z); }, {-5.1, 5.2, -1.0, 1.0});
        for (cplx z : zeros)
            CHECK(std::abs(z.imag()) <= 1e-4);
    }
}
