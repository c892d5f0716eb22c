#include <cmath>

#include "doctest.h"
#include "tcbe/coeffs.hpp"
#include "tcbe/sampling.hpp"

using namespace tcbe;

namespace {

double max_diff(const cvec& a, const cvec& b)
{
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

cplx random_disk_point(rng_stream& rng)
{
    double r = std::sqrt(rng.uniform()) * 0.95;
    return std::polar(r, 2.0 * M_PI * rng.uniform());
}

} // namespace

TEST_CASE("modified_from_regular worked examples")
{
    CHECK(modified_from_regular({}).values.empty());
    cplx a0{0.3, -0.7};
    CHECK(std::abs(modified_from_regular({{a0}}).values[0] - std::conj(a0)) == 0.0);
    auto g = modified_from_regular({{0.5, {0.0, 0.3}}});
    CHECK(std::abs(g.values[0] - cplx(0.5)) < 1e-15);
    CHECK(std::abs(g.values[1] - cplx(0.0, -0.3)) < 1e-15);
}

TEST_CASE("regular_from_modified worked examples")
{
    CHECK(std::abs(regular_from_modified({{0.5}}).values[0] - cplx(0.5)) < 1e-15);
    auto a = regular_from_modified({{0.5, {0.0, -0.3}}});
    CHECK(std::abs(a.values[1] - cplx(0.0, 0.3)) < 1e-15);
    verblunsky x{{{0.3, 0.1}, -0.2, std::polar(1.0, M_PI / 4)}};
    CHECK(max_diff(regular_from_modified(modified_from_regular(x)).values, x.values) <= 1e-13);
}

TEST_CASE("degenerate coefficient is rejected")
{
    CHECK_THROWS_AS(regular_from_modified({{1.0, 0.2}}), degenerate_error);
    // alpha_0 = 1 makes gamma_0 = 1, which blocks the product for k = 1
    CHECK_THROWS_AS(modified_from_regular({{1.0, 0.2}}), degenerate_error);
}

TEST_CASE("reverse examples and involution")
{
    CHECK(max_diff(reverse({{0.0, 1.0}}).values, {0.0, 1.0}) == 0.0);
    CHECK(max_diff(reverse({{0.5, -1.0}}).values, {0.5, -1.0}) < 1e-16);
    verblunsky x{{{0.3, 0.1}, 0.2, std::polar(1.0, M_PI / 3)}};
    CHECK(max_diff(reverse(reverse(x)).values, x.values) <= 1e-15);
    CHECK_THROWS_AS(reverse({{0.2, 0.9}}), domain_error);
}

TEST_CASE("gamma_iota examples")
{
    CHECK(gamma_iota(0.0) == cplx(0.0));
    CHECK(std::abs(gamma_iota(0.37) - cplx(-0.37)) < 1e-16);
    cplx g{0.2, 0.4};
    CHECK(std::abs(gamma_iota(gamma_iota(g)) - g) < 1e-15);
    CHECK_THROWS(gamma_iota(1.0));
}

TEST_CASE("random round trips preserve moduli")
{
    rng_stream rng(11, 0);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + trial % 50;
        verblunsky a;
        for (std::size_t k = 0; k < n; ++k)
            a.values.push_back(random_disk_point(rng));
        auto g = modified_from_regular(a);
        REQUIRE(g.size() == n);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(std::abs(g.values[k]) - std::abs(a.values[k])) <= 1e-13);
        CHECK(max_diff(regular_from_modified(g).values, a.values) <= 1e-13);

        cplx z = random_disk_point(rng);
        CHECK(std::abs(std::abs(gamma_iota(z)) - std::abs(z)) <= 1e-15);
        CHECK(std::abs(gamma_iota(gamma_iota(z)) - z) <= 1e-14);
    }
}

TEST_CASE("unitary flag")
{
    CHECK(verblunsky{{0.2, std::polar(1.0, 0.4)}}.unitary());
    CHECK_FALSE(verblunsky{{0.2, 0.99}}.unitary());
}
