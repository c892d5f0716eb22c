#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "tcbe/oracles.hpp"
#include "tcbe/sampling.hpp"
#include "tcbe/stats.hpp"

using namespace tcbe;

namespace {

double mean(const std::vector<double>& x)
{
    return std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
}

double stddev(const std::vector<double>& x)
{
    double m = mean(x), s = 0.0;
    for (double v : x)
        s += (v - m) * (v - m);
    return std::sqrt(s / double(x.size() - 1));
}

std::vector<double> ranks(const std::vector<double>& x)
{
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return x[i] < x[j]; });
    std::vector<double> r(x.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
        r[idx[k]] = double(k);
    return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y)
{
    auto rx = ranks(x), ry = ranks(y);
    double mx = mean(rx), my = mean(ry), sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

TEST_CASE("rng streams are reproducible and distinct")
{
    rng_stream a(5, 3), b(5, 3), c(5, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        double x = a.uniform();
        CHECK(x == b.uniform());
        differs = differs || x != c.uniform();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
    CHECK(differs);
}

TEST_CASE("sample_theta")
{
    rng_stream rng(1, 0);
    CHECK_THROWS_AS(sample_theta(-0.1, rng), domain_error);
    for (int i = 0; i < 1000; ++i)
        CHECK(std::abs(std::abs(sample_theta(0.0, rng)) - 1.0) <= 1e-15);

    const int n = 100000;
    std::vector<double> r2, re, im;
    for (int i = 0; i < n; ++i) {
        cplx z = sample_theta(2.0, rng);
        REQUIRE(std::abs(z) < 1.0);
        r2.push_back(std::norm(z));
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    CHECK(std::abs(mean(r2) - 0.5) <= 0.01);
    CHECK(std::abs(mean(re)) <= 3.0 * stddev(re) / std::sqrt(double(n)));
    CHECK(std::abs(mean(im)) <= 3.0 * stddev(im) / std::sqrt(double(n)));

    // |z|^2 ~ Beta(1, a/2)
    for (double a : {1.0, 5.0}) {
        std::vector<double> x;
        for (int i = 0; i < 20000; ++i)
            x.push_back(std::norm(sample_theta(a, rng)));
        auto ks = ks_one_sample(x, [a](double t) { return 1.0 - std::pow(1.0 - t, a / 2.0); });
        CHECK(ks.p_value > 0.01);
    }
}

TEST_CASE("sample_scaled_beta moments")
{
    rng_stream rng(2, 0);
    CHECK_THROWS_AS(sample_scaled_beta(0.0, 1.0, rng), domain_error);
    struct row { double s, t, expected; };
    for (row c : {row{1, 1, 0.0}, row{2, 1, -1.0 / 3.0}, row{1, 3, 0.5}}) {
        std::vector<double> x;
        for (int i = 0; i < 50000; ++i) {
            double v = sample_scaled_beta(c.s, c.t, rng);
            REQUIRE(std::abs(v) < 1.0);
            x.push_back(v);
        }
        CHECK(std::abs(mean(x) - c.expected) <= 4.0 * stddev(x) / std::sqrt(double(x.size())));
    }
}

TEST_CASE("sample_pearson_iv")
{
    rng_stream rng(3, 0);
    CHECK_THROWS_AS(sample_pearson_iv(0.5, 0.0, rng), domain_error);

    std::vector<double> cauchy;
    for (int i = 0; i < 40000; ++i)
        cauchy.push_back(sample_pearson_iv(1.0, 0.0, rng));
    std::nth_element(cauchy.begin(), cauchy.begin() + 20000, cauchy.end());
    // median of n Cauchy draws has sd pi / (2 sqrt n)
    CHECK(std::abs(cauchy[20000]) <= 4.0 * M_PI / (2.0 * std::sqrt(40000.0)));

    std::vector<double> t2;
    for (int i = 0; i < 100000; ++i)
        t2.push_back(sample_pearson_iv(1.5, 0.0, rng));
    auto ks = ks_one_sample(t2, [](double x) { return 0.5 + x / (2.0 * std::sqrt(1.0 + x * x)); });
    CHECK(ks.p_value > 0.01);

    // acceptance rate against its quadrature value, and the envelope floor
    const double m = 2.0, mu = 2.0;
    pearson_counter counter;
    std::vector<double> draws;
    for (int i = 0; i < 40000; ++i)
        draws.push_back(sample_pearson_iv(m, mu, rng, &counter));
    auto proposal = [m](double x) { return std::pow(1.0 + x * x, -m); };
    auto target = [m, mu](double x) { return std::pow(1.0 + x * x, -m) * std::exp(-mu * std::atan(x)); };
    const double zp = oracle::integrate(proposal, -1e4, 1e4, 1e-12);
    const double zt = oracle::integrate(target, -1e4, 1e4, 1e-12);
    const double expected = zt / zp * std::exp(-std::abs(mu) * M_PI / 2.0);
    const double rate = double(counter.accepted) / double(counter.proposals);
    CHECK(counter.accepted == 40000);
    CHECK(rate >= std::exp(-std::abs(mu) * M_PI));
    CHECK(std::abs(rate - expected) <= 4.0 * std::sqrt(expected * (1 - expected) / double(counter.proposals)));
    auto cdf = [&](double x) { return oracle::integrate(target, -1e4, x, 1e-10) / zt; };
    std::vector<double> sub(draws.begin(), draws.begin() + 2000);
    CHECK(ks_one_sample(sub, cdf).p_value > 0.01);
}

TEST_CASE("sample_theta_delta with delta = 0 matches sample_theta")
{
    rng_stream r1(4, 0), r2(4, 1);
    std::vector<double> m1, m2, t1, t2;
    for (int i = 0; i < 100000; ++i) {
        cplx a = sample_theta_delta(2.0, 0.0, r1);
        cplx b = sample_theta(2.0, r2);
        m1.push_back(std::norm(a));
        m2.push_back(std::norm(b));
        t1.push_back(std::arg(a));
        t2.push_back(std::arg(b));
    }
    CHECK(ks_two_sample(m1, m2).p_value > 0.01);
    CHECK(ks_two_sample(t1, t2).p_value > 0.01);
}

TEST_CASE("sample_theta_delta on the circle matches its density")
{
    rng_stream rng(5, 0);
    const cplx delta = 0.5;
    auto weight = [&](double t) {
        cplx z = std::polar(1.0, t);
        return std::real(std::pow(1.0 - z, std::conj(delta)) * std::pow(1.0 - std::conj(z), delta));
    };
    const double norm = oracle::integrate(weight, -M_PI, M_PI);
    const double expected = oracle::integrate([&](double t) { return std::cos(t) * weight(t); }, -M_PI, M_PI) / norm;
    std::vector<double> re;
    for (int i = 0; i < 100000; ++i) {
        cplx z = sample_theta_delta(0.0, delta, rng);
        REQUIRE(std::abs(std::abs(z) - 1.0) <= 1e-15);
        re.push_back(z.real());
    }
    CHECK(std::abs(mean(re) - expected) <= 3.0 * stddev(re) / std::sqrt(double(re.size())));
}

TEST_CASE("sample_theta_delta on the disk matches its density")
{
    const double a = 4.0;
    const cplx delta{0.5, 0.3};
    oracle::theta_delta_density density(a, delta);
    const int nr = 5, nt = 10, reps = 200000;
    std::vector<double> observed(nr * nt, 0.0), expected;
    rng_stream rng(6, 0);
    for (int i = 0; i < reps; ++i) {
        cplx z = sample_theta_delta(a, delta, rng);
        // radial bins of equal mass under delta = 0, where |z|^2 ~ Beta(1, a/2)
        int ir = std::min(nr - 1, int((1.0 - std::pow(1.0 - std::norm(z), a / 2.0)) * nr));
        int it = std::min(nt - 1, int((std::arg(z) + M_PI) / (2 * M_PI) * nt));
        observed[ir * nt + it] += 1.0;
    }
    auto edge = [&](int k) { return std::sqrt(1.0 - std::pow(1.0 - double(k) / nr, 2.0 / a)); };
    for (int ir = 0; ir < nr; ++ir)
        for (int it = 0; it < nt; ++it)
            expected.push_back(reps * density.cell_mass(edge(ir), edge(ir + 1),
                                                        -M_PI + 2 * M_PI * it / nt, -M_PI + 2 * M_PI * (it + 1) / nt));
    auto chi = chi_square_test(observed, expected, 0);
    CHECK(chi.min_expected >= 500.0);
    CHECK(chi.p_value > 0.001);
}

TEST_CASE("fact factor: w and v/(2+w) are uncorrelated")
{
    rng_stream rng(7, 0);
    std::vector<double> w, s;
    for (int i = 0; i < 50000; ++i) {
        cplx g = sample_theta_delta(3.0, {0.4, -0.6}, rng);
        cplx u = 2.0 * g / (1.0 - g);   // u = w - i v
        w.push_back(u.real());
        s.push_back(-u.imag() / (2.0 + u.real()));
    }
    CHECK(std::abs(spearman(w, s)) <= 4.0 / std::sqrt(double(w.size())));
}

TEST_CASE("ensemble coefficient laws")
{
    rng_stream rng(8, 0);
    std::vector<double> angles;
    for (int i = 0; i < 20000; ++i) {
        auto a = sample_regular_coefficients({ensemble_kind::circular, 1, 3.0}, rng);
        REQUIRE(a.size() == 1);
        CHECK(std::abs(std::abs(a.values[0]) - 1.0) <= 1e-15);
        angles.push_back(std::arg(a.values[0]));
    }
    CHECK(ks_one_sample(angles, [](double t) { return (t + M_PI) / (2 * M_PI); }).p_value > 0.01);

    ensemble_spec ro{ensemble_kind::real_orthogonal, 4, 2.0, 0.5, -0.5};
    for (int i = 0; i < 100; ++i) {
        auto a = sample_regular_coefficients(ro, rng);
        REQUIRE(a.size() == 8);
        for (cplx v : a.values)
            CHECK(v.imag() == 0.0);
        CHECK(a.values.back() == cplx(-1.0));
    }

    ensemble_spec cj{ensemble_kind::circular_jacobi, 4, 2.0, 0.0, 0.0, 0.0};
    std::vector<double> r2;
    for (int i = 0; i < 20000; ++i) {
        auto d = sample_ensemble_coefficients(cj, rng);
        REQUIRE(std::holds_alternative<modified_verblunsky>(d));
        r2.push_back(std::norm(std::get<modified_verblunsky>(d).values[0]));
    }
    const double a0 = 2.0 * 3.0;
    CHECK(ks_one_sample(r2, [a0](double t) { return 1.0 - std::pow(1.0 - t, a0 / 2.0); }).p_value > 0.01);
}

TEST_CASE("ensemble spec validation")
{
    rng_stream rng(9, 0);
    CHECK_THROWS_AS(sample_ensemble_coefficients({ensemble_kind::circular, 3, 0.0}, rng), domain_error);
    CHECK_THROWS_AS(sample_ensemble_coefficients({ensemble_kind::real_orthogonal, 3, 2.0, -1.0, 0.0}, rng),
                    domain_error);
    CHECK_THROWS_AS(sample_ensemble_coefficients({ensemble_kind::circular_jacobi, 3, 2.0, 0, 0, -0.5}, rng),
                    domain_error);
    CHECK_THROWS_AS(sample_ensemble_coefficients({ensemble_kind::circular, 0, 2.0}, rng), domain_error);
}

TEST_CASE("identical streams give identical sequences")
{
    ensemble_spec s{ensemble_kind::circular_jacobi, 6, 1.5, 0, 0, {0.2, 0.7}};
    rng_stream a(42, 17), b(42, 17);
    auto x = std::get<modified_verblunsky>(sample_ensemble_coefficients(s, a));
    auto y = std::get<modified_verblunsky>(sample_ensemble_coefficients(s, b));
    CHECK(x.values == y.values);
}
