#include "tcbe/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "tcbe/dirac.hpp"
#include "tcbe/parallel.hpp"

namespace tcbe {

namespace {

constexpr double pi = std::numbers::pi;

std::uint64_t identity_stream_base(identity_kind kind)
{
    return (static_cast<std::uint64_t>(kind) + 1) << 48;
}

} // namespace

count_statistics count_statistics::from_counts(const box& region, std::vector<int> counts)
{
    count_statistics out;
    out.region = region;
    out.replicates = counts.size();
    double sum = 0.0;
    for (int c : counts)
        sum += c;
    out.mean = counts.empty() ? 0.0 : sum / double(counts.size());
    double ss = 0.0;
    for (int c : counts)
        ss += (c - out.mean) * (c - out.mean);
    out.variance = counts.size() > 1 ? ss / double(counts.size() - 1) : 0.0;
    out.counts = std::move(counts);
    return out;
}

bool count_statistics::consistent(double tol) const
{
    if (replicates != counts.size())
        return false;
    double sum = 0.0;
    for (int c : counts)
        sum += c;
    double m = replicates ? sum / double(replicates) : 0.0;
    return std::abs(m - mean) <= tol * std::max(1.0, std::abs(m));
}

double count_statistics::standard_error() const
{
    return replicates ? std::sqrt(variance / double(replicates)) : 0.0;
}

double rho1_trunc_cue(cplx z, std::size_t n)
{
    if (std::abs(z) >= 1.0)
        throw domain_error("rho1_trunc_cue: |z| must be < 1");
    double r2 = std::norm(z);
    double sum = 0.0, pw = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        sum += double(k + 1) * pw;
        pw *= r2;
    }
    return sum / pi;
}

double trunc_cue_disk_mass(double r, std::size_t n)
{
    double r2 = r * r, pw = 1.0, sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        pw *= r2;
        sum += pw;
    }
    return sum;
}

double edge_kernel_intensity(cplx z)
{
    if (z.imag() <= 0.0)
        throw domain_error("edge_kernel_intensity: Im z must be positive");
    double a = 2.0 * z.imag();
    // int_0^1 t e^{-a t} dt = (1 - (1 + a) e^{-a}) / a^2
    if (a < 0.5) {
        double sum = 0.0, term = 1.0;
        for (int k = 0; k < 30; ++k) {
            sum += term / double(k + 2);
            term *= -a / double(k + 1);
        }
        return sum / pi;
    }
    return (1.0 - (1.0 + a) * std::exp(-a)) / (a * a * pi);
}

double edge_kernel_box_mass(const box& b)
{
    if (b.y0 < 0.0 || b.y1 < b.y0 || b.x1 < b.x0)
        throw domain_error("edge_kernel_box_mass: box must lie in the closed upper half plane");
    // int_y0^y1 K dy = (1/2pi) (g(y0) - g(y1)),  g(y) = int_0^1 e^{-2 y t} dt
    auto g = [](double y) {
        double a = 2.0 * y;
        return a < 1e-8 ? 1.0 - a / 2.0 : -std::expm1(-a) / a;
    };
    return (b.x1 - b.x0) * (g(b.y0) - g(b.y1)) / (2.0 * pi);
}

cplx log_gamma(cplx z)
{
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    z -= 1.0;
    cplx x = p[0];
    for (int i = 1; i < 9; ++i)
        x += p[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double trunc_density_oracle(const ensemble_spec& parent, cplx z)
{
    parent.validate();
    if (parent.n != 2)
        throw domain_error("trunc_density_oracle: only the size-2 parent (one eigenvalue) has a 1-point joint density");
    if (parent.kind == ensemble_kind::real_orthogonal)
        throw domain_error("trunc_density_oracle: circular or circular-Jacobi parent required");
    double r2 = std::norm(z);
    if (r2 >= 1.0)
        return 0.0;
    double h = parent.beta / 2.0;
    cplx d = parent.kind == ensemble_kind::circular_jacobi ? parent.delta : cplx(0.0);
    double log_c = -std::log(pi) + 2.0 * log_gamma(h + 1.0 + d).real()
                   - std::lgamma(h) - std::lgamma(h + 1.0 + 2.0 * d.real());
    // (1 - z)^{conj d} (1 - conj z)^d = exp(2 Re(conj(d) log(1 - z)))
    double weight = 2.0 * (std::conj(d) * std::log(1.0 - z)).real();
    return std::exp(log_c + weight + (h - 1.0) * std::log1p(-r2));
}

std::vector<double> trunc_density_oracle(const ensemble_spec& parent, const cvec& z_points)
{
    std::vector<double> out;
    out.reserve(z_points.size());
    for (cplx z : z_points)
        out.push_back(trunc_density_oracle(parent, z));
    return out;
}

double kolmogorov_tail(double lambda)
{
    if (lambda <= 0.0)
        return 1.0;
    if (lambda < 1.0) {
        // Jacobi-theta form of the CDF, fast for small lambda
        double s = 0.0;
        for (int k = 1; k <= 8; ++k) {
            double m = 2.0 * k - 1.0;
            s += std::exp(-m * m * pi * pi / (8.0 * lambda * lambda));
        }
        return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-300)
            break;
    }
    return std::clamp(s, 0.0, 1.0);
}

namespace {

double ks_p(double d, double ne)
{
    double rt = std::sqrt(ne);
    return kolmogorov_tail((rt + 0.12 + 0.11 / rt) * d);
}

} // namespace

ks_result ks_two_sample(std::vector<double> x, std::vector<double> y)
{
    if (x.empty() || y.empty())
        throw domain_error("ks_two_sample: samples must be nonempty");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double nx = double(x.size()), ny = double(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v)
            ++i;
        while (j < y.size() && y[j] == v)
            ++j;
        d = std::max(d, std::abs(double(i) / nx - double(j) / ny));
    }
    return {d, ks_p(d, nx * ny / (nx + ny))};
}

ks_result ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf)
{
    if (x.empty())
        throw domain_error("ks_one_sample: sample must be nonempty");
    std::sort(x.begin(), x.end());
    double n = double(x.size()), d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double f = cdf(x[i]);
        d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
    }
    return {d, ks_p(d, n)};
}

chi_square_result chi_square_test(const std::vector<double>& observed,
                                  const std::vector<double>& expected, std::size_t constraints)
{
    if (observed.size() != expected.size() || observed.size() <= constraints)
        throw domain_error("chi_square_test: need matching bins and more bins than constraints");
    chi_square_result out;
    out.min_expected = expected.front();
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0)
            throw domain_error("chi_square_test: expected counts must be positive");
        double d = observed[i] - expected[i];
        out.statistic += d * d / expected[i];
        out.min_expected = std::min(out.min_expected, expected[i]);
    }
    out.dof = observed.size() - constraints;
    boost::math::chi_squared_distribution<double> dist(double(out.dof));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    return out;
}

int count_in_box(const point_sample& points, const box& b, frame chart)
{
    if (points.where != chart)
        throw domain_error("count_in_box: sample frame does not match the box chart");
    int count = 0;
    for (cplx z : points.points)
        if (z.real() >= b.x0 && z.real() <= b.x1 && z.imag() >= b.y0 && z.imag() <= b.y1)
            ++count;
    return count;
}

identity_kind parse_identity_kind(const std::string& name)
{
    if (name == "reversed_cbe")
        return identity_kind::reversed_cbe;
    if (name == "hitting")
        return identity_kind::hitting;
    if (name == "claim_cj")
        return identity_kind::claim_cj;
    if (name == "fact_iota")
        return identity_kind::fact_iota;
    throw domain_error("unknown identity: " + name);
}

std::string to_string(identity_kind kind)
{
    switch (kind) {
    case identity_kind::reversed_cbe: return "reversed_cbe";
    case identity_kind::hitting: return "hitting";
    case identity_kind::claim_cj: return "claim_cj";
    case identity_kind::fact_iota: return "fact_iota";
    }
    return "?";
}

double identity_report::min_p() const
{
    double m = 1.0;
    for (const auto& c : components)
        m = std::min(m, c.p_value);
    return m;
}

double identity_report::adjusted_p() const
{
    if (components.empty())
        return 1.0;
    return std::min(1.0, double(components.size()) * min_p());
}

double angle_from_one(cplx z)
{
    return std::arg(z);
}

namespace {

// One side of an identity: a fixed-length complex vector per replicate.
using side_fn = std::function<cvec(rng_stream&)>;

std::vector<cvec> draw_side(const side_fn& fn, std::size_t replicates, std::uint64_t seed,
                            std::uint64_t base)
{
    std::vector<cvec> out(replicates);
    exception_slot error;
    #pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(replicates); ++i)
        error.run([&] {
            rng_stream rng(seed, base + std::uint64_t(i));
            out[i] = fn(rng);
        });
    error.rethrow();
    return out;
}

cvec reversed_cbe_left(const identity_params& p, rng_stream& rng)
{
    ensemble_spec spec{ensemble_kind::circular, p.n, p.beta};
    return reverse(sample_regular_coefficients(spec, rng)).values;
}

cvec reversed_cbe_right(const identity_params& p, rng_stream& rng)
{
    ensemble_spec spec{ensemble_kind::circular, p.n, p.beta};
    cvec a = sample_regular_coefficients(spec, rng).values;
    std::size_t n = a.size();
    cvec out(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        out[k] = a[n - 2 - k];
    out[n - 1] = a[n - 1];
    return out;
}

cvec hitting_left(const identity_params& p, rng_stream& rng)
{
    ensemble_spec spec{ensemble_kind::circular_jacobi, p.n, p.beta, 0.0, 0.0, p.delta};
    auto draw = sample_ensemble_coefficients(spec, rng);
    return {path_from_modified(std::get<modified_verblunsky>(draw)).disk.back()};
}

cvec hitting_right(const identity_params& p, rng_stream& rng)
{
    return {sample_theta_delta(0.0, p.delta, rng)};
}

cvec draw_zetas(const identity_params& p, rng_stream& rng)
{
    cvec z;
    for (double a : p.a_seq)
        z.push_back(sample_theta_delta(a, p.delta, rng));
    return z;
}

cvec claim_cj_left(const identity_params& p, rng_stream& rng)
{
    cvec z = draw_zetas(p, rng);
    std::size_t n = z.size();
    cvec out(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        out[i] = gamma_iota(z[i + 1]) / z[i];
    out[n - 1] = 1.0 / z[n - 1];
    return out;
}

cvec claim_cj_right(const identity_params& p, rng_stream& rng)
{
    cvec z = draw_zetas(p, rng);
    std::size_t n = z.size();
    cvec out(n);
    out[0] = std::conj(z[1]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = std::conj(z[i + 1]) / std::conj(gamma_iota(z[i]));
    out[n - 1] = std::conj(z[0]) / std::conj(gamma_iota(z[n - 1]));
    return out;
}

cvec fact_iota_left(const identity_params& p, rng_stream& rng)
{
    return {gamma_iota(sample_theta_delta(p.a, p.delta, rng))};
}

cvec fact_iota_right(const identity_params& p, rng_stream& rng)
{
    double a_t = p.a + 4.0 * p.delta.real() + 2.0;
    cplx d_t = -(1.0 + p.delta);
    return {sample_theta_delta(a_t, d_t, rng)};
}

void validate_params(identity_kind kind, const identity_params& p)
{
    switch (kind) {
    case identity_kind::reversed_cbe:
        ensemble_spec{ensemble_kind::circular, p.n, p.beta}.validate();
        if (p.n < 2)
            throw domain_error("reversed_cbe: n must be at least 2");
        break;
    case identity_kind::hitting:
        ensemble_spec{ensemble_kind::circular_jacobi, p.n, p.beta, 0.0, 0.0, p.delta}.validate();
        break;
    case identity_kind::claim_cj:
        if (p.a_seq.size() < 2 || p.a_seq.front() != 0.0)
            throw domain_error("claim_cj: need at least two parameters with a_0 = 0");
        for (double a : p.a_seq)
            if (a < 0.0)
                throw domain_error("claim_cj: parameters must be nonnegative");
        if (p.delta.real() <= -0.5)
            throw domain_error("claim_cj: Re delta must exceed -1/2");
        break;
    case identity_kind::fact_iota:
        if (p.a < 0.0 || p.delta.real() <= -0.5)
            throw domain_error("fact_iota: need a >= 0 and Re delta > -1/2");
        break;
    }
}

} // namespace

identity_report mc_identity_suite(identity_kind kind, const identity_params& params,
                                  std::size_t replicates, std::uint64_t seed)
{
    validate_params(kind, params);
    if (replicates == 0)
        throw domain_error("mc_identity_suite: replicates must be positive");

    side_fn left, right;
    switch (kind) {
    case identity_kind::reversed_cbe:
        left = [&](rng_stream& r) { return reversed_cbe_left(params, r); };
        right = [&](rng_stream& r) { return reversed_cbe_right(params, r); };
        break;
    case identity_kind::hitting:
        left = [&](rng_stream& r) { return hitting_left(params, r); };
        right = [&](rng_stream& r) { return hitting_right(params, r); };
        break;
    case identity_kind::claim_cj:
        left = [&](rng_stream& r) { return claim_cj_left(params, r); };
        right = [&](rng_stream& r) { return claim_cj_right(params, r); };
        break;
    case identity_kind::fact_iota:
        left = [&](rng_stream& r) { return fact_iota_left(params, r); };
        right = [&](rng_stream& r) { return fact_iota_right(params, r); };
        break;
    }

    std::uint64_t base = identity_stream_base(kind);
    auto lhs = draw_side(left, replicates, seed, base);
    auto rhs = draw_side(right, replicates, seed, base + (std::uint64_t(1) << 40));

    identity_report report;
    report.kind = kind;
    report.params = params;
    report.replicates = replicates;
    std::size_t m = lhs.front().size();
    bool circle_valued = kind == identity_kind::hitting;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> xa(replicates), ya(replicates), xm(replicates), ym(replicates);
        for (std::size_t i = 0; i < replicates; ++i) {
            xa[i] = angle_from_one(lhs[i][k]);
            ya[i] = angle_from_one(rhs[i][k]);
            xm[i] = std::abs(lhs[i][k]);
            ym[i] = std::abs(rhs[i][k]);
        }
        auto ang = ks_two_sample(std::move(xa), std::move(ya));
        report.components.push_back({"angle[" + std::to_string(k) + "]", ang.statistic, ang.p_value});
        if (!circle_valued) {
            auto mod = ks_two_sample(std::move(xm), std::move(ym));
            report.components.push_back({"modulus[" + std::to_string(k) + "]", mod.statistic, mod.p_value});
        }
    }
    return report;
}

} // namespace tcbe
