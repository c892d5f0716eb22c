#include "tcbe/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tcbe {

namespace {

constexpr double pi = std::numbers::pi;

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t id)
{
    return std::seed_seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(id),
                         std::uint32_t(id >> 32), 0x74636265u};
}

} // namespace

rng_stream::rng_stream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id)
{
    auto seq = make_seed(seed, stream_id);
    engine_.seed(seq);
}

double rng_stream::uniform()
{
    return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double rng_stream::normal()
{
    return normal_(engine_);
}

double rng_stream::gamma(double shape)
{
    if (!(shape > 0.0))
        throw domain_error("gamma: shape must be positive");
    if (shape < 1.0) {
        // boost: Gamma(k) = Gamma(k+1) U^{1/k}
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    std::gamma_distribution<double> dist(shape, 1.0);
    return dist(engine_);
}

double rng_stream::beta(double s, double t)
{
    const double x = gamma(s), y = gamma(t);
    return x / (x + y);
}

void ensemble_spec::validate() const
{
    if (n < 1)
        throw domain_error("ensemble: n must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw domain_error("ensemble: beta must be positive");
    if (kind == ensemble_kind::real_orthogonal && !(a > -1.0 && b > -1.0))
        throw domain_error("ensemble: a and b must exceed -1");
    if (kind == ensemble_kind::circular_jacobi && !(delta.real() > -0.5))
        throw domain_error("ensemble: Re(delta) must exceed -1/2");
}

std::string ensemble_spec::describe() const
{
    std::ostringstream out;
    out << to_string(kind) << " n=" << n << " beta=" << beta;
    if (kind == ensemble_kind::real_orthogonal)
        out << " a=" << a << " b=" << b;
    if (kind == ensemble_kind::circular_jacobi)
        out << " delta=" << delta.real() << (delta.imag() < 0 ? "" : "+") << delta.imag() << "i";
    return out.str();
}

ensemble_kind parse_ensemble_kind(const std::string& name)
{
    if (name == "circular")
        return ensemble_kind::circular;
    if (name == "ro")
        return ensemble_kind::real_orthogonal;
    if (name == "cj")
        return ensemble_kind::circular_jacobi;
    throw domain_error("unknown ensemble '" + name + "' (expected circular, ro or cj)");
}

std::string to_string(ensemble_kind kind)
{
    switch (kind) {
    case ensemble_kind::circular:
        return "circular";
    case ensemble_kind::real_orthogonal:
        return "ro";
    case ensemble_kind::circular_jacobi:
        return "cj";
    }
    return "?";
}

cplx sample_theta(double a, rng_stream& rng)
{
    if (!(a >= 0.0))
        throw domain_error("sample_theta: a must be nonnegative");
    const double phi = 2.0 * pi * rng.uniform();
    if (a == 0.0)
        return {std::cos(phi), std::sin(phi)};
    // |z|^2 ~ Beta(1, a/2)
    const double s = 1.0 - std::pow(rng.uniform(), 2.0 / a);
    return std::polar(std::sqrt(s), phi);
}

double sample_scaled_beta(double s, double t, rng_stream& rng)
{
    if (!(s > 0.0 && t > 0.0))
        throw domain_error("sample_scaled_beta: parameters must be positive");
    return 1.0 - 2.0 * rng.beta(s, t);
}

double sample_pearson_iv(double m, double mu, rng_stream& rng, pearson_counter* counter)
{
    if (!(m > 0.5))
        throw domain_error("sample_pearson_iv: m must exceed 1/2");
    // t_nu / sqrt(nu) with nu = 2m - 1 has density proportional to (1+x^2)^{-m}
    const double half_nu = m - 0.5;
    const double bound = std::abs(mu) * pi / 2.0;
    for (;;) {
        const double x = rng.normal() / std::sqrt(2.0 * rng.gamma(half_nu));
        const double u = rng.uniform();
        if (counter)
            ++counter->proposals;
        if (std::log(u) <= -mu * std::atan(x) - bound) {
            if (counter)
                ++counter->accepted;
            return x;
        }
    }
}

cplx sample_theta_delta(double a, cplx delta, rng_stream& rng)
{
    if (!(a >= 0.0))
        throw domain_error("sample_theta_delta: a must be nonnegative");
    if (!(a / 2.0 + 2.0 * delta.real() + 1.0 > 0.0))
        throw domain_error("sample_theta_delta: need a/2 + 2 Re(delta) + 1 > 0");
    if (a == 0.0) {
        const double q = sample_pearson_iv(delta.real() + 1.0, -2.0 * delta.imag(), rng);
        // -cot(theta/2) = q
        const double theta = 2.0 * std::atan2(1.0, -q);
        return {std::cos(theta), std::sin(theta)};
    }
    const double g1 = rng.gamma(a / 2.0);
    const double g2 = rng.gamma(a / 2.0 + 2.0 * delta.real() + 1.0);
    const double w = g1 / g2 - 1.0;
    const double s = sample_pearson_iv(a / 2.0 + delta.real() + 1.0, -2.0 * delta.imag(), rng);
    const double v = s * (2.0 + w);
    const cplx num(w, -v);
    return num / (2.0 + num);
}

coefficient_draw sample_ensemble_coefficients(const ensemble_spec& spec, rng_stream& rng)
{
    spec.validate();
    const std::size_t size = spec.matrix_size();
    const double beta = spec.beta;
    switch (spec.kind) {
    case ensemble_kind::circular: {
        verblunsky out;
        out.values.reserve(size);
        for (std::size_t k = 0; k < size; ++k)
            out.values.push_back(sample_theta(beta * double(size - k - 1), rng));
        return out;
    }
    case ensemble_kind::real_orthogonal: {
        verblunsky out;
        out.values.reserve(size);
        const double m = double(size);
        for (std::size_t k = 0; k + 1 < size; ++k) {
            const double kk = double(k);
            double s, t;
            if (k % 2 == 0) {
                s = beta / 4.0 * (m - kk + 2.0 * spec.a);
                t = beta / 4.0 * (m - kk + 2.0 * spec.b);
            } else {
                s = beta / 4.0 * (m - kk + 2.0 * spec.a + 2.0 * spec.b + 1.0);
                t = beta / 4.0 * (m - kk - 1.0);
            }
            out.values.push_back(sample_scaled_beta(s, t, rng));
        }
        out.values.push_back(-1.0);
        return out;
    }
    case ensemble_kind::circular_jacobi: {
        modified_verblunsky out;
        out.values.reserve(size);
        for (std::size_t k = 0; k < size; ++k)
            out.values.push_back(sample_theta_delta(beta * double(size - k - 1), spec.delta, rng));
        return out;
    }
    }
    throw domain_error("unknown ensemble kind");
}

verblunsky sample_regular_coefficients(const ensemble_spec& spec, rng_stream& rng)
{
    auto draw = sample_ensemble_coefficients(spec, rng);
    if (auto* m = std::get_if<modified_verblunsky>(&draw))
        return regular_from_modified(*m);
    return std::get<verblunsky>(draw);
}

} // namespace tcbe
