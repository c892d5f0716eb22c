#ifndef TCBE_SAMPLING_HPP
#define TCBE_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "tcbe/coeffs.hpp"

namespace tcbe {

// One reproducible substream per (seed, stream_id); never share across threads.
class rng_stream {
public:
    rng_stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    double uniform();        // open interval (0,1)
    double normal();
    double gamma(double shape);
    double beta(double s, double t);

private:
    std::uint64_t seed_, stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

enum class ensemble_kind { circular, real_orthogonal, circular_jacobi };

struct ensemble_spec {
    ensemble_kind kind = ensemble_kind::circular;
    std::size_t n = 1;   // pairs for real_orthogonal, matrix size otherwise
    double beta = 2.0;
    double a = 0.0, b = 0.0;
    cplx delta = 0.0;

    void validate() const;
    // size of the coefficient sequence and of the CMV matrix
    std::size_t matrix_size() const { return kind == ensemble_kind::real_orthogonal ? 2 * n : n; }
    std::string describe() const;
};

ensemble_kind parse_ensemble_kind(const std::string& name);
std::string to_string(ensemble_kind kind);

struct pearson_counter {
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;
};

cplx sample_theta(double a, rng_stream& rng);
double sample_scaled_beta(double s, double t, rng_stream& rng);
// Rejection from a power-matched Student t; envelope e^{|mu| pi/2}.
double sample_pearson_iv(double m, double mu, rng_stream& rng, pearson_counter* counter = nullptr);
// Requires a/2 + 2 Re(delta) + 1 > 0 (Re delta > -1/2 when a = 0).
cplx sample_theta_delta(double a, cplx delta, rng_stream& rng);

using coefficient_draw = std::variant<verblunsky, modified_verblunsky>;

// Circular and RO give regular coefficients, CJ gives modified ones.
coefficient_draw sample_ensemble_coefficients(const ensemble_spec& spec, rng_stream& rng);
// Same draw, converted to regular coefficients when needed.
verblunsky sample_regular_coefficients(const ensemble_spec& spec, rng_stream& rng);

} // namespace tcbe

#endif
