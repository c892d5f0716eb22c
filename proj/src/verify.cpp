#include "tcbe/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "tcbe/cmv.hpp"
#include "tcbe/coeffs.hpp"
#include "tcbe/dirac.hpp"
#include "tcbe/limits.hpp"
#include "tcbe/oracles.hpp"
#include "tcbe/parallel.hpp"
#include "tcbe/roots.hpp"
#include "tcbe/sampling.hpp"
#include "tcbe/spectra.hpp"
#include "tcbe/stats.hpp"

namespace tcbe::verify {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double betas[3] = {1.0, 2.0, 4.0};

// Distinct substream block per criterion.
rng_stream stream(const context& ctx, int id, std::uint64_t i)
{
    return rng_stream(ctx.opts.seed, (std::uint64_t(id) << 40) + i);
}

std::uint64_t criterion_seed(const context& ctx, int id)
{
    return ctx.opts.seed * 1000003ULL + std::uint64_t(id);
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

verblunsky circular_draw(std::size_t n, double beta, rng_stream& rng)
{
    return sample_regular_coefficients({ensemble_kind::circular, n, beta}, rng);
}

criterion_result make_result(int id, std::string name, std::string relation, double tolerance)
{
    criterion_result r;
    r.id = id;
    r.name = std::move(name);
    r.relation = std::move(relation);
    r.tolerance = tolerance;
    return r;
}

criterion_result c01_determinant(context& ctx)
{
    auto r = make_result(1, "determinant identity", "<=", 1e-10);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = stream(ctx, 1, i);
        std::size_t n = 1 + i % 6;
        double beta = betas[i % 3];
        verblunsky alpha;
        switch (i % 3) {
        case 0:
            alpha = circular_draw(n, beta, rng);
            break;
        case 1:
            alpha = sample_regular_coefficients(
                {ensemble_kind::circular_jacobi, n, beta, 0.0, 0.0, {0.3, 0.2}}, rng);
            break;
        default:
            // sub-unitary: shrink the last coefficient into the open disk
            alpha = circular_draw(n, beta, rng);
            alpha.values.back() *= rng.uniform();
            break;
        }
        cvec det = oracle::cofactor_char_poly(build_cmv(alpha));
        polynomial phi = characteristic_polynomial(alpha);
        for (std::size_t k = 0; k <= n; ++k)
            worst = std::max(worst, std::abs(det[k] - phi.coeffs[k]));
    }
    r.value = worst;
    r.passed = worst <= r.tolerance;
    r.detail = "200 draws, n = 1..6, beta in {1,2,4}, circular / CJ / sub-unitary";
    return r;
}

criterion_result c02_truncation(context& ctx)
{
    auto r = make_result(2, "unitarity and truncation", "<=", 1e-8);
    double defect = 0.0, match = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = stream(ctx, 2, i);
        std::size_t n = 2 + i % 7;
        verblunsky alpha = circular_draw(n, betas[i % 3], rng);
        cmv_matrix c = build_cmv(alpha);
        defect = std::max(defect, unitarity_defect(c));
        cvec eig = oracle::eigenvalues(truncate_matrix(c));
        cvec roots = spectrum_points(alpha, spectrum_mode::truncated, 0.0);
        match = std::max(match, oracle::matching_distance(eig, roots));
    }
    r.value = match;
    r.passed = match <= r.tolerance && defect <= 1e-12;
    r.detail = "max unitarity defect " + fmt("%.3g", defect) + " (tol 1e-12); n = 2..8";
    return r;
}

criterion_result c03_perturbation(context& ctx)
{
    auto r = make_result(3, "perturbation endpoints", "<=", 1e-8);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = stream(ctx, 3, i);
        std::size_t n = 1 + i % 6;
        verblunsky alpha = circular_draw(n, betas[i % 3], rng);
        cmv_matrix c = build_cmv(alpha);
        cvec full = oracle::eigenvalues(c);
        cvec at1 = oracle::eigenvalues(build_cmv(perturb_coefficients(alpha, 1.0)));
        cvec at0 = oracle::eigenvalues(build_cmv(perturb_coefficients(alpha, 0.0)));
        cvec trunc = n > 1 ? oracle::eigenvalues(truncate_matrix(c)) : cvec{};
        trunc.push_back(0.0);
        worst = std::max({worst, oracle::matching_distance(full, at1), oracle::matching_distance(trunc, at0)});
    }
    r.value = worst;
    r.passed = worst <= r.tolerance;
    r.detail = "r = 1 vs full, r = 0 vs truncated plus {0}; n = 1..6";
    return r;
}

criterion_result c04_involutions(context& ctx)
{
    auto r = make_result(4, "algebraic involutions", "<=", 1e-13);
    double worst = 0.0, raw_iota = 0.0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        auto rng = stream(ctx, 4, i);
        std::size_t n = 1 + i % 10;
        verblunsky alpha = circular_draw(n, betas[i % 3], rng);
        verblunsky back = reverse(reverse(alpha));
        modified_verblunsky gamma = modified_from_regular(alpha);
        verblunsky round = regular_from_modified(gamma);
        for (std::size_t k = 0; k < n; ++k) {
            worst = std::max(worst, std::abs(back.values[k] - alpha.values[k]));
            worst = std::max(worst, std::abs(round.values[k] - alpha.values[k]));
            worst = std::max(worst, std::abs(std::abs(gamma.values[k]) - std::abs(alpha.values[k])));
        }
        // iota has derivative 2 / |1 - h| at h, so its second application amplifies the rounding
        // of h = iota(g); the forward error is compared after dividing by that condition number
        cplx g = sample_theta(2.0 + double(i % 5), rng);
        cplx h = gamma_iota(g);
        double err = std::abs(gamma_iota(h) - g);
        raw_iota = std::max(raw_iota, err);
        worst = std::max(worst, err * std::abs(1.0 - h) / 2.0);
    }
    r.value = worst;
    r.passed = worst <= r.tolerance;
    r.detail = "10^4 cases: reverse o reverse, iota o iota (condition-scaled; raw "
               + fmt("%.3g", raw_iota) + "), modified round trip, |gamma| = |alpha|";
    return r;
}

criterion_result c05_paths(context& ctx)
{
    auto r = make_result(5, "path-route equivalence", "<=", 1e-10);
    double routes = 0.0, anchor = 0.0;
    const std::size_t n = 100;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = stream(ctx, 5, i);
        verblunsky alpha = circular_draw(n, betas[i % 3], rng);
        modified_verblunsky gamma = modified_from_regular(alpha);
        cvec b_alpha = path_from_regular(alpha).disk;
        cvec b_rec = disk_path_recursive(gamma);
        cvec b_comp = disk_path_composed(gamma);
        for (std::size_t k = 0; k <= n; ++k) {
            routes = std::max(routes, std::abs(b_alpha[k] - b_rec[k]));
            routes = std::max(routes, std::abs(b_alpha[k] - b_comp[k]));
        }
        hyperbolic_path aff = pulled_back_path(reversed_path(alpha));
        anchor = std::max(anchor, std::abs(aff.halfplane[n - 1] - cplx(0.0, 1.0)));
    }
    r.value = routes;
    r.passed = routes <= r.tolerance && anchor <= 1e-12;
    r.detail = "n = 100, 100 draws; pulled-back |z_{n-1} - i| = " + fmt("%.3g", anchor) + " (tol 1e-12)";
    return r;
}

criterion_result c06_canonical(context& ctx)
{
    auto r = make_result(6, "canonical-system cross-check", "<=", 1e-9);
    const std::size_t n = 30;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto rng = stream(ctx, 6, i);
        verblunsky alpha = circular_draw(n, betas[i % 3], rng);
        verblunsky rev = reverse(alpha);
        rev.values.pop_back();
        const cplx at_one = szego_eval(rev, 1.0).first;
        for (int j = 0; j < 50; ++j) {
            cplx z = std::polar(20.0 * std::sqrt(rng.uniform()), 2.0 * pi * rng.uniform());
            cplx w = std::exp(cplx(0.0, 1.0) * z / double(n));
            cplx poly = std::exp(cplx(0.0, -1.0) * z * double(n - 1) / double(2 * n))
                        * szego_eval(rev, w).first / at_one;
            cplx ode = finite_structure_function(alpha, z);
            worst = std::max(worst, std::abs(poly - ode) / std::max(std::abs(poly), std::abs(ode)));
        }
    }
    r.value = worst;
    r.passed = worst <= r.tolerance;
    r.detail = "relative error, n = 30, 50 draws x 50 points with |z| <= 20";
    return r;
}

criterion_result c07_secular_zeros(context& ctx)
{
    auto r = make_result(7, "secular zeros vs eigenangles", "<=", 1e-6);
    const std::size_t n = 20;
    const double half = double(n) / 2.0, margin = 1e-3;
    double worst = 0.0;
    std::size_t compared = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto rng = stream(ctx, 7, i);
        verblunsky alpha = circular_draw(n, betas[i % 3], rng);
        cvec expected;
        for (cplx e : find_roots(characteristic_polynomial(alpha)))
            expected.push_back(double(n) * std::arg(e));
        dirac_operator op = measure_operator(path_from_regular(alpha));
        cvec found = locate_zeros([&](cplx z) { return secular_function(op, z); },
                                  box{-half - 0.5, half + 0.5, -0.5, 0.5});
        auto nearest = [](cplx z, const cvec& set) {
            double d = std::numeric_limits<double>::infinity();
            for (cplx s : set)
                d = std::min(d, std::abs(z - s));
            return d;
        };
        for (cplx e : expected)
            if (std::abs(e.real()) <= half - margin) {
                worst = std::max(worst, nearest(e, found));
                ++compared;
            }
        for (cplx f : found)
            if (std::abs(f.real()) <= half - margin)
                worst = std::max(worst, nearest(f, expected));
    }
    r.value = worst;
    r.passed = worst <= r.tolerance;
    r.detail = "n = 20, 20 draws, " + std::to_string(compared) + " zeros matched both ways";
    return r;
}

criterion_result c08_diagnostics(context& ctx)
{
    auto r = make_result(8, "operator diagnostics", "<=", 1e-12);
    double closed = 0.0;
    for (std::size_t n : {1, 8, 16}) {
        dirac_operator op;
        op.cells.assign(n, cplx(0.0, 1.0));
        closed = std::max(closed, std::abs(hs_norm(op) - 0.5));
        closed = std::max(closed, std::abs(integral_trace(op)));
        op.u1 = {-1.0, -1.0};
        closed = std::max(closed, std::abs(integral_trace(op) + 0.5));
    }
    double invariance = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto rng = stream(ctx, 8, i);
        std::size_t n = 10 + i;
        verblunsky alpha = circular_draw(n, betas[i % 3], rng);
        hyperbolic_path rev = reversed_path(alpha);
        dirac_operator op = measure_operator(rev);
        // pull-back isometry z -> (z - x)/y acts on boundary vectors by M = [[a, b], [0, d]]
        cplx anchor = rev.halfplane[n - 1];
        double sy = std::sqrt(anchor.imag());
        double a = 1.0 / sy, b = -anchor.real() / sy, d = sy;
        hyperbolic_path aff = pulled_back_path(rev);
        dirac_operator moved;
        moved.cells.assign(aff.halfplane.begin(), aff.halfplane.begin() + long(n));
        moved.u0 = {a * op.u0[0] + b * op.u0[1], d * op.u0[1]};
        moved.u1 = {a * op.u1[0] + b * op.u1[1], d * op.u1[1]};
        double h0 = hs_norm(op), t0 = integral_trace(op);
        invariance = std::max(invariance, std::abs(hs_norm(moved) - h0) / h0);
        invariance = std::max(invariance, std::abs(integral_trace(moved) - t0) / std::max(1.0, std::abs(t0)));
    }
    r.value = closed;
    r.passed = closed <= r.tolerance && invariance <= 1e-10;
    r.detail = "constant path hs = 1/2, trace 0 and -1/2; pull-back invariance "
               + fmt("%.3g", invariance) + " (tol 1e-10)";
    return r;
}

criterion_result c09_tcue_intensity(context& ctx)
{
    auto r = make_result(9, "truncated CUE radial intensity", ">", 1e-3);
    const std::size_t eig = 8, reps = 200000, bins = 40;
    spectrum_request req{{ensemble_kind::circular, eig + 1, 2.0}, spectrum_mode::truncated};
    auto samples = sample_spectra(req, reps, criterion_seed(ctx, 9));
    // equal-mass radial bins from the closed-form disk mass, expectations by quadrature
    std::vector<double> edges{0.0};
    for (std::size_t k = 1; k < bins; ++k) {
        double target = double(eig) * double(k) / double(bins), lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (trunc_cue_disk_mass(mid, eig) < target ? lo : hi) = mid;
        }
        edges.push_back(0.5 * (lo + hi));
    }
    edges.push_back(1.0);
    std::vector<double> observed(bins, 0.0), expected(bins);
    for (std::size_t k = 0; k < bins; ++k)
        expected[k] = double(reps) * oracle::annulus_mass_quadrature(
            [eig](double rr) { return rho1_trunc_cue(cplx(rr, 0.0), eig); }, edges[k], edges[k + 1]);
    for (const auto& s : samples)
        for (cplx z : s.points) {
            auto k = std::size_t(std::upper_bound(edges.begin(), edges.end(), std::abs(z)) - edges.begin());
            observed[std::min(bins, std::max<std::size_t>(k, 1)) - 1] += 1.0;
        }
    auto chi = chi_square_test(observed, expected, 0);
    r.value = chi.p_value;
    r.passed = chi.p_value > r.tolerance && chi.min_expected >= 500.0;
    r.detail = "chi2 = " + fmt("%.2f", chi.statistic) + ", dof " + std::to_string(chi.dof)
               + ", min expected " + fmt("%.0f", chi.min_expected) + "; 2e5 reps of 9x9 truncated";
    return r;
}

const box edge_box{0.0, 10.0, 0.0, 3.0};

criterion_result c10_edge_count(context& ctx)
{
    auto r = make_result(10, "edge-kernel mean count", "<=", 0.05);
    const std::size_t eig = 200, reps = 5000;
    spectrum_request req{{ensemble_kind::circular, eig + 1, 2.0}, spectrum_mode::truncated, 1.0, scaling::edge};
    auto samples = sample_spectra(req, reps, criterion_seed(ctx, 10));
    std::vector<int> counts;
    for (const auto& s : samples)
        counts.push_back(count_in_box(s, edge_box, frame::upper_half_plane));
    auto cs = count_statistics::from_counts(edge_box, counts);
    double oracle_mass = oracle::edge_box_mass_quadrature(edge_box);
    ctx.finite_edge_mean = cs.mean;
    r.value = std::abs(cs.mean - oracle_mass) / oracle_mass;
    r.passed = r.value <= r.tolerance;
    r.detail = "mean " + fmt("%.4f", cs.mean) + " +- " + fmt("%.4f", cs.standard_error())
               + " vs oracle " + fmt("%.4f", oracle_mass) + "; 201x201 truncated, 5000 reps";
    return r;
}

criterion_result c11_limit_count(context& ctx)
{
    if (!ctx.finite_edge_mean)
        run_criterion(10, ctx);
    auto r = make_result(11, "limit cross-validation", "<=", 0.10);
    const std::size_t paths = 2000;
    circle_plan plan = circle_plan::around(edge_box);
    sde_config cfg;
    cfg.beta = 2.0;
    cfg.family = limit_family::sine;
    cfg.step = 1e-3;
    cfg.z_grid = plan.grid();
    cfg.u_min = default_u_min(cfg.beta, std::abs(plan.center) + plan.radius);
    auto batch = simulate_paths(cfg, paths, criterion_seed(ctx, 11));
    std::vector<int> counts(batch.fields.size());
    exception_slot error;
    #pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(counts.size()); ++i)
        error.run([&] {
            field_interpolant f(batch.fields[i], plan.center, plan.radius);
            counts[i] = count_zeros([&](cplx z) { return structure_fn(f, z); }, edge_box);
        });
    error.rethrow();
    auto cs = count_statistics::from_counts(edge_box, counts);
    r.value = std::abs(cs.mean - *ctx.finite_edge_mean) / *ctx.finite_edge_mean;
    r.passed = r.value <= r.tolerance && batch.discarded.empty();
    r.detail = "SDE mean " + fmt("%.4f", cs.mean) + " +- " + fmt("%.4f", cs.standard_error())
               + " vs finite-n " + fmt("%.4f", *ctx.finite_edge_mean) + "; "
               + std::to_string(batch.discarded.size()) + " paths discarded";
    return r;
}

criterion_result c12_sde(context& ctx)
{
    auto r = make_result(12, "SDE integrator", "<=", 1e-3);
    cvec grid;
    for (int k = -5; k <= 5; ++k)
        grid.push_back(double(k));
    for (int k = 0; k < 8; ++k)
        grid.push_back(std::polar(4.0, pi * (k + 0.5) / 4.0));

    sde_config cfg;
    cfg.beta = 2.0;
    cfg.family = limit_family::sine;
    cfg.step = 1e-3;
    cfg.z_grid = grid;
    cfg.u_min = default_u_min(cfg.beta, 5.0);

    // noise off: H(0, z) = (cos(z/2), -sin(z/2))
    auto quiet = simulate_H(cfg, brownian_increments::zero(cfg.steps(), cfg.step), std::nullopt);
    double off = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        cplx z = grid[j];
        off = std::max({off, std::abs(quiet.h0[j][0] - std::cos(z / 2.0)),
                        std::abs(quiet.h0[j][1] + std::sin(z / 2.0))});
    }

    // step halving on shared increments
    double ss = 0.0;
    std::size_t terms = 0;
    for (std::uint64_t p = 0; p < 20; ++p) {
        auto rng = stream(ctx, 12, p);
        auto fine = brownian_increments::draw(2 * cfg.steps(), cfg.step / 2.0, rng);
        auto coarse = fine.coarsen();
        double q = std::tan(pi * (rng.uniform() - 0.5));
        auto hf = simulate_H(cfg, fine, q);
        auto hc = simulate_H(cfg, coarse, q);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double num = std::hypot(std::abs(hc.h0[j][0] - hf.h0[j][0]), std::abs(hc.h0[j][1] - hf.h0[j][1]));
            double den = std::hypot(std::abs(hf.h0[j][0]), std::abs(hf.h0[j][1]));
            ss += (num / den) * (num / den);
            ++terms;
        }
    }
    double halving = std::sqrt(ss / double(terms));

    // delta = 0 Hua-Pickrell against Sine from the same stream
    sde_config hp = cfg;
    hp.family = limit_family::hua_pickrell;
    hp.delta = 0.0;
    cfg.rng = stream(ctx, 12, 1000);
    hp.rng = stream(ctx, 12, 1000);
    auto fs = simulate_H(cfg);
    auto fh = simulate_H(hp);
    double same = std::abs(*fs.boundary_q - *fh.boundary_q);
    for (std::size_t j = 0; j < grid.size(); ++j)
        same = std::max({same, std::abs(fs.h0[j][0] - fh.h0[j][0]), std::abs(fs.h0[j][1] - fh.h0[j][1])});

    r.value = halving;
    r.passed = halving <= r.tolerance && off <= 1e-4 && same <= 1e-14;
    r.detail = "step-halving RMS relative change (20 paths x 19 points, h = 1e-3); noise-off error "
               + fmt("%.3g", off) + " (tol 1e-4); HP(delta=0) - Sine " + fmt("%.3g", same) + " (tol 1e-14)";
    return r;
}

criterion_result c13_identities(context& ctx)
{
    auto r = make_result(13, "distributional identities", ">", 0.01);
    const std::size_t reps = 100000;
    std::uint64_t seed = criterion_seed(ctx, 13);
    std::vector<identity_report> reports;
    for (double beta : betas) {
        identity_params p;
        p.beta = beta;
        p.n = 5;
        reports.push_back(mc_identity_suite(identity_kind::reversed_cbe, p, reps, seed));
    }
    identity_params hit;
    hit.beta = 1.0;
    hit.n = 6;
    hit.delta = {0.5, 0.3};
    reports.push_back(mc_identity_suite(identity_kind::hitting, hit, reps, seed));
    identity_params claim;
    claim.a_seq = {0.0, 2.0, 4.0};
    claim.delta = 0.3;
    reports.push_back(mc_identity_suite(identity_kind::claim_cj, claim, reps, seed));
    identity_params iota;
    iota.a = 1.0;
    iota.delta = {0.5, 0.3};
    reports.push_back(mc_identity_suite(identity_kind::fact_iota, iota, reps, seed));

    double worst = 1.0;
    bool complete = true;
    for (const auto& rep : reports) {
        complete = complete && !rep.components.empty();
        worst = std::min(worst, rep.adjusted_p());
        r.detail += to_string(rep.kind);
        if (rep.kind == identity_kind::reversed_cbe)
            r.detail += "(beta=" + fmt("%g", rep.params.beta) + ")";
        r.detail += " " + fmt("%.3g", rep.adjusted_p()) + "; ";
    }
    r.detail += "Bonferroni-adjusted p, 1e5 reps each";
    r.value = worst;
    r.passed = complete && worst > r.tolerance;
    return r;
}

criterion_result c14_tcj_density(context& ctx)
{
    auto r = make_result(14, "truncated CJ density", ">", 1e-3);
    const std::size_t reps = 200000, nr = 6, nt = 12;
    ensemble_spec parent{ensemble_kind::circular_jacobi, 2, 2.0, 0.0, 0.0, {0.5, 0.3}};
    spectrum_request req{parent, spectrum_mode::truncated};
    auto samples = sample_spectra(req, reps, criterion_seed(ctx, 14));
    auto density = [&](cplx z) { return trunc_density_oracle(parent, z); };
    // equal-mass cells: radial rings first, then angular sectors within each ring
    auto invert = [](auto mass, double lo, double hi, double target) {
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (mass(mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double total = oracle::polar_cell_mass(density, 0.0, 1.0, -pi, pi);
    std::vector<double> radii{0.0};
    for (std::size_t i = 1; i < nr; ++i)
        radii.push_back(invert([&](double r) { return oracle::polar_cell_mass(density, 0.0, r, -pi, pi); },
                               0.0, 1.0, total * double(i) / double(nr)));
    radii.push_back(1.0);
    std::vector<std::vector<double>> angles(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        auto ring = [&](double t) { return oracle::polar_cell_mass(density, radii[i], radii[i + 1], -pi, t); };
        const double ring_mass = ring(pi);
        angles[i].push_back(-pi);
        for (std::size_t j = 1; j < nt; ++j)
            angles[i].push_back(invert(ring, -pi, pi, ring_mass * double(j) / double(nt)));
        angles[i].push_back(pi);
    }
    std::vector<double> observed(nr * nt, 0.0), expected(nr * nt);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nt; ++j)
            expected[i * nt + j] = double(reps) * oracle::polar_cell_mass(density, radii[i], radii[i + 1],
                                                                         angles[i][j], angles[i][j + 1]);
    auto bin = [](const std::vector<double>& edges, double v) {
        auto k = std::size_t(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
        return std::min(edges.size() - 1, std::max<std::size_t>(k, 1)) - 1;
    };
    for (const auto& s : samples)
        for (cplx z : s.points) {
            std::size_t i = bin(radii, std::abs(z));
            observed[i * nt + bin(angles[i], std::arg(z))] += 1.0;
        }
    auto chi = chi_square_test(observed, expected, 1);
    r.value = chi.p_value;
    r.passed = chi.p_value > r.tolerance && chi.min_expected >= 500.0;
    r.detail = "chi2 = " + fmt("%.2f", chi.statistic) + ", dof " + std::to_string(chi.dof)
               + ", min expected " + fmt("%.0f", chi.min_expected) + "; beta = 2, delta = 0.5+0.3i";
    return r;
}

criterion_result c15_ro_symmetry(context& ctx)
{
    auto r = make_result(15, "RO truncation symmetry", ">", 0.01);
    const std::size_t reps = 2000;
    spectrum_request req{{ensemble_kind::real_orthogonal, 100, 2.0, -0.5, -0.5}, spectrum_mode::truncated,
                         1.0, scaling::edge};
    auto samples = sample_spectra(req, reps, criterion_seed(ctx, 15));
    std::vector<double> w, mirrored;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reps; ++i)
        for (cplx z : samples[i].points) {
            lowest = std::min(lowest, z.imag());
            (i < reps / 2 ? w : mirrored).push_back(i < reps / 2 ? z.real() : -z.real());
        }
    auto ks = ks_two_sample(w, mirrored);
    r.value = ks.p_value;
    r.passed = ks.p_value > r.tolerance && lowest > -1e-8;
    r.detail = "KS D = " + fmt("%.4f", ks.statistic) + " on " + std::to_string(w.size()) + " vs "
               + std::to_string(mirrored.size()) + " points; min Im w " + fmt("%.3g", lowest);
    return r;
}

struct entry {
    int id;
    double time_limit;
    criterion_result (*fn)(context&);
};

constexpr entry table[] = {
    {1, 10.0, c01_determinant},   {2, 30.0, c02_truncation},      {3, 10.0, c03_perturbation},
    {4, 5.0, c04_involutions},    {5, 5.0, c05_paths},            {6, 30.0, c06_canonical},
    {7, 30.0, c07_secular_zeros}, {8, 0.0, c08_diagnostics},      {9, 120.0, c09_tcue_intensity},
    {10, 300.0, c10_edge_count},  {11, 600.0, c11_limit_count},   {12, 0.0, c12_sde},
    {13, 300.0, c13_identities},  {14, 120.0, c14_tcj_density},   {15, 180.0, c15_ro_symmetry},
};

} // namespace

suite parse_suite(const std::string& name)
{
    if (name == "exact")
        return suite::exact;
    if (name == "mc")
        return suite::mc;
    if (name == "all")
        return suite::all;
    throw domain_error("unknown suite: " + name + " (expected exact, mc or all)");
}

std::string to_string(suite s)
{
    switch (s) {
    case suite::exact: return "exact";
    case suite::mc: return "mc";
    case suite::all: return "all";
    }
    return "?";
}

std::vector<int> criteria_in(suite s)
{
    std::vector<int> ids;
    for (const auto& e : table) {
        bool exact = e.id <= 8;
        if (s == suite::all || (s == suite::exact) == exact)
            ids.push_back(e.id);
    }
    return ids;
}

criterion_result run_criterion(int id, context& ctx)
{
    for (const auto& e : table)
        if (e.id == id) {
            auto start = std::chrono::steady_clock::now();
            criterion_result r;
            try {
                r = e.fn(ctx);
            } catch (const std::exception& ex) {
                r = make_result(id, "criterion " + std::to_string(id), "", 0.0);
                r.detail = std::string("exception: ") + ex.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            r.time_limit = e.time_limit;
            if (e.time_limit > 0.0 && r.seconds >= e.time_limit) {
                r.passed = false;
                r.detail += "; runtime limit exceeded";
            }
            return r;
        }
    throw domain_error("unknown criterion " + std::to_string(id));
}

std::vector<criterion_result> run_suite(suite s, const options& opts,
                                        const std::function<void(const criterion_result&)>& on_result)
{
    context ctx{opts, std::nullopt};
    std::vector<criterion_result> out;
    for (int id : criteria_in(s)) {
        out.push_back(run_criterion(id, ctx));
        if (on_result)
            on_result(out.back());
    }
    return out;
}

std::string format_line(const criterion_result& r)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "[%s] %02d %s: %.6g %s %.3g (%.1f s", r.passed ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.value, r.relation.c_str(), r.tolerance, r.seconds);
    std::string line = buf;
    if (r.time_limit > 0.0)
        line += fmt(", limit %.0f s", r.time_limit);
    return line + ") " + r.detail;
}

} // namespace tcbe::verify
