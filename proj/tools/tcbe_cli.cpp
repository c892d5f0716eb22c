#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "output.hpp"
#include "tcbe/parallel.hpp"
#include "tcbe/spectra.hpp"
#include "tcbe/verify.hpp"

namespace fs = std::filesystem;
using namespace tcbe;
using tools::csv_writer;

namespace {

constexpr int exit_ok = 0, exit_usage = 2, exit_numeric = 3, exit_verify = 4;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ensemble_flags {
    std::string ensemble = "circular";
    std::size_t n = 1;
    double beta = 2.0, a = 0.0, b = 0.0, delta_re = 0.0, delta_im = 0.0;
    std::size_t reps = 1;
    std::uint64_t seed = 0;

    ensemble_spec spec() const
    {
        ensemble_spec s;
        s.kind = parse_ensemble_kind(ensemble);
        s.n = n;
        s.beta = beta;
        s.a = a;
        s.b = b;
        s.delta = {delta_re, delta_im};
        s.validate();
        return s;
    }

    void record(nlohmann::json& j) const
    {
        j["ensemble"] = ensemble;
        j["n"] = n;
        j["beta"] = beta;
        j["a"] = a;
        j["b"] = b;
        j["delta_re"] = delta_re;
        j["delta_im"] = delta_im;
        j["reps"] = reps;
    }
};

const auto above_minus_one = CLI::Validator(
    [](std::string& s) { return std::stod(s) > -1.0 ? std::string() : "must exceed -1"; }, "> -1");
const auto above_minus_half = CLI::Validator(
    [](std::string& s) { return std::stod(s) > -0.5 ? std::string() : "must exceed -1/2"; }, "> -1/2");

void add_ensemble_flags(CLI::App* cmd, ensemble_flags& f)
{
    cmd->add_option("--ensemble", f.ensemble, "circular | ro | cj")
        ->check(CLI::IsMember({"circular", "ro", "cj"}));
    cmd->add_option("--n", f.n, "matrix size (conjugate pairs for ro)")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--beta", f.beta, "beta > 0")->check(CLI::PositiveNumber);
    cmd->add_option("--a", f.a, "ro parameter a > -1")->check(above_minus_one);
    cmd->add_option("--b", f.b, "ro parameter b > -1")->check(above_minus_one);
    cmd->add_option("--delta-re", f.delta_re, "cj parameter Re delta > -1/2")->check(above_minus_half);
    cmd->add_option("--delta-im", f.delta_im, "cj parameter Im delta");
    cmd->add_option("--reps", f.reps, "replicates")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "master seed");
}

struct run_clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void cmd_sample(const ensemble_flags& f, const fs::path& out, int argc, char** argv)
{
    run_clock clock;
    ensemble_spec spec = f.spec();
    auto draws = sample_coefficients(spec, f.reps, f.seed);
    const std::size_t len = spec.matrix_size();
    const std::string sym = spec.kind == ensemble_kind::circular_jacobi ? "gamma" : "alpha";
    std::vector<std::string> header{"rep"};
    for (std::size_t k = 0; k < len; ++k) {
        header.push_back(sym + std::to_string(k) + "_re");
        header.push_back(sym + std::to_string(k) + "_im");
    }
    csv_writer csv(header);
    for (std::size_t i = 0; i < draws.size(); ++i) {
        csv.add(i);
        std::visit([&](const auto& c) { for (cplx v : c.values) csv.add(v); }, draws[i]);
        csv.end_row();
    }
    fs::path file = out / "sample.csv";
    csv.save(file);
    tools::manifest m(argc, argv, f.seed);
    f.record(m.parameters());
    m.parameters()["coefficients"] = sym;
    m.add_output(file);
    m.save(out / "sample.manifest.json", clock.seconds());
}

void cmd_spectrum(const ensemble_flags& f, const std::string& mode, double r, const std::string& scale,
                  const std::string& svg, const fs::path& out, int argc, char** argv)
{
    run_clock clock;
    spectrum_request req{f.spec(), parse_spectrum_mode(mode), r, parse_scaling(scale)};
    req.validate();
    auto samples = sample_spectra(req, f.reps, f.seed);
    csv_writer csv({"rep", "index", "re", "im"});
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        dropped += samples[i].dropped;
        for (std::size_t k = 0; k < samples[i].points.size(); ++k) {
            csv.add(i).add(k).add(samples[i].points[k]);
            csv.end_row();
        }
    }
    fs::path file = out / "spectrum.csv";
    csv.save(file);
    tools::manifest m(argc, argv, f.seed);
    f.record(m.parameters());
    m.parameters()["mode"] = mode;
    m.parameters()["r"] = r;
    m.parameters()["scale"] = scale;
    m.parameters()["frame"] = req.scale == scaling::edge ? "upper_half_plane" : "unit_disk";
    m.parameters()["branch_cut_dropped"] = dropped;
    m.add_output(file);
    if (!svg.empty()) {
        fs::path p = out / svg;
        tools::write_svg(p, samples);
        m.add_output(p);
    }
    m.save(out / "spectrum.manifest.json", clock.seconds());
}

struct limit_flags {
    std::string family = "sine";
    double beta = 2.0, a = 0.0, delta_re = 0.0, delta_im = 0.0;
    std::size_t paths = 1;
    double step = 1e-3, zmax = 5.0, r = 0.0;
    std::optional<double> u_min;
    std::string box_text = "0,10,0,3";
    std::string mode = "values";
    std::string function = "E";
    std::size_t grid_points = 21;
    std::uint64_t seed = 0;
};

box parse_box(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(std::stod(item));
    if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3]))
        throw usage_error("--box expects x0,x1,y0,y1 with x0 < x1 and y0 < y1");
    return {v[0], v[1], v[2], v[3]};
}

cplx evaluate(const limit_field& field, limit_function fn, double r, cplx z)
{
    switch (fn) {
    case limit_function::zeta: return secular_fn(field, z);
    case limit_function::structure: return structure_fn(field, z);
    case limit_function::perturbed: return perturbed_structure_fn(field, r, z);
    }
    return 0.0;
}

void cmd_limit(const limit_flags& f, const fs::path& out, int argc, char** argv)
{
    run_clock clock;
    sde_config cfg;
    cfg.beta = f.beta;
    cfg.family = parse_limit_family(f.family);
    cfg.a = f.a;
    cfg.delta = {f.delta_re, f.delta_im};
    cfg.step = f.step;
    limit_function fn = parse_limit_function(f.function);
    if (fn == limit_function::perturbed && !(f.r >= 0.0 && f.r <= 1.0))
        throw usage_error("--r must lie in [0,1]");

    const bool zeros = f.mode == "zeros";
    box b{0, 0, 0, 0};
    circle_plan plan{0.0, 1.0, 1};
    if (zeros) {
        b = parse_box(f.box_text);
        plan = circle_plan::around(b);
        cfg.z_grid = plan.grid();
    } else if (f.zmax == 0.0) {
        cfg.z_grid = {0.0};
    } else {
        std::size_t m = std::max<std::size_t>(2, f.grid_points);
        for (std::size_t k = 0; k < m; ++k)
            cfg.z_grid.push_back(-f.zmax + 2.0 * f.zmax * double(k) / double(m - 1));
    }
    double reach = zeros ? std::abs(plan.center) + plan.radius : f.zmax;
    cfg.u_min = f.u_min ? *f.u_min : default_u_min(cfg.beta, reach);
    cfg.validate();

    auto batch = simulate_paths(cfg, f.paths, f.seed);
    tools::manifest m(argc, argv, f.seed);
    auto& p = m.parameters();
    p["family"] = f.family;
    p["beta"] = f.beta;
    p["a"] = f.a;
    p["delta_re"] = f.delta_re;
    p["delta_im"] = f.delta_im;
    p["paths"] = f.paths;
    p["step"] = f.step;
    p["u_min"] = cfg.u_min;
    p["mode"] = f.mode;
    p["function"] = f.function;
    p["r"] = f.r;
    p["discarded_paths"] = batch.discarded;

    if (zeros) {
        p["box"] = {b.x0, b.x1, b.y0, b.y1};
        p["circle"] = {{"center_re", plan.center.real()}, {"center_im", plan.center.imag()},
                       {"radius", plan.radius}, {"points", plan.count}};
        std::vector<cvec> found(batch.fields.size());
        exception_slot error;
        #pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(found.size()); ++i)
            error.run([&] { found[i] = limit_zeros(batch.fields[i], plan, fn, f.r, b); });
        error.rethrow();
        csv_writer zs({"path", "index", "re", "im"});
        csv_writer counts({"path", "count", "q"});
        for (std::size_t i = 0; i < found.size(); ++i) {
            for (std::size_t k = 0; k < found[i].size(); ++k) {
                zs.add(batch.path_index[i]).add(k).add(found[i][k]);
                zs.end_row();
            }
            counts.add(batch.path_index[i]).add(found[i].size());
            counts.add(batch.fields[i].boundary_q.value_or(std::nan("")));
            counts.end_row();
        }
        zs.save(out / "limit_zeros.csv");
        counts.save(out / "limit_counts.csv");
        m.add_output(out / "limit_zeros.csv");
        m.add_output(out / "limit_counts.csv");
    } else {
        p["zmax"] = f.zmax;
        csv_writer vals({"path", "z_re", "z_im", "value_re", "value_im", "h1_re", "h1_im", "h2_re", "h2_im", "q"});
        for (std::size_t i = 0; i < batch.fields.size(); ++i) {
            const auto& field = batch.fields[i];
            for (std::size_t j = 0; j < field.z_grid.size(); ++j) {
                cplx z = field.z_grid[j];
                vals.add(batch.path_index[i]).add(z).add(evaluate(field, fn, f.r, z));
                vals.add(field.h0[j][0]).add(field.h0[j][1]);
                vals.add(field.boundary_q.value_or(std::nan("")));
                vals.end_row();
            }
        }
        vals.save(out / "limit_values.csv");
        m.add_output(out / "limit_values.csv");
    }
    m.save(out / "limit.manifest.json", clock.seconds());
}

int cmd_verify(const std::string& suite_name, std::uint64_t seed, const fs::path& out, int argc, char** argv)
{
    run_clock clock;
    verify::suite s = verify::parse_suite(suite_name);
    nlohmann::json report;
    report["suite"] = suite_name;
    report["seed"] = seed;
    report["criteria"] = nlohmann::json::array();
    bool all = true;
    verify::run_suite(s, {seed}, [&](const verify::criterion_result& r) {
        std::cout << verify::format_line(r) << std::endl;
        all = all && r.passed;
        report["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                                      {"value", r.value}, {"relation", r.relation},
                                      {"tolerance", r.tolerance}, {"seconds", r.seconds},
                                      {"time_limit", r.time_limit}, {"detail", r.detail}});
    });
    report["passed"] = all;
    fs::path file = out / "verify_report.json";
    {
        std::ofstream o(file, std::ios::binary);
        o << report.dump(2) << '\n';
    }
    tools::manifest m(argc, argv, seed);
    m.parameters()["suite"] = suite_name;
    m.add_output(file);
    m.save(out / "verify.manifest.json", clock.seconds());
    return all ? exit_ok : exit_verify;
}

void apply_thread_env()
{
    if (const char* t = std::getenv("TCBE_THREADS")) {
        int n = std::atoi(t);
        if (n > 0)
            omp_set_num_threads(n);
    }
}

} // namespace

int main(int argc, char** argv)
{
    apply_thread_env();
    CLI::App app{"Circular beta ensembles: sampling, truncated spectra, limit SDEs, verification"};
    app.require_subcommand(1);
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory");
    app.set_version_flag("--version", TCBE_VERSION);

    ensemble_flags sample_f;
    auto* sample = app.add_subcommand("sample", "sample coefficient sequences");
    add_ensemble_flags(sample, sample_f);

    ensemble_flags spec_f;
    std::string mode = "full", scale = "none", svg;
    double r = 1.0;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of full, truncated or perturbed CMV matrices");
    add_ensemble_flags(spectrum, spec_f);
    spectrum->add_option("--mode", mode, "full | truncated | perturbed")
        ->check(CLI::IsMember({"full", "truncated", "perturbed"}));
    spectrum->add_option("--r", r, "perturbation parameter in [0,1]")->check(CLI::Range(0.0, 1.0));
    spectrum->add_option("--scale", scale, "none | edge")->check(CLI::IsMember({"none", "edge"}));
    spectrum->add_option("--svg", svg, "also write a scatter plot with this file name");

    limit_flags lim;
    auto* limit = app.add_subcommand("limit", "simulate the limiting SDEs");
    limit->add_option("--family", lim.family, "sine | bessel | hp")->check(CLI::IsMember({"sine", "bessel", "hp"}));
    limit->add_option("--beta", lim.beta, "beta > 0")->check(CLI::PositiveNumber);
    limit->add_option("--a", lim.a, "bessel parameter a > -1")->check(above_minus_one);
    limit->add_option("--delta-re", lim.delta_re, "hp parameter Re delta > -1/2")->check(above_minus_half);
    limit->add_option("--delta-im", lim.delta_im, "hp parameter Im delta");
    limit->add_option("--paths", lim.paths, "number of Brownian paths")->check(CLI::PositiveNumber);
    limit->add_option("--step", lim.step, "integration step")->check(CLI::PositiveNumber);
    limit->add_option("--zmax", lim.zmax, "values mode: real grid on [-zmax, zmax]")->check(CLI::NonNegativeNumber);
    limit->add_option("--grid-points", lim.grid_points, "values mode grid size");
    limit->add_option("--u-min", lim.u_min, "integration start (checked against the tail bound)");
    limit->add_option("--box", lim.box_text, "zeros mode: x0,x1,y0,y1");
    limit->add_option("--mode", lim.mode, "zeros | values")->check(CLI::IsMember({"zeros", "values"}));
    limit->add_option("--function", lim.function, "zeta | E | Er")->check(CLI::IsMember({"zeta", "E", "Er"}));
    limit->add_option("--r", lim.r, "Er parameter in [0,1]")->check(CLI::Range(0.0, 1.0));
    limit->add_option("--seed", lim.seed, "master seed");

    std::string suite_name = "all";
    std::uint64_t verify_seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    verify_cmd->add_option("--suite", suite_name, "exact | mc | all")->check(CLI::IsMember({"exact", "mc", "all"}));
    verify_cmd->add_option("--seed", verify_seed, "master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        fs::path out(out_dir);
        fs::create_directories(out);
        if (*sample)
            cmd_sample(sample_f, out, argc, argv);
        else if (*spectrum)
            cmd_spectrum(spec_f, mode, r, scale, svg, out, argc, argv);
        else if (*limit)
            cmd_limit(lim, out, argc, argv);
        else if (*verify_cmd)
            return cmd_verify(suite_name, verify_seed, out, argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const tcbe::domain_error& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_ok;
}
