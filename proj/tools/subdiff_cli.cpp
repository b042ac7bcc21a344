#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <subdiff/subdiff.hpp>

namespace fs = std::filesystem;

namespace {

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1)
            s += ' ';
        s += argv[i];
    }
    return s;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (double)i * (hi - lo) / (double)(n - 1);
    v[n - 1] = hi;
    return v;
}

// Collects artifacts for one run and writes the manifest at the end. Artifact
// paths are stored relative to the output directory so the CSV bytes do not
// depend on where the run lands.
struct Emitter {
    fs::path dir;
    subdiff::RunManifest manifest;

    void add(const std::string& name, const std::string& content) {
        subdiff::write_text_file((dir / name).string(), content);
        manifest.artifact_paths.push_back(name);
        std::printf("wrote %s\n", (dir / name).string().c_str());
    }
    void param(const std::string& key, const std::string& value) {
        manifest.parameters[key] = value;
    }
    void param(const std::string& key, double value) {
        manifest.parameters[key] = subdiff::format_full(value);
    }
    void finish() {
        const std::string name = manifest.subcommand + "_manifest.txt";
        subdiff::write_manifest((dir / name).string(), manifest);
        std::printf("wrote %s\n", (dir / name).string().c_str());
    }
};

Emitter make_emitter(const std::string& out_dir, const std::string& sub, std::uint64_t seed,
                     const std::string& argv_line) {
    Emitter e;
    e.dir = fs::path(out_dir);
    fs::create_directories(e.dir);
    e.manifest.subcommand = sub;
    e.manifest.seed = seed;
    e.manifest.argv_line = argv_line;
    return e;
}

struct PriceOpts {
    double alpha = 0.5;
    double spot = 100.0;
    double strike = 100.0;
    double rate = 0.0;
    double sigma = 0.0;
    double maturity = 0.0;
    bool market = false;
    double beta = 0.5;
    double tau = 1.0;
    std::string method = "quad";
    std::uint64_t paths = 100000;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    std::string out_dir = "./out";
};

int run_price(const PriceOpts& o, const std::string& argv_line) {
    subdiff::ContractParams c;
    double t_model;
    if (o.market) {
        c = subdiff::map_real_params(o.spot, o.strike, o.rate, o.sigma, o.maturity);
        t_model = c.tau;
        c.tau = 0.0;
    } else {
        c.x = o.spot;
        c.K = o.strike;
        c.beta = o.beta;
        c.tau = 0.0;
        t_model = o.tau;
    }

    double price = 0.0, se = 0.0;
    if (o.method == "quad") {
        subdiff::QuadConfig quad;
        quad.rel_tol = o.tol;
        price = subdiff::subordinated_price_quadrature(o.alpha, t_model, c, quad);
    } else {
        subdiff::SimConfig cfg;
        cfg.seed = o.seed;
        cfg.n_paths = o.paths;
        const subdiff::McPrice mc = subdiff::subordinated_price_mc(o.alpha, t_model, c, cfg);
        price = mc.price;
        se = mc.std_error;
    }

    std::string csv = "alpha,t,spot,strike,beta,method,price,std_error\n";
    csv += subdiff::format_full(o.alpha) + "," + subdiff::format_full(t_model) + ","
           + subdiff::format_full(c.x) + "," + subdiff::format_full(c.K) + ","
           + subdiff::format_full(c.beta) + "," + o.method + "," + subdiff::format_full(price)
           + "," + subdiff::format_full(se) + "\n";

    Emitter e = make_emitter(o.out_dir, "price", o.seed, argv_line);
    e.param("alpha", o.alpha);
    e.param("t", t_model);
    e.param("spot", c.x);
    e.param("strike", c.K);
    e.param("beta", c.beta);
    e.param("method", o.method);
    e.param("tol", o.tol);
    if (o.method == "mc")
        e.param("paths", std::to_string(o.paths));
    e.add("price.csv", csv);
    e.finish();
    std::fputs(csv.c_str(), stdout);
    return 0;
}

struct DensityOpts {
    double alpha = 0.5;
    double diffusion = 1.0;
    double t = 1.0;
    double x_min = -8.0;
    double x_max = 8.0;
    std::size_t points = 201;
    std::string out_dir = "./out";
};

int run_density(const DensityOpts& o, const std::string& argv_line) {
    if (o.points < 2)
        throw std::invalid_argument("density: --points must be >= 2");
    subdiff::ModelParams params;
    params.alpha = o.alpha;
    params.D = o.diffusion;
    const std::vector<double> xs = linspace(o.x_min, o.x_max, o.points);
    const subdiff::DensityGrid grid = subdiff::make_density_grid(params, o.t, xs);

    std::string csv = "x,p\n";
    for (std::size_t i = 0; i < grid.x_grid.size(); ++i)
        csv += subdiff::format_full(grid.x_grid[i]) + "," + subdiff::format_full(grid.values[i])
               + "\n";

    Emitter e = make_emitter(o.out_dir, "density", 0, argv_line);
    e.param("alpha", o.alpha);
    e.param("diffusion", o.diffusion);
    e.param("t", o.t);
    e.param("x_min", o.x_min);
    e.param("x_max", o.x_max);
    e.param("points", std::to_string(o.points));
    e.add("density.csv", csv);
    e.finish();
    return 0;
}

struct SimulateOpts {
    std::string process = "inverse";
    double alpha = 0.5;
    double diffusion = 1.0;
    std::uint64_t paths = 1;
    std::uint64_t seed = 1;
    double dtau = 1e-3;
    double t_max = 1.0;
    std::size_t points = 101;
    double ctrw_scale = 100.0;
    std::string out_dir = "./out";
};

int run_simulate(const SimulateOpts& o, const std::string& argv_line) {
    if (o.points < 2)
        throw std::invalid_argument("simulate: --points must be >= 2");
    if (o.paths < 1)
        throw std::invalid_argument("simulate: --paths must be >= 1");
    subdiff::SimConfig cfg;
    cfg.seed = o.seed;
    cfg.n_paths = o.paths;
    cfg.dtau = o.dtau;
    cfg.t_max = o.t_max;
    cfg.validate();
    subdiff::ModelParams params;
    params.alpha = o.alpha;
    params.D = o.diffusion;

    const std::vector<double> grid = linspace(0.0, o.t_max, o.points);
    std::vector<std::vector<double>> vals(o.paths);
    // One derived stream per path id; slots are per path, so the dump is the
    // same no matter how the block scheduler assigns work.
    subdiff::for_each_block((std::size_t)o.paths, 1,
                            [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t id = begin; id < end; ++id) {
            subdiff::RngStream rng(o.seed, (std::uint64_t)id);
            subdiff::SamplePath path;
            if (o.process == "stable")
                path = subdiff::sample_stable_path(o.alpha, grid, rng);
            else if (o.process == "inverse")
                path = subdiff::sample_inverse_path(o.alpha, grid, cfg, rng);
            else if (o.process == "subdiffusion")
                path = subdiff::sample_subordinated_path(params, grid, cfg, rng);
            else
                path = subdiff::ctrw_rescaled_path(o.alpha, o.ctrw_scale, grid, rng);
            vals[id] = std::move(path.values);
        }
    });

    std::string csv = "path_id,t,value\n";
    for (std::size_t id = 0; id < vals.size(); ++id)
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv += std::to_string(id) + "," + subdiff::format_full(grid[i]) + ","
                   + subdiff::format_full(vals[id][i]) + "\n";

    Emitter e = make_emitter(o.out_dir, "simulate", o.seed, argv_line);
    e.param("process", o.process);
    e.param("alpha", o.alpha);
    if (o.process == "subdiffusion")
        e.param("diffusion", o.diffusion);
    if (o.process == "ctrw")
        e.param("ctrw_scale", o.ctrw_scale);
    e.param("paths", std::to_string(o.paths));
    e.param("dtau", o.dtau);
    e.param("t_max", o.t_max);
    e.param("points", std::to_string(o.points));
    e.add("simulate.csv", csv);
    e.finish();
    return 0;
}

struct SpecialOpts {
    std::string function = "f_alpha";
    double alpha = 0.5;
    double t = 1.0;
    double z = 0.0;
    bool z_given = false;
    double z_min = 0.0;
    double z_max = 5.0;
    std::size_t z_count = 101;
    std::string out_dir = "./out";
};

int run_special(const SpecialOpts& o, const std::string& argv_line) {
    std::vector<double> zs;
    if (o.function == "f_alpha_mode")
        zs = {o.alpha};
    else if (o.z_given)
        zs = {o.z};
    else
        zs = linspace(o.z_min, o.z_max, o.z_count);

    auto eval = [&](double z) -> double {
        if (o.function == "gamma")
            return subdiff::gamma(z);
        if (o.function == "probability_integral")
            return subdiff::probability_integral(z);
        if (o.function == "mittag_leffler_neg")
            return subdiff::mittag_leffler_neg(o.alpha, z);
        if (o.function == "f_alpha")
            return subdiff::f_alpha(o.alpha, z);
        if (o.function == "f_alpha_mode") {
            const auto mode = subdiff::f_alpha_mode(o.alpha);
            return mode ? *mode : std::numeric_limits<double>::quiet_NaN();
        }
        if (o.function == "inverse_subordinator_density")
            return subdiff::inverse_subordinator_density(o.alpha, o.t, z);
        return subdiff::airy_ai(z);
    };

    std::string csv = "z,value\n";
    for (double z : zs)
        csv += subdiff::format_full(z) + "," + subdiff::format_full(eval(z)) + "\n";

    Emitter e = make_emitter(o.out_dir, "special", 0, argv_line);
    e.param("function", o.function);
    e.param("alpha", o.alpha);
    if (o.function == "inverse_subordinator_density")
        e.param("t", o.t);
    e.add("special.csv", csv);
    e.finish();
    std::fputs(csv.c_str(), stdout);
    return 0;
}

struct FpeOpts {
    double alpha = 0.5;
    double diffusion = 1.0;
    double t0 = 0.1;
    double t_final = 0.5;
    double dx = 0.2;
    double dt = 0.0; // 0 means pick from the stability bound
    double half_width = 10.0;
    std::size_t outputs = 6;
    std::string out_dir = "./out";
};

int run_fpe(const FpeOpts& o, const std::string& argv_line) {
    if (!(o.t0 > 0.0) || !(o.t_final > 0.0))
        throw std::invalid_argument("fpe: --t0 and --t-final must be positive");
    if (!(o.dx > 0.0) || !(o.half_width > 3.0 * o.dx))
        throw std::invalid_argument("fpe: need dx > 0 and half-width > 3 dx");
    subdiff::FfpeProblem problem;
    problem.params.alpha = o.alpha;
    problem.params.D = o.diffusion;
    problem.params.validate();

    const std::size_t nx = (std::size_t)std::llround(2.0 * o.half_width / o.dx) + 1;
    problem.x_grid = linspace(-o.half_width, o.half_width, nx);

    double dt = o.dt;
    if (dt <= 0.0)
        dt = std::pow(0.9 * subdiff::gamma(1.0 + o.alpha) * o.dx * o.dx / o.diffusion,
                      1.0 / o.alpha);
    std::size_t nt = (std::size_t)std::ceil(o.t_final / dt) + 1;
    if (nt < 2)
        nt = 2;
    problem.t_grid = linspace(0.0, o.t_final, nt);

    // Initial condition: parent Gaussian at offset t0, renormalized so the
    // grid mass is exactly 1. The oracle below is scaled by the same factor,
    // keeping the comparison a pure discretization error.
    problem.initial_profile.resize(nx);
    for (std::size_t i = 0; i < nx; ++i)
        problem.initial_profile[i] =
            subdiff::gaussian_parent_density(o.diffusion, o.t0, problem.x_grid[i]);
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < nx; ++i)
        mass += 0.5 * (problem.initial_profile[i] + problem.initial_profile[i + 1]) * o.dx;
    for (std::size_t i = 0; i < nx; ++i)
        problem.initial_profile[i] /= mass;

    const std::vector<std::vector<double>> sol = subdiff::solve_ffpe(problem);

    std::size_t n_out = o.outputs < 2 ? 2 : o.outputs;
    if (n_out > nt)
        n_out = nt;
    std::vector<std::size_t> out_idx;
    for (std::size_t k = 0; k < n_out; ++k) {
        const std::size_t idx = k * (nt - 1) / (n_out - 1);
        if (out_idx.empty() || idx != out_idx.back())
            out_idx.push_back(idx);
    }

    std::string csv = "t,x,p\n";
    std::string summary = "t,mass_error,oracle_max_error\n";
    for (std::size_t idx : out_idx) {
        const double t = problem.t_grid[idx];
        const std::vector<double>& p = sol[idx];
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < nx; ++i)
            m += 0.5 * (p[i] + p[i + 1]) * o.dx;
        double max_err = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            csv += subdiff::format_full(t) + "," + subdiff::format_full(problem.x_grid[i]) + ","
                   + subdiff::format_full(p[i]) + "\n";
            const double ref =
                (idx == 0 ? subdiff::gaussian_parent_density(o.diffusion, o.t0,
                                                             problem.x_grid[i])
                          : subdiff::ffpe_reference_density(problem.params, o.t0, t,
                                                            problem.x_grid[i]))
                / mass;
            const double err = std::fabs(p[i] - ref);
            if (err > max_err)
                max_err = err;
        }
        summary += subdiff::format_full(t) + "," + subdiff::format_full(std::fabs(m - 1.0)) + ","
                   + subdiff::format_full(max_err) + "\n";
    }

    Emitter e = make_emitter(o.out_dir, "fpe", 0, argv_line);
    e.param("alpha", o.alpha);
    e.param("diffusion", o.diffusion);
    e.param("t0", o.t0);
    e.param("t_final", o.t_final);
    e.param("dx", o.dx);
    e.param("dt", problem.t_grid[1] - problem.t_grid[0]);
    e.param("half_width", o.half_width);
    e.add("fpe.csv", csv);
    e.add("fpe_summary.csv", summary);
    e.finish();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subdiffusive Black-Scholes toolkit: pricing, densities,"
                 " sampling, special functions, memory-kernel FPE"};
    app.require_subcommand(1);
    const std::string argv_line = join_args(argc, argv);

    PriceOpts po;
    CLI::App* price = app.add_subcommand("price", "European call under the randomized clock");
    price->add_option("--alpha", po.alpha, "stability index in (0,1]")->required();
    price->add_option("--spot", po.spot, "share price");
    price->add_option("--strike", po.strike, "striking price");
    CLI::Option* rate_opt = price->add_option("--rate", po.rate, "interest rate (market units)");
    CLI::Option* sigma_opt = price->add_option("--sigma", po.sigma, "volatility (market units)");
    CLI::Option* mat_opt =
        price->add_option("--maturity", po.maturity, "calendar maturity (market units)");
    CLI::Option* beta_opt = price->add_option("--beta", po.beta, "dimensionless 2r/sigma^2");
    CLI::Option* tau_opt =
        price->add_option("--tau-dimless", po.tau, "dimensionless model time");
    rate_opt->needs(sigma_opt)->needs(mat_opt)->excludes(beta_opt)->excludes(tau_opt);
    sigma_opt->needs(rate_opt)->needs(mat_opt);
    mat_opt->needs(rate_opt)->needs(sigma_opt);
    price->add_option("--method", po.method, "quad | mc")
        ->check(CLI::IsMember({"quad", "mc"}));
    price->add_option("--paths", po.paths, "Monte Carlo draws");
    price->add_option("--seed", po.seed, "Monte Carlo seed");
    price->add_option("--tol", po.tol, "quadrature relative tolerance");
    price->add_option("--out-dir", po.out_dir, "output directory");

    DensityOpts dopt;
    CLI::App* density = app.add_subcommand("density", "position density table");
    density->add_option("--alpha", dopt.alpha, "stability index in (0,1]")->required();
    density->add_option("--diffusion", dopt.diffusion, "generalized diffusion coefficient");
    density->add_option("--t", dopt.t, "observation time");
    density->add_option("--x-min", dopt.x_min, "left edge");
    density->add_option("--x-max", dopt.x_max, "right edge");
    density->add_option("--points", dopt.points, "grid size");
    density->add_option("--out-dir", dopt.out_dir, "output directory");

    SimulateOpts so;
    CLI::App* simulate = app.add_subcommand("simulate", "path sampling dump");
    simulate->add_option("--process", so.process, "stable | inverse | subdiffusion | ctrw")
        ->check(CLI::IsMember({"stable", "inverse", "subdiffusion", "ctrw"}));
    simulate->add_option("--alpha", so.alpha, "stability index")->required();
    simulate->add_option("--diffusion", so.diffusion, "diffusion coefficient (subdiffusion)");
    simulate->add_option("--paths", so.paths, "number of paths");
    simulate->add_option("--seed", so.seed, "base seed");
    simulate->add_option("--dtau", so.dtau, "operational-time step");
    simulate->add_option("--t-max", so.t_max, "horizon");
    simulate->add_option("--points", so.points, "grid points on [0, t-max]");
    simulate->add_option("--ctrw-scale", so.ctrw_scale, "rescaling factor c (ctrw)");
    simulate->add_option("--out-dir", so.out_dir, "output directory");

    SpecialOpts sp;
    CLI::App* special = app.add_subcommand("special", "special function evaluation");
    special
        ->add_option("--function", sp.function,
                     "gamma | probability_integral | mittag_leffler_neg | f_alpha |"
                     " f_alpha_mode | inverse_subordinator_density | airy_ai")
        ->required()
        ->check(CLI::IsMember({"gamma", "probability_integral", "mittag_leffler_neg", "f_alpha",
                               "f_alpha_mode", "inverse_subordinator_density", "airy_ai"}));
    special->add_option("--alpha", sp.alpha, "stability index where applicable");
    special->add_option("--t", sp.t, "time argument (inverse_subordinator_density)");
    CLI::Option* z_opt = special->add_option("--z", sp.z, "single evaluation point");
    special->add_option("--z-min", sp.z_min, "grid start");
    special->add_option("--z-max", sp.z_max, "grid end");
    special->add_option("--z-count", sp.z_count, "grid size");
    special->add_option("--out-dir", sp.out_dir, "output directory");

    FpeOpts fo;
    CLI::App* fpe = app.add_subcommand("fpe", "memory-kernel Fokker-Planck run");
    fpe->add_option("--alpha", fo.alpha, "stability index in (0,1]")->required();
    fpe->add_option("--diffusion", fo.diffusion, "diffusion coefficient");
    fpe->add_option("--t0", fo.t0, "initial-profile offset time");
    fpe->add_option("--t-final", fo.t_final, "marching horizon");
    fpe->add_option("--dx", fo.dx, "spatial step");
    fpe->add_option("--dt", fo.dt, "time step (default: from the stability bound)");
    fpe->add_option("--half-width", fo.half_width, "domain is [-half-width, half-width]");
    fpe->add_option("--outputs", fo.outputs, "number of dumped time slices");
    fpe->add_option("--out-dir", fo.out_dir, "output directory");

    try {
        app.parse(argc, argv);
        sp.z_given = z_opt->count() > 0;
        po.market = sigma_opt->count() > 0 || rate_opt->count() > 0 || mat_opt->count() > 0;
        if (*price)
            return run_price(po, argv_line);
        if (*density)
            return run_density(dopt, argv_line);
        if (*simulate)
            return run_simulate(so, argv_line);
        if (*special)
            return run_special(sp, argv_line);
        if (*fpe)
            return run_fpe(fo, argv_line);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const subdiff::convergence_error& e) {
        std::fprintf(stderr, "numerical failure: %s (achieved %.3g, requested %.3g)\n", e.what(),
                     e.achieved(), e.requested());
        return 1;
    } catch (const subdiff::stability_error& e) {
        std::fprintf(stderr, "numerical failure: %s (largest admissible step %.6g)\n", e.what(),
                     e.admissible_step());
        return 1;
    } catch (const subdiff::budget_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
