// Experiment runner: every subcommand reads one config file, runs a fully
// seeded computation and writes CSV tables plus a JSON summary into the
// output directory. Exit codes: 0 success, 2 validation error, 3 numerical
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hyplab/config.hpp"
#include "hyplab/covering.hpp"
#include "hyplab/csvio.hpp"
#include "hyplab/extension.hpp"
#include "hyplab/heat.hpp"
#include "hyplab/spectral.hpp"
#include "hyplab/thickness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hyplab;

namespace {

struct RunContext {
    Config cfg;
    fs::path out;
    std::uint64_t seed = 0;
    std::uint64_t cfg_hash = 0;
    Exec exec = Exec::parallel;
};

SensorSet load_sensor(const Config& cfg, const std::string& section) {
    std::string inline_text = cfg.get_string(section, "inline", "");
    std::string file = cfg.get_string(section, "file", "");
    if (inline_text.empty() == file.empty())
        throw ValidationError("sensor: give exactly one of " + section + ".inline or " +
                              section + ".file");
    std::string text = inline_text;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw ValidationError("cannot open sensor file: " + file);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    SensorSet s = SensorSet::parse(text);
    if (cfg.has(section, "periodic"))
        s = s.with_periodic(cfg.get_bool(section, "periodic", false));
    return s;
}

Region load_region(const Config& cfg) {
    std::string kind = cfg.get_string("region", "kind");
    if (kind == "rect") {
        Rect r{cfg.get_double("region", "x0"), cfg.get_double("region", "x1"),
               cfg.get_double("region", "y0"), cfg.get_double("region", "y1")};
        return AmbientRect{r};
    }
    if (kind == "cusp") {
        EndModel end = EndModel::cusp(cfg.get_double("region", "l"));
        return CuspRegion(end, cfg.get_double("region", "y_max", 1e3));
    }
    if (kind == "funnel") {
        EndModel end = EndModel::funnel(cfg.get_double("region", "l"));
        return FunnelRegion(end, cfg.get_double("region", "depth", 3.0));
    }
    throw ValidationError("region.kind must be rect, cusp or funnel");
}

TruncatedCusp load_domain(const Config& cfg) {
    TruncatedCusp d;
    d.a = cfg.get_double("domain", "a", 1.0);
    d.Y = cfg.get_double("domain", "Y", std::exp(M_PI));
    d.n = static_cast<int>(cfg.get_long("domain", "n", 800));
    d.k_max = static_cast<int>(cfg.get_long("domain", "k_max", 8));
    d.validate();
    return d;
}

void write_summary(const RunContext& ctx, json& j) {
    j["seed"] = ctx.seed;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(ctx.cfg_hash));
    j["config_hash"] = buf;
    std::ofstream out(ctx.out / "summary.json");
    out << j.dump(2) << "\n";
}

const std::set<std::string> kRegionKeys = {"kind", "l", "x0", "x1", "y0", "y1",
                                           "y_max", "depth"};
const std::set<std::string> kSensorKeys = {"inline", "file", "periodic"};
const std::set<std::string> kRunKeys = {"seed", "threads"};
const std::set<std::string> kDomainKeys = {"a", "Y", "n", "k_max"};

int cmd_thickness(const RunContext& ctx) {
    ctx.cfg.validate({{"region", kRegionKeys},
                      {"sensor", kSensorKeys},
                      {"run", kRunKeys},
                      {"thickness",
                       {"R", "center_samples", "strata_x", "strata_y", "rel_tol", "y_max",
                        "delta"}}});
    SensorSet omega = load_sensor(ctx.cfg, "sensor");
    Region region = load_region(ctx.cfg);
    double R = ctx.cfg.get_double("thickness", "R");
    ProfileOptions opts;
    opts.strata_x = static_cast<int>(ctx.cfg.get_long("thickness", "strata_x", 64));
    opts.strata_y = static_cast<int>(ctx.cfg.get_long("thickness", "strata_y", 64));
    opts.y_max = ctx.cfg.get_double("thickness", "y_max", 1e3);
    opts.measure.rel_tol = ctx.cfg.get_double("thickness", "rel_tol", 1e-6);
    opts.measure.exec = ctx.exec;
    long centers = ctx.cfg.get_long("thickness", "center_samples", 0);

    ThicknessReport rep = thickness_profile(omega, region, R, centers, ctx.seed, opts);
    write_thickness_csv(rep, (ctx.out / "thickness.csv").string(), ctx.cfg_hash);

    json j = json::parse(thickness_json(rep));
    if (ctx.cfg.has("thickness", "delta")) {
        double delta = ctx.cfg.get_double("thickness", "delta");
        j["delta"] = delta;
        j["is_thick"] = is_thick(rep, delta);
    }
    json out = {{"thickness", j}};
    write_summary(ctx, out);
    return 0;
}

int cmd_cover(const RunContext& ctx) {
    ctx.cfg.validate({{"region", kRegionKeys},
                      {"run", kRunKeys},
                      {"cover", {"R", "sample_count", "probe_count", "r_check"}}});
    Region region = load_region(ctx.cfg);
    double R = ctx.cfg.get_double("cover", "R");
    long samples = ctx.cfg.get_long("cover", "sample_count", 20000);
    long probes = ctx.cfg.get_long("cover", "probe_count", 10000);
    double r_check = ctx.cfg.get_double("cover", "r_check", 2.0 * R);

    SeparatedSet s = build_maximal_separated(region, R, samples, ctx.seed);
    write_covering_csv(s, (ctx.out / "covering.csv").string(), ctx.cfg_hash);
    CoverReport cover = verify_covering(s, probes, ctx.seed, ctx.exec);
    long overlap = intersection_number(s, r_check, ctx.exec);

    json j;
    j["cover"] = {{"R", R},
                  {"centers", s.centers.size()},
                  {"probes", cover.probes},
                  {"coverage", cover.coverage},
                  {"violators", cover.violators.size()},
                  {"r_check", r_check},
                  {"intersection_number", overlap},
                  {"paper_bound_25e2R", 25.0 * std::exp(2.0 * R)}};
    write_summary(ctx, j);
    return 0;
}

int cmd_spectral(const RunContext& ctx) {
    ctx.cfg.validate({{"domain", kDomainKeys},
                      {"sensor", kSensorKeys},
                      {"run", kRunKeys},
                      {"spectral", {"lambda_grid", "max_modes"}}});
    TruncatedCusp domain = load_domain(ctx.cfg);
    SensorSet omega = load_sensor(ctx.cfg, "sensor");
    std::vector<double> grid = ctx.cfg.get_list("spectral", "lambda_grid");
    int max_modes = static_cast<int>(ctx.cfg.get_long("spectral", "max_modes", 30));

    double cap = *std::max_element(grid.begin(), grid.end());
    ModeBasis basis = solve_modes(domain, cap, max_modes);
    if (static_cast<int>(basis.modes.size()) > max_modes)
        basis.modes.resize(static_cast<std::size_t>(max_modes));
    save_basis(basis, (ctx.out / "basis.csv").string());

    CsvWriter w((ctx.out / "spectral_constants.csv").string(),
                {"lambda", "C", "gram_min", "modes"}, ctx.cfg_hash);
    std::vector<double> ls, cs;
    for (double lam : grid) {
        SpectralConstant c = spectral_constant(omega, lam, basis, ctx.exec);
        w.row({lam, c.value, c.gram_min, static_cast<double>(c.modes)});
        if (!c.singular && c.modes > 0) {
            ls.push_back(lam);
            cs.push_back(c.value);
        }
    }
    json j;
    j["spectral"] = {{"modes_total", basis.modes.size()},
                     {"lambda_grid", grid}};
    if (ls.size() >= 3) {
        ExpFit fit = fit_exponential(ls, cs);
        j["spectral"]["fit"] = {{"C0", fit.C0}, {"rate", fit.rate}, {"residual", fit.residual}};
    }
    write_summary(ctx, j);
    return 0;
}

int cmd_extension(const RunContext& ctx) {
    ctx.cfg.validate(
        {{"domain", kDomainKeys},
         {"run", kRunKeys},
         {"extension",
          {"T", "t_points", "n_theta", "lambda", "n_trials", "lambda_lo", "lambda_hi",
           "K_box", "E_box", "Omega_box"}}});
    TruncatedCusp domain = load_domain(ctx.cfg);
    double T = ctx.cfg.get_double("extension", "T", 1.0);
    int t_points = static_cast<int>(ctx.cfg.get_long("extension", "t_points", 33));
    int n_theta = static_cast<int>(ctx.cfg.get_long("extension", "n_theta", 48));
    double lambda = ctx.cfg.get_double("extension", "lambda", 6.0);

    ModeBasis basis = solve_modes(domain, lambda * 1.5 + 1.0, 64);

    // Residual and energy report for a seeded random window.
    CounterRng rng(ctx.seed, "extension-coeffs");
    std::vector<double> coeffs(basis.modes.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = rng.uniform(i) * 2.0 - 1.0;
    SpectralWindow w = project(basis, coeffs, lambda);
    HarmonicExtension ext = harmonic_extension(w, T, t_points, n_theta, ctx.exec);

    CsvWriter res((ctx.out / "extension.csv").string(),
                  {"lambda", "T", "t_points", "n_theta", "residual", "h3_ratio"},
                  ctx.cfg_hash);
    double residual = extension_residual(ext);
    double ratio = energy_bound_ratio(w, T);
    res.row({lambda, T, static_cast<double>(t_points), static_cast<double>(n_theta), residual,
             ratio});

    // Smallness exponent experiment.
    SmallnessConfig sc;
    double ymid = 0.5 * (domain.a + domain.Y);
    double yspan = domain.Y - domain.a;
    sc.K = Box3{-T / 2, T / 2, 0.15, 0.85, domain.a + 0.2 * yspan, domain.a + 0.8 * yspan};
    sc.E = Box3{0, 0, 0.3, 0.7, ymid - 0.2 * yspan, ymid + 0.2 * yspan};
    sc.Omega = Box3{-T, T, 0.0, 1.0, domain.a, domain.Y};
    sc.T = T;
    sc.t_points = t_points;
    sc.n_theta = n_theta;
    sc.n_trials = static_cast<int>(ctx.cfg.get_long("extension", "n_trials", 20));
    sc.lambda_lo = ctx.cfg.get_double("extension", "lambda_lo", 2.0);
    sc.lambda_hi = ctx.cfg.get_double("extension", "lambda_hi", lambda);
    sc.exec = ctx.exec;
    SmallnessFit fit = smallness_experiment(basis, sc, ctx.seed);

    CsvWriter tw((ctx.out / "smallness.csv").string(), {"sup_K", "sup_E", "sup_Omega"},
                 ctx.cfg_hash);
    for (const SmallnessTrial& t : fit.trials) tw.row({t.sup_K, t.sup_E, t.sup_Omega});

    json j;
    j["extension"] = {{"residual", residual}, {"h3_ratio", ratio}};
    j["smallness"] = {{"C", fit.C},
                      {"alpha", fit.alpha},
                      {"trials_used", fit.trials_used},
                      {"trials_skipped", fit.trials_skipped}};
    write_summary(ctx, j);
    return 0;
}

int cmd_heat_necessity(const RunContext& ctx) {
    ctx.cfg.validate({{"run", kRunKeys},
                      {"curvature", {"C_D", "C1", "C2", "fit_envelopes", "d_max", "t_min",
                                     "t_max", "d_steps", "t_steps"}}});
    CurvatureParams cp;
    cp.C_D = ctx.cfg.get_double("curvature", "C_D", 4.0);
    cp.C1 = ctx.cfg.get_double("curvature", "C1", 0.0);
    cp.C2 = ctx.cfg.get_double("curvature", "C2", 0.0);

    json j;
    if (ctx.cfg.get_bool("curvature", "fit_envelopes", cp.C1 <= 0.0 || cp.C2 <= 0.0)) {
        int dn = static_cast<int>(ctx.cfg.get_long("curvature", "d_steps", 21));
        int tn = static_cast<int>(ctx.cfg.get_long("curvature", "t_steps", 16));
        double dmax = ctx.cfg.get_double("curvature", "d_max", 5.0);
        double tmin = ctx.cfg.get_double("curvature", "t_min", 0.05);
        double tmax = ctx.cfg.get_double("curvature", "t_max", 2.0);
        std::vector<double> dg, tg;
        for (int i = 0; i < dn; ++i) dg.push_back(dmax * i / (dn - 1));
        for (int i = 0; i < tn; ++i)
            tg.push_back(tmin * std::pow(tmax / tmin, static_cast<double>(i) / (tn - 1)));
        EnvelopeFit fit = envelope_fit(dg, tg, ctx.exec);
        cp.C1 = fit.C1;
        cp.C2 = fit.C2;
        j["envelope_fit"] = {{"C1", fit.C1}, {"C2", fit.C2}};

        CsvWriter w((ctx.out / "envelope.csv").string(), {"d", "t", "p", "vol_sqrt_t"},
                    ctx.cfg_hash);
        for (double d : dg)
            for (double t : tg)
                w.row({d, t, h2_heat_kernel(d, t), ball_volume(std::sqrt(t))});
    }

    NecessityParams np = necessity_pipeline(cp);
    std::ofstream nf(ctx.out / "necessity.json");
    nf << necessity_json(np, cp) << "\n";
    j["necessity"] = json::parse(necessity_json(np, cp));
    write_summary(ctx, j);
    return 0;
}

int cmd_observability(const RunContext& ctx) {
    ctx.cfg.validate({{"domain", kDomainKeys},
                      {"sensor", kSensorKeys},
                      {"run", kRunKeys},
                      {"observability", {"T_list", "lambda_cap", "max_modes"}}});
    TruncatedCusp domain = load_domain(ctx.cfg);
    SensorSet omega = load_sensor(ctx.cfg, "sensor");
    std::vector<double> T_list = ctx.cfg.get_list("observability", "T_list");
    double cap = ctx.cfg.get_double("observability", "lambda_cap", 10.0);
    int max_modes = static_cast<int>(ctx.cfg.get_long("observability", "max_modes", 30));

    ModeBasis basis = solve_modes(domain, cap, max_modes);
    CsvWriter w((ctx.out / "observability.csv").string(), {"T", "C_obs", "modes"},
                ctx.cfg_hash);
    json rows = json::array();
    for (double T : T_list) {
        ObservabilityConstant c = observability_constant(omega, T, basis, cap, ctx.exec);
        w.row({T, c.value, static_cast<double>(c.modes)});
        rows.push_back({{"T", T}, {"C_obs", c.value}, {"singular", c.singular}});
    }
    json j;
    j["observability"] = rows;
    write_summary(ctx, j);
    return 0;
}

int cmd_gaussian(const RunContext& ctx) {
    ctx.cfg.validate({{"run", kRunKeys},
                      {"gaussian", {"alpha_list", "beta_list", "C_D"}}});
    std::vector<double> alphas = ctx.cfg.get_list("gaussian", "alpha_list");
    std::vector<double> betas = ctx.cfg.get_list("gaussian", "beta_list");
    double C_D = ctx.cfg.get_double("gaussian", "C_D", 4.0);

    CsvWriter w((ctx.out / "gaussian.csv").string(),
                {"alpha", "beta", "bound", "numeric", "bound_below_numeric"}, ctx.cfg_hash);
    bool all_ok = true;
    for (double a : alphas) {
        for (double b : betas) {
            double bound = gaussian_quotient_bound(a, b, C_D);
            double numeric = gaussian_quotient_numeric(a, b);
            bool ok = bound <= numeric * (1.0 + 1e-9);
            all_ok = all_ok && ok;
            w.row({a, b, bound, numeric, ok ? 1.0 : 0.0});
        }
    }
    json j;
    j["gaussian"] = {{"C_D", C_D},
                     {"pairs", alphas.size() * betas.size()},
                     {"bound_below_numeric_everywhere", all_ok},
                     {"closed_form_alpha1", gaussian_radial_closed_form(1.0)}};
    write_summary(ctx, j);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for spectral estimates on surfaces with hyperbolic ends"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed_flag = 0;
    bool seed_given = false;
    int threads = 0;

    app.add_option("--config", config_path, "config file path")->required();
    app.add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed override (u64)");
    app.add_option("--threads", threads, "worker threads (0 = default)");

    std::map<std::string, int (*)(const RunContext&)> commands = {
        {"thickness", cmd_thickness},       {"cover", cmd_cover},
        {"spectral", cmd_spectral},         {"extension", cmd_extension},
        {"heat-necessity", cmd_heat_necessity}, {"observability", cmd_observability},
        {"gaussian", cmd_gaussian}};
    for (auto& [name, fn] : commands) {
        (void)fn;
        app.add_subcommand(name, "");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) != 0 ? 2 : 0;
    }
    seed_given = seed_opt->count() > 0;

    RunContext ctx;
    fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    ctx.out = out;

    auto fail_json = [&](const std::string& code, const std::string& msg) {
        json j;
        j["error"] = {{"code", code}, {"message", msg}};
        std::ofstream f(out / "error.json");
        if (f) f << j.dump(2) << "\n";
        std::cerr << "error (" << code << "): " << msg << "\n";
    };

    try {
        ctx.cfg = Config::parse_file(config_path);
        ctx.seed = seed_given ? seed_flag : ctx.cfg.get_u64("run", "seed", 0);
        int cfg_threads = static_cast<int>(ctx.cfg.get_long("run", "threads", 0));
        int use_threads = threads > 0 ? threads : cfg_threads;
        if (use_threads > 0) set_worker_threads(use_threads);
        ctx.exec = Exec::parallel;
        ctx.cfg_hash = text_hash(ctx.cfg.resolved_text());
        {
            std::ofstream echo(out / "resolved_config.ini");
            echo << ctx.cfg.resolved_text();
        }
        std::string sub = app.get_subcommands().front()->get_name();
        return commands.at(sub)(ctx);
    } catch (const ValidationError& e) {
        fail_json(e.code(), e.what());
        return 2;
    } catch (const Error& e) {
        fail_json(e.code(), e.what());
        return 3;
    } catch (const std::exception& e) {
        fail_json("internal", e.what());
        return 3;
    }
}
