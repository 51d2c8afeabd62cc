#include "pmns/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "pmns/analyticity.hpp"
#include "pmns/convsum.hpp"
#include "pmns/util.hpp"

namespace pmns {

namespace {

// Fail-closed key check: configs with unknown keys are rejected so typos
// cannot silently fall back to defaults.
void require_keys(const Json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

Json parse_json_file(const std::string& path) {
    std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Convert the byte offset to a line/column diagnostic.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON parse error: " + e.what());
    }
}

SpectralField parse_initial_data(const Json& j, const LatticeSpec& spec,
                                 std::optional<std::uint64_t> seed_override,
                                 const std::string& config_dir,
                                 std::vector<std::string>* input_files) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError("initial_data: need an object with a 'type' key");
    std::string type = j.at("type").get<std::string>();
    if (type == "zero") {
        require_keys(j, "initial_data(zero)", {"type"});
        return SpectralField(spec, true, true);
    }
    if (type == "taylor_green") {
        require_keys(j, "initial_data(taylor_green)", {"type", "eps"});
        return make_taylor_green(spec, j.at("eps").get<double>());
    }
    if (type == "single_mode") {
        require_keys(j, "initial_data(single_mode)",
                     {"type", "k", "amplitude", "realify", "div_free"});
        auto kv = j.at("k").get<std::vector<int>>();
        if (kv.size() != 3) throw ConfigError("initial_data: k must have 3 components");
        const Json& amp = j.at("amplitude");
        if (!amp.is_array() || amp.size() != 3)
            throw ConfigError("initial_data: amplitude must be [[re,im],[re,im],[re,im]]");
        Coeff c;
        for (int i = 0; i < 3; ++i) {
            if (!amp[i].is_array() || amp[i].size() != 2)
                throw ConfigError("initial_data: amplitude components are [re,im] pairs");
            c[i] = Complex(amp[i][0].get<double>(), amp[i][1].get<double>());
        }
        return make_single_mode(spec, {kv[0], kv[1], kv[2]}, c, j.value("realify", true),
                                j.value("div_free", true));
    }
    if (type == "random_divfree") {
        require_keys(j, "initial_data(random_divfree)", {"type", "eps", "decay", "seed"});
        std::uint64_t seed = seed_override ? *seed_override : j.value("seed", std::uint64_t(1));
        return make_random_divfree(spec, j.at("eps").get<double>(), j.value("decay", 2.0), seed);
    }
    if (type == "file") {
        require_keys(j, "initial_data(file)", {"type", "path"});
        std::string path = j.at("path").get<std::string>();
        if (!path.empty() && path[0] != '/') path = config_dir + "/" + path;
        if (input_files) input_files->push_back(path);
        SpectralField f = load_field(path);
        if (!(f.spec == spec))
            throw ConfigError("initial_data file: lattice truncation differs from config N");
        return f;
    }
    throw ConfigError("initial_data: unknown type '" + type + "'");
}

}  // namespace

SolveSetup parse_solve_config(const std::string& path, const CliCommon& common, bool weighted) {
    Json j = parse_json_file(path);
    require_keys(j, "config",
                 {"N", "mu", "grid", "eta", "eta_pairs", "eta_seed", "max_iter", "tol", "weight",
                  "conv_path", "allow_inadmissible", "initial_data"});
    SolveSetup setup;
    try {
        SolverConfig& cfg = setup.cfg;
        cfg.spec.N = j.at("N").get<int>();
        cfg.mu = j.at("mu").get<double>();
        if (j.contains("grid")) {
            const Json& g = j.at("grid");
            require_keys(g, "grid", {"t_min", "t_max", "nodes", "spacing"});
            cfg.grid.t_min = g.value("t_min", cfg.grid.t_min);
            cfg.grid.t_max = g.value("t_max", cfg.grid.t_max);
            cfg.grid.nodes = g.value("nodes", cfg.grid.nodes);
            std::string spacing = g.value("spacing", std::string("geometric"));
            if (spacing == "geometric")
                cfg.grid.spacing = GridSpacing::geometric;
            else if (spacing == "uniform")
                cfg.grid.spacing = GridSpacing::uniform;
            else
                throw ConfigError("grid.spacing must be geometric or uniform");
        }
        cfg.eta = j.value("eta", 0.0);
        cfg.eta_pairs = j.value("eta_pairs", cfg.eta_pairs);
        cfg.eta_seed = j.value("eta_seed", cfg.eta_seed);
        cfg.max_iter = j.value("max_iter", cfg.max_iter);
        cfg.tol = j.value("tol", cfg.tol);
        cfg.allow_inadmissible = j.value("allow_inadmissible", false);
        cfg.sched.mu = cfg.mu;
        if (j.contains("weight")) {
            const Json& w = j.at("weight");
            require_keys(w, "weight", {"kind", "alpha"});
            cfg.sched.weight_kind = parse_weight_kind(w.value("kind", std::string("none")));
            cfg.sched.alpha = w.value("alpha", cfg.sched.alpha);
        }
        std::string path_name = j.value("conv_path", std::string("fast"));
        if (common.conv_path) path_name = *common.conv_path;
        cfg.path = parse_conv_path(path_name);

        if (weighted && cfg.sched.weight_kind == WeightKind::none)
            throw ConfigError("weighted solve requires weight.kind sqrt_t or alpha_t");
        if (!weighted && cfg.sched.weight_kind != WeightKind::none)
            throw ConfigError("plain solve requires weight.kind none (use the gevrey command)");

        cfg.validate();
        std::string config_dir = std::filesystem::path(path).parent_path().string();
        if (config_dir.empty()) config_dir = ".";
        setup.v0 = parse_initial_data(j.at("initial_data"), cfg.spec, common.seed, config_dir,
                                      &setup.input_files);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    setup.echo = j;
    return setup;
}

namespace {

int run_solve_command(const std::string& config_path, const CliCommon& common, bool weighted) {
    std::string started = iso8601_now();
    SolveSetup setup = parse_solve_config(config_path, common, weighted);
    std::filesystem::create_directories(common.out_dir);

    RunManifest manifest;
    manifest.command = weighted ? "gevrey" : "solve";
    manifest.config_echo = setup.echo;
    manifest.started = started;
    manifest.inputs.push_back(config_path);
    for (const std::string& p : setup.input_files) manifest.inputs.push_back(p);

    std::pair<Trajectory, ConvergenceReport> result;
    try {
        result = weighted ? gevrey_solve(setup.v0, setup.cfg) : picard_solve(setup.v0, setup.cfg);
    } catch (const DivergenceError& e) {
        write_text_file(common.out_dir + "/convergence.json",
                        convergence_report_to_json(e.report).dump(2) + "\n");
        manifest.outputs.push_back(common.out_dir + "/convergence.json");
        write_manifest(manifest, common.out_dir);
        std::cerr << "solve diverged; convergence report written\n";
        return 2;
    }
    auto& [traj, rep] = result;

    std::vector<std::string> written;
    if (weighted) {
        save_trajectory(traj, common.out_dir, "V_node", &written);
        KernelSchedule sched = setup.cfg.sched;
        sched.mu = setup.cfg.mu;
        Trajectory v = unweight_trajectory(traj, sched);
        save_trajectory(v, common.out_dir, "v_node", &written);
    } else {
        save_trajectory(traj, common.out_dir, "v_node", &written);
    }
    NormReport norms = make_norm_report(traj, setup.cfg.mu, QuadRule::exact_kernel, 2.5);
    write_text_file(common.out_dir + "/norms.json", norm_report_to_json(norms).dump(2) + "\n");
    written.push_back(common.out_dir + "/norms.json");
    write_text_file(common.out_dir + "/convergence.json",
                    convergence_report_to_json(rep).dump(2) + "\n");
    written.push_back(common.out_dir + "/convergence.json");

    manifest.outputs = written;
    write_manifest(manifest, common.out_dir);
    std::cout << (weighted ? "gevrey" : "solve") << ": " << stop_reason_name(rep.stop)
              << ", iterations " << rep.diff_norms.size() << ", |||x0||| " << rep.x0_triple
              << ", |||x||| " << (rep.triple_norms.empty() ? 0.0 : rep.triple_norms.back()) << "\n";
    return rep.stop == StopReason::converged ? 0 : 2;
}

}  // namespace

int cmd_solve(const std::string& config_path, const CliCommon& common) {
    return run_solve_command(config_path, common, false);
}

int cmd_gevrey(const std::string& config_path, const CliCommon& common) {
    return run_solve_command(config_path, common, true);
}

int cmd_verify_lemma(int K, const std::string& policy, const CliCommon& common) {
    std::string started = iso8601_now();
    if (policy != "16x") throw ConfigError("unknown R policy '" + policy + "' (supported: 16x)");
    if (K < 1) throw ConfigError("K must be >= 1");
    std::filesystem::create_directories(common.out_dir);

    std::vector<LatticeSumRow> rows = lattice_sum_rows(K, policy_16x);
    std::string csv = "k1,k2,k3,R,sum,tail,weighted_total,q1,q2,q3,q4\n";
    double c_est = 0.0;
    WaveVector argmax;
    for (const LatticeSumRow& r : rows) {
        RegionSums reg = region_sums(r.k, r.R);
        csv += std::to_string(r.k.k1) + "," + std::to_string(r.k.k2) + "," +
               std::to_string(r.k.k3) + "," + std::to_string(r.R) + "," + format_double(r.s_r) +
               "," + format_double(r.tail) + "," + format_double(r.weighted_total) + "," +
               format_double(reg.q1) + "," + format_double(reg.q2) + "," + format_double(reg.q3) +
               "," + format_double(reg.q4) + "\n";
        if (r.weighted_total > c_est) {
            c_est = r.weighted_total;
            argmax = r.k;
        }
    }
    write_text_file(common.out_dir + "/lattice_sums.csv", csv);
    Json summary;
    summary["K"] = K;
    summary["policy"] = policy;
    summary["c_est"] = c_est;
    summary["argmax"] = Json::array({argmax.k1, argmax.k2, argmax.k3});
    summary["rows"] = rows.size();
    write_text_file(common.out_dir + "/summary.json", summary.dump(2) + "\n");

    RunManifest manifest;
    manifest.command = "verify-lemma";
    manifest.config_echo = Json{{"K", K}, {"policy", policy}};
    manifest.started = started;
    manifest.outputs = {common.out_dir + "/lattice_sums.csv", common.out_dir + "/summary.json"};
    write_manifest(manifest, common.out_dir);
    std::cout << "verify-lemma: c_est " << c_est << " at k (" << argmax.k1 << "," << argmax.k2
              << "," << argmax.k3 << ")\n";
    return 0;
}

int cmd_norms(const std::string& traj_path, const std::vector<double>& a_list, double mu,
              const std::string& rule, const CliCommon& common) {
    std::string started = iso8601_now();
    QuadRule q = parse_quad_rule(rule);
    if (!(mu > 0.0)) throw ConfigError("norms: mu must be positive");
    Trajectory traj = load_trajectory(traj_path);
    std::filesystem::create_directories(common.out_dir);

    NormReport rep = make_norm_report(traj, mu, q, 2.5);
    Json j = norm_report_to_json(rep);
    Json extras = Json::array();
    std::string csv = "a,st_pm\n";
    for (double a : a_list) {
        double v = st_pm_norm(traj, a);
        extras.push_back(Json{{"a", a}, {"st_pm", v}});
        csv += format_double(a) + "," + format_double(v) + "\n";
    }
    j["st_pm_by_a"] = extras;
    write_text_file(common.out_dir + "/norms.json", j.dump(2) + "\n");
    write_text_file(common.out_dir + "/norms.csv", csv);

    RunManifest manifest;
    manifest.command = "norms";
    manifest.config_echo = Json{{"traj", traj_path}, {"a_list", a_list}, {"mu", mu}, {"rule", rule}};
    manifest.started = started;
    manifest.inputs = {traj_path};
    manifest.outputs = {common.out_dir + "/norms.json", common.out_dir + "/norms.csv"};
    write_manifest(manifest, common.out_dir);
    std::cout << "norms: triple " << rep.triple << "\n";
    return 0;
}

int cmd_radius(const std::string& traj_path, double mu, double alpha, double kappa,
               const CliCommon& common) {
    std::string started = iso8601_now();
    if (!(kappa > 1.0)) throw ConfigError("radius: kappa must exceed 1");
    if (!(mu > 0.0)) throw ConfigError("radius: mu must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("radius: alpha must lie in (0,1)");
    Trajectory traj = load_trajectory(traj_path);
    std::filesystem::create_directories(common.out_dir);

    RadiusProfile prof = radius_profile(traj, mu, alpha, kappa);
    write_text_file(common.out_dir + "/radius.csv", radius_profile_csv(prof));

    RunManifest manifest;
    manifest.command = "radius";
    manifest.config_echo =
        Json{{"traj", traj_path}, {"mu", mu}, {"alpha", alpha}, {"kappa", kappa}};
    manifest.started = started;
    manifest.inputs = {traj_path};
    manifest.outputs = {common.out_dir + "/radius.csv"};
    write_manifest(manifest, common.out_dir);
    std::cout << "radius: " << prof.passes << " pass, " << prof.fails << " fail, " << prof.excluded
              << " excluded\n";
    return 0;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Spectral toolkit for small-data incompressible flow in weighted "
                 "Fourier sup-norms: mild solutions by fixed-point iteration, norm "
                 "families, convolution-bound certification, analyticity radius."};
    app.require_subcommand(1);

    CliCommon common;
    std::uint64_t seed_value = 0;
    bool seed_set = false;
    std::string conv_path_value;
    bool conv_set = false;
    app.add_option("--out", common.out_dir, "Output directory")->capture_default_str();
    app.add_option("--threads", common.threads, "Worker cap for parallel loops")
        ->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed_value, "Override the initial-data seed");
    auto* conv_opt =
        app.add_option("--conv-path", conv_path_value, "Convolution path: direct or fast");

    std::string config_path, traj_path, policy = "16x", rule = "exact-kernel";
    int K = 8;
    double mu = 1.0, alpha = 0.5, kappa = 2.0;
    std::vector<double> a_list;

    CLI::App* solve = app.add_subcommand("solve", "Mild solution by fixed-point iteration");
    solve->add_option("--config", config_path, "JSON config")->required();
    CLI::App* gevrey =
        app.add_subcommand("gevrey", "Weighted (analyticity-tracking) fixed-point solve");
    gevrey->add_option("--config", config_path, "JSON config")->required();
    CLI::App* lemma = app.add_subcommand("verify-lemma", "Certify the convolution-sum bound");
    lemma->add_option("--K", K, "Scan sup_norm(k) <= K")->capture_default_str();
    lemma->add_option("--policy", policy, "Truncation radius policy")->capture_default_str();
    CLI::App* norms = app.add_subcommand("norms", "Norm report for a stored trajectory");
    norms->add_option("--traj", traj_path, "Trajectory index JSON")->required();
    norms->add_option("--a", a_list, "Extra sup-norm exponents");
    norms->add_option("--mu", mu, "Viscosity")->capture_default_str();
    norms->add_option("--rule", rule, "Quadrature rule")->capture_default_str();
    CLI::App* radius = app.add_subcommand("radius", "Decay-radius profile for a trajectory");
    radius->add_option("--traj", traj_path, "Trajectory index JSON")->required();
    radius->add_option("--mu", mu, "Viscosity")->capture_default_str();
    radius->add_option("--alpha", alpha, "Linear weight slope")->capture_default_str();
    radius->add_option("--kappa", kappa, "Decay-criterion slack (> 1)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    seed_set = seed_opt->count() > 0;
    conv_set = conv_opt->count() > 0;
    if (seed_set) common.seed = seed_value;
    if (conv_set) common.conv_path = conv_path_value;
    set_worker_cap(common.threads);

    try {
        if (solve->parsed()) return cmd_solve(config_path, common);
        if (gevrey->parsed()) return cmd_gevrey(config_path, common);
        if (lemma->parsed()) return cmd_verify_lemma(K, policy, common);
        if (norms->parsed()) return cmd_norms(traj_path, a_list, mu, rule, common);
        if (radius->parsed()) return cmd_radius(traj_path, mu, alpha, kappa, common);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DivergenceError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace pmns
