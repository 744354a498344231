#include "dlg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>

#include "dlg/io.hpp"
#include "dlg/simulate.hpp"
#include "dlg/stability.hpp"

namespace dlg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

Kernel parse_kernel(const std::string& spec) {
    if (spec == "dirac") return make_dirac();
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (family == "uniform") {
        if (args.rfind("sigma=", 0) != 0)
            throw std::invalid_argument("kernel: expected uniform:sigma=<value>");
        std::size_t used = 0;
        const double sigma = std::stod(args.substr(6), &used);
        if (used != args.size() - 6)
            throw std::invalid_argument("kernel: bad sigma value in '" + spec + "'");
        return make_uniform(sigma);
    }
    if (family == "gamma") {
        if (args.rfind("p=", 0) != 0)
            throw std::invalid_argument("kernel: expected gamma:p=<integer>");
        std::size_t used = 0;
        const int p = std::stoi(args.substr(2), &used);
        if (used != args.size() - 2)
            throw std::invalid_argument("kernel: bad p value in '" + spec + "'");
        return make_gamma(p);
    }
    throw std::invalid_argument("kernel: unknown family '" + family +
                                "' (expected uniform, dirac, or gamma)");
}

namespace {

json kernel_json(const Kernel& kernel) {
    json j;
    j["name"] = kernel_name(kernel);
    if (const auto* u = std::get_if<UniformKernel>(&kernel)) {
        j["family"] = "uniform";
        j["sigma"] = u->sigma;
    } else if (std::holds_alternative<DiracKernel>(kernel)) {
        j["family"] = "dirac";
    } else {
        j["family"] = "gamma";
        j["p"] = std::get<GammaKernel>(kernel).p;
    }
    return j;
}

json crossings_json(const std::vector<HopfPoint>& pts) {
    json arr = json::array();
    for (const auto& pt : pts) {
        arr.push_back({{"omega", pt.omega},
                       {"r", pt.r},
                       {"tau_m", pt.tau_m},
                       {"crossing", io::crossing_label(pt.crossing)}});
    }
    return arr;
}

void reproduce_figure(const std::string& id, const fs::path& out) {
    const double K = 5.0, D = 3.0;
    if (id == "fig3") {
        // Stability-region boundaries for a family of uniform widths.
        for (double sigma : {0.5, 1.0, 1.5}) {
            const HopfCurve curve = hopf_curve_dpos(make_uniform(sigma), K, D);
            std::ostringstream name;
            name << "region_sigma_" << sigma << ".csv";
            io::write_hopf_csv(out / name.str(), curve);
        }
        io::write_json(out / "summary.json",
                       json{{"figure", "fig3"}, {"K", K}, {"D", D}, {"sigma", {0.5, 1.0, 1.5}}});
        return;
    }
    if (id == "fig4") {
        const Kernel kernel = make_uniform(1.0);
        const double r = 2.0;
        const ModelParams params(r, K, D);
        io::write_hopf_csv(out / "region.csv", hopf_curve_dpos(kernel, K, D));
        SimConfig cfg;
        cfg.step = 0.008;
        cfg.t_end = 240.0;
        const auto rows = bifurcation_sweep(params, kernel, 0.5, 1.2, 71, cfg);
        io::write_bifurcation_csv(out / "bifurcation_r2.csv", rows);
        json j{{"figure", "fig4"},
               {"K", K},
               {"D", D},
               {"r", r},
               {"oscillation_switches", oscillation_switches(rows)},
               {"analytic_crossings", crossings_json(hopf_crossings(params, kernel))}};
        for (double t : {0.83, 0.85, 0.86}) {
            SimConfig pcfg = cfg;
            pcfg.t_end = 400.0;
            const auto pp = phase_portrait(simulate(params, kernel, t, pcfg), pcfg.transient_frac);
            std::ostringstream name;
            name << "phase_tau_" << t << ".csv";
            io::write_phase_csv(out / name.str(), pp);
        }
        io::write_json(out / "summary.json", j);
        return;
    }
    if (id == "fig5") {
        // C(omega) of the gamma p=2 kernel against the level K/n* - 1 at r=5.
        const KernelTransforms tf(make_gamma(2));
        const ModelParams params(5.0, K, D);
        const double target = K / equilibrium(params) - 1.0;
        std::ostringstream csv;
        csv << "omega,C,target\n";
        for (int i = 0; i <= 1600; ++i) {
            const double w = 8.0 * i / 1600.0;
            csv << io::format_double(w) << ',' << io::format_double(tf.C(w)) << ','
                << io::format_double(target) << '\n';
        }
        io::write_text(out / "c_curve.csv", csv.str());
        io::write_json(out / "summary.json",
                       json{{"figure", "fig5"}, {"K", K}, {"D", D}, {"r", 5.0}, {"target", target}});
        return;
    }
    if (id == "fig6") {
        const Kernel kernel = make_gamma(2);
        const double r = 5.0;
        const ModelParams params(r, K, D);
        io::write_hopf_csv(out / "region.csv", hopf_curve_dpos(kernel, K, D));
        SimConfig cfg;
        cfg.step = 0.01;
        cfg.t_end = 400.0;
        const auto rows = bifurcation_sweep(params, kernel, 0.5, 12.0, 231, cfg);
        io::write_bifurcation_csv(out / "bifurcation_r5.csv", rows);
        for (double t : {0.5, 5.0, 11.0}) {
            const auto pp = phase_portrait(simulate(params, kernel, t, cfg), cfg.transient_frac);
            std::ostringstream name;
            name << "phase_tau_" << t << ".csv";
            io::write_phase_csv(out / name.str(), pp);
        }
        io::write_json(out / "summary.json",
                       json{{"figure", "fig6"},
                            {"K", K},
                            {"D", D},
                            {"r", r},
                            {"r_star", gamma_thresholds(K, D).r_star},
                            {"oscillation_switches", oscillation_switches(rows)},
                            {"analytic_crossings", crossings_json(hopf_crossings(params, kernel))}});
        return;
    }
    if (id == "fig7") {
        const Kernel kernel = make_gamma(3);
        io::write_hopf_csv(out / "region.csv", hopf_curve_dpos(kernel, K, D));
        json j{{"figure", "fig7"},
               {"K", K},
               {"D", D},
               {"r_lower", gamma_thresholds(K, D).r_lower},
               {"r_upper", gamma_thresholds(K, D).r_upper}};
        SimConfig cfg;
        cfg.step = 0.01;
        cfg.t_end = 400.0;
        {
            const ModelParams params(1.8, K, D);
            const auto rows = bifurcation_sweep(params, kernel, 1.0, 22.0, 211, cfg);
            io::write_bifurcation_csv(out / "bifurcation_r1.8.csv", rows);
            j["oscillation_switches_r1.8"] = oscillation_switches(rows);
            j["analytic_crossings_r1.8"] = crossings_json(hopf_crossings(params, kernel));
        }
        {
            const ModelParams params(4.0, K, D);
            const auto rows = bifurcation_sweep(params, kernel, 0.3, 3.0, 109, cfg);
            io::write_bifurcation_csv(out / "bifurcation_r4.csv", rows);
            j["oscillation_switches_r4"] = oscillation_switches(rows);
            j["analytic_crossings_r4"] = crossings_json(hopf_crossings(params, kernel));
        }
        io::write_json(out / "summary.json", j);
        return;
    }
    throw std::invalid_argument("reproduce-figure: unknown id '" + id +
                                "' (expected fig3..fig7)");
}

struct SimFlags {
    double step = 0.0;
    double t_end = 200.0;
    double transient = 0.6;
    double history = 0.0;
    double amplitude_tol = 1e-4;

    void attach(CLI::App* cmd) {
        cmd->add_option("--step", step, "Integrator step (0 = auto)");
        cmd->add_option("--t-end", t_end, "Integration horizon");
        cmd->add_option("--transient", transient, "Discarded fraction of the horizon")
            ->check(CLI::Range(0.0, 0.99));
        cmd->add_option("--history", history, "Constant initial history n0 (0 = 0.8 n*)");
        cmd->add_option("--amplitude-tol", amplitude_tol,
                        "Oscillation threshold relative to n*");
    }

    SimConfig config() const { return SimConfig{step, t_end, transient, history, amplitude_tol}; }
};

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Delayed logistic model with distributed delay kernels: equilibria, "
                 "Hopf bifurcation analysis, and time-domain simulation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file (TOML/INI)");

    std::string out_dir = [] {
        const char* env = std::getenv("DLG_OUTPUT_DIR");
        return env ? std::string(env) : std::string(".");
    }();
    app.add_option("--out-dir", out_dir, "Output directory (default: $DLG_OUTPUT_DIR or .)")
        ->capture_default_str();

    // Shared option storage; each subcommand registers the flags it needs.
    double r = 1.0, K = 1.0, D = 0.0, tau = 1.0;
    std::string kernel_spec;
    double omega_max = kDefaultOmegaMax;
    double wmax = 20.0;
    int n_samples = 2001;
    double tau_min = 0.1, tau_max = 10.0;
    int points = 100;
    std::string fig_id;
    SimFlags sim;
    std::function<void()> action;

    auto add_params = [&](CLI::App* cmd, bool need_r = true) {
        if (need_r) cmd->add_option("--r", r, "Intrinsic growth rate")->required();
        cmd->add_option("--K", K, "Carrying capacity")->required();
        cmd->add_option("--D", D, "Nutrient inflow rate")->capture_default_str();
    };
    auto add_kernel = [&](CLI::App* cmd) {
        cmd->add_option("--kernel", kernel_spec,
                        "Kernel: uniform:sigma=<v> | dirac | gamma:p=<n>")
            ->required();
    };

    {
        auto* cmd = app.add_subcommand("equilibrium", "Positive equilibrium n*");
        add_params(cmd);
        cmd->callback([&] {
            action = [&] {
                const ModelParams params(r, K, D);
                const double ns = equilibrium(params);
                io::write_json(fs::path(out_dir) / "summary.json",
                               json{{"command", "equilibrium"},
                                    {"r", r},
                                    {"K", K},
                                    {"D", D},
                                    {"n_star", ns}});
                std::cout << "n_star = " << io::format_double(ns) << "\n";
            };
        });
    }

    {
        auto* cmd = app.add_subcommand("transforms",
                                       "Tabulate C, S, C', S' of the normalized kernel");
        add_kernel(cmd);
        cmd->add_option("--omega-max", wmax, "Largest omega")->capture_default_str();
        cmd->add_option("--samples", n_samples, "Number of samples")->check(CLI::Range(2, 2000000));
        cmd->callback([&] {
            action = [&] {
                const Kernel kernel = parse_kernel(kernel_spec);
                const KernelTransforms tf(kernel);
                std::ostringstream csv;
                csv << "omega,C,S,Cprime,Sprime\n";
                for (int i = 0; i < n_samples; ++i) {
                    const double w = wmax * i / (n_samples - 1);
                    csv << io::format_double(w) << ',' << io::format_double(tf.C(w)) << ','
                        << io::format_double(tf.S(w)) << ',' << io::format_double(tf.Cprime(w))
                        << ',' << io::format_double(tf.Sprime(w)) << '\n';
                }
                io::write_text(fs::path(out_dir) / "transforms.csv", csv.str());
                io::write_json(fs::path(out_dir) / "summary.json",
                               json{{"command", "transforms"}, {"kernel", kernel_json(kernel)}});
            };
        });
    }

    {
        auto* cmd = app.add_subcommand(
            "hopf", "Hopf bifurcation: closed-form delay (D=0) or curve in (r, tau_m) (D>0)");
        add_kernel(cmd);
        auto* r_opt =
            cmd->add_option("--r", r, "Growth rate (required when D=0; adds crossings when D>0)");
        cmd->add_option("--K", K, "Carrying capacity")->required();
        cmd->add_option("--D", D, "Nutrient inflow rate")->capture_default_str();
        cmd->add_option("--omega-max", omega_max, "Scan window upper bound")->capture_default_str();
        cmd->callback([&, r_opt] {
            action = [&, r_opt] {
                const Kernel kernel = parse_kernel(kernel_spec);
                json j{{"command", "hopf"}, {"kernel", kernel_json(kernel)}, {"K", K}, {"D", D}};
                if (D == 0.0) {
                    if (r_opt->count() == 0)
                        throw std::invalid_argument("hopf: --r is required when D = 0");
                    const auto tau_star = hopf_delay_d0(kernel, r, omega_max);
                    j["r"] = r;
                    if (tau_star) {
                        j["tau_star"] = *tau_star;
                    } else {
                        j["tau_star"] = nullptr;
                        j["note"] = "no crossing: stable for all tau_m";
                    }
                } else {
                    const HopfCurve curve = hopf_curve_dpos(kernel, K, D, omega_max);
                    io::write_hopf_csv(fs::path(out_dir) / "hopf_curve.csv", curve);
                    j["curve_points"] = curve.points.size();
                    if (curve.asymptote_omega) j["asymptote_omega"] = *curve.asymptote_omega;
                    if (const auto* g = std::get_if<GammaKernel>(&kernel)) {
                        const auto th = gamma_thresholds(K, D);
                        if (g->p == 2) j["r_star"] = th.r_star;
                        if (g->p == 3) {
                            j["r_lower"] = th.r_lower;
                            j["r_upper"] = th.r_upper;
                        }
                    }
                    if (r_opt->count() > 0) {
                        const ModelParams params(r, K, D);
                        j["r"] = r;
                        j["crossings"] = crossings_json(hopf_crossings(params, kernel, omega_max));
                    }
                }
                io::write_json(fs::path(out_dir) / "summary.json", j);
                std::cout << j.dump(2) << "\n";
            };
        });
    }

    {
        auto* cmd = app.add_subcommand(
            "region", "Stability-region boundary (Hopf curve) in the (r, tau_m) plane");
        add_kernel(cmd);
        cmd->add_option("--K", K, "Carrying capacity")->required();
        cmd->add_option("--D", D, "Nutrient inflow rate (> 0)")->required();
        cmd->add_option("--omega-max", omega_max, "Scan window upper bound")->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                const Kernel kernel = parse_kernel(kernel_spec);
                const HopfCurve curve = hopf_curve_dpos(kernel, K, D, omega_max);
                io::write_hopf_csv(fs::path(out_dir) / "region.csv", curve);
                json j{{"command", "region"},
                       {"kernel", kernel_json(kernel)},
                       {"K", K},
                       {"D", D},
                       {"curve_points", curve.points.size()}};
                if (curve.asymptote_omega) j["asymptote_omega"] = *curve.asymptote_omega;
                io::write_json(fs::path(out_dir) / "summary.json", j);
            };
        });
    }

    {
        auto* cmd = app.add_subcommand("classify", "Linear stability of n* at a mean delay");
        add_kernel(cmd);
        add_params(cmd);
        cmd->add_option("--tau", tau, "Mean delay tau_m")->required();
        cmd->callback([&] {
            action = [&] {
                const Kernel kernel = parse_kernel(kernel_spec);
                const ModelParams params(r, K, D);
                const auto verdict = classify(params, kernel, tau);
                json j{{"command", "classify"},
                       {"kernel", kernel_json(kernel)},
                       {"r", r},
                       {"K", K},
                       {"D", D},
                       {"tau_m", tau},
                       {"n_star", equilibrium(params)},
                       {"state", verdict.state == Stability::Stable ? "stable" : "unstable"},
                       {"marginal", verdict.marginal}};
                if (verdict.margin) j["margin"] = *verdict.margin;
                io::write_json(fs::path(out_dir) / "summary.json", j);
                std::cout << (verdict.state == Stability::Stable ? "stable" : "unstable") << "\n";
            };
        });
    }

    for (const bool phase : {false, true}) {
        auto* cmd = phase ? app.add_subcommand("phase", "Phase-portrait data (n, delayed)")
                          : app.add_subcommand("simulate", "Integrate the model forward in time");
        add_kernel(cmd);
        add_params(cmd);
        cmd->add_option("--tau", tau, "Mean delay tau_m")->required();
        sim.attach(cmd);
        cmd->callback([&, phase] {
            action = [&, phase] {
                const Kernel kernel = parse_kernel(kernel_spec);
                const ModelParams params(r, K, D);
                const Trajectory traj = simulate(params, kernel, tau, sim.config());
                json j{{"command", phase ? "phase" : "simulate"},
                       {"kernel", kernel_json(kernel)},
                       {"r", r},
                       {"K", K},
                       {"D", D},
                       {"tau_m", tau},
                       {"n_star", equilibrium(params)}};
                if (phase) {
                    const PhasePortrait pp = phase_portrait(traj, sim.transient);
                    io::write_phase_csv(fs::path(out_dir) / "phase.csv", pp);
                    j["limit_cycle"] = pp.limit_cycle;
                } else {
                    io::write_trajectory_csv(fs::path(out_dir) / "trajectory.csv", traj);
                    j["samples"] = traj.times.size();
                }
                io::write_json(fs::path(out_dir) / "summary.json", j);
            };
        });
    }

    {
        auto* cmd = app.add_subcommand("bifurcation",
                                       "Min/max amplitude sweep over a tau_m range");
        add_kernel(cmd);
        add_params(cmd);
        cmd->add_option("--tau-min", tau_min, "Sweep start")->required();
        cmd->add_option("--tau-max", tau_max, "Sweep end")->required();
        cmd->add_option("--points", points, "Number of sweep points")->check(CLI::Range(2, 100000));
        sim.attach(cmd);
        cmd->callback([&] {
            action = [&] {
                const Kernel kernel = parse_kernel(kernel_spec);
                const ModelParams params(r, K, D);
                const auto rows =
                    bifurcation_sweep(params, kernel, tau_min, tau_max, points, sim.config());
                io::write_bifurcation_csv(fs::path(out_dir) / "bifurcation.csv", rows);
                io::write_json(fs::path(out_dir) / "summary.json",
                               json{{"command", "bifurcation"},
                                    {"kernel", kernel_json(kernel)},
                                    {"r", r},
                                    {"K", K},
                                    {"D", D},
                                    {"n_star", equilibrium(params)},
                                    {"oscillation_switches", oscillation_switches(rows)}});
            };
        });
    }

    {
        auto* cmd = app.add_subcommand("reproduce-figure",
                                       "Emit the CSV bundle behind a figure (fig3..fig7)");
        cmd->add_option("id", fig_id, "Figure id: fig3, fig4, fig5, fig6, or fig7")->required();
        cmd->callback([&] {
            action = [&] { reproduce_figure(fig_id, fs::path(out_dir) / fig_id); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        action();
    } catch (const io::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace dlg::cli
