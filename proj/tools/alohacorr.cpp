#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alohacorr/experiments.hpp"
#include "alohacorr/manifest.hpp"
#include "alohacorr/version.hpp"

namespace {

using alohacorr::FadingModel;
using nlohmann::json;

FadingModel parse_fading(const std::string& name, double m) {
    if (name == "none") return FadingModel::none();
    if (name == "rayleigh") return FadingModel::rayleigh();
    if (name == "nakagami") return FadingModel::nakagami(m);
    throw alohacorr::config_error("unknown fading model: " + name);
}

// flag > config file > built-in default
template <class T>
void resolve(const CLI::Option* option, const json& config, const char* key, T& value) {
    if (option != nullptr && option->count() > 0) return;
    if (config.contains(key)) value = config[key].get<T>();
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void emit(const std::string& command, const std::string& out_path, const std::string& csv,
          std::uint64_t seed, json parameters, const Timer& timer) {
    alohacorr::write_file(out_path, csv);
    alohacorr::RunManifest manifest;
    manifest.command = command;
    manifest.master_seed = seed;
    manifest.parameters = std::move(parameters);
    manifest.outputs.emplace_back(out_path, alohacorr::fnv1a64_hex(csv));
    manifest.duration_seconds = timer.seconds();
    alohacorr::write_manifest(manifest, out_path);
}

int run(int argc, char** argv) {
    CLI::App app{"Interference correlation in slotted-ALOHA Poisson networks"};
    app.set_version_flag("--version", std::string("alohacorr ") + alohacorr::kVersion);
    app.require_subcommand(1);

    // shared flags, re-registered per subcommand
    struct Common {
        std::string out;
        std::string config;
        std::uint64_t seed = 1;
        CLI::Option* seed_opt = nullptr;
    };
    auto add_common = [](CLI::App* cmd, Common& common, const std::string& default_out) {
        common.out = default_out;
        cmd->add_option("--out", common.out, "output CSV path");
        cmd->add_option("--config", common.config,
                        "JSON config file (or a previous run manifest)");
        common.seed_opt = cmd->add_option("--seed", common.seed, "master seed");
    };
    auto load = [](const Common& common) {
        return common.config.empty() ? json::object() : alohacorr::load_config(common.config);
    };

    // ---- fig1 ------------------------------------------------------------
    auto* fig1 = app.add_subcommand("fig1", "spatial correlation zeta/p versus separation");
    alohacorr::Fig1Params fig1_params;
    Common fig1_common;
    std::string fig1_fading = "none";
    double fig1_m = 1.0;
    add_common(fig1, fig1_common, "fig1.csv");
    auto* f1_alpha = fig1->add_option("--alpha", fig1_params.alpha, "path loss exponent");
    auto* f1_lambda = fig1->add_option("--lambda", fig1_params.lambda, "node density");
    auto* f1_p = fig1->add_option("--p", fig1_params.p, "ALOHA transmit probability");
    auto* f1_fading = fig1->add_option("--fading", fig1_fading, "none|rayleigh|nakagami");
    auto* f1_m = fig1->add_option("--m", fig1_m, "Nakagami shape");
    auto* f1_eps = fig1->add_option("--epsilons", fig1_params.epsilons, "epsilon values");
    auto* f1_sep = fig1->add_option("--separations", fig1_params.separations, "separations");

    // ---- fig2 ------------------------------------------------------------
    auto* fig2 = app.add_subcommand("fig2", "link success probabilities versus p");
    alohacorr::Fig2Params fig2_params;
    Common fig2_common;
    add_common(fig2, fig2_common, "fig2.csv");
    auto* f2_alpha = fig2->add_option("--alpha", fig2_params.alpha, "path loss exponent");
    auto* f2_lambda = fig2->add_option("--lambda", fig2_params.lambda, "node density");
    auto* f2_eps = fig2->add_option("--epsilon", fig2_params.epsilon,
                                    "path loss softening (0 = singular model)");
    auto* f2_theta = fig2->add_option("--theta", fig2_params.theta, "SIR threshold");
    auto* f2_dist = fig2->add_option("--link-distance", fig2_params.link_distance,
                                     "desired link distance");
    auto* f2_grid = fig2->add_option("--p-grid", fig2_params.p_grid, "ALOHA probabilities");

    // ---- validate ----------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "analytic versus Monte Carlo table");
    alohacorr::ValidateParams validate_params;
    Common validate_common;
    unsigned validate_workers = 1;
    add_common(validate, validate_common, "validate.csv");
    auto* v_reps = validate->add_option("--replications", validate_params.moment_replications,
                                        "replications for moment cells");
    auto* v_outage = validate->add_option("--outage-replications",
                                          validate_params.outage_replications,
                                          "replications for the outage cell");
    auto* v_eta = validate->add_option("--eta", validate_params.truncation_tolerance,
                                       "window truncation tolerance");
    auto* v_workers = validate->add_option("--workers", validate_workers, "worker threads");

    // ---- moments -----------------------------------------------------------
    auto* moments = app.add_subcommand("moments", "single-cell mean/variance report");
    Common moments_common;
    double mo_lambda = 1.0, mo_p = 0.5, mo_alpha = 4.0, mo_eps = 1.0, mo_m = 1.0;
    double mo_eta = 1e-3;
    std::string mo_fading = "rayleigh";
    std::size_t mo_reps = 20000;
    unsigned mo_workers = 1;
    add_common(moments, moments_common, "moments.csv");
    auto* m_lambda = moments->add_option("--lambda", mo_lambda, "node density");
    auto* m_p = moments->add_option("--p", mo_p, "ALOHA transmit probability");
    auto* m_alpha = moments->add_option("--alpha", mo_alpha, "path loss exponent");
    auto* m_eps = moments->add_option("--epsilon", mo_eps, "path loss softening (> 0)");
    auto* m_fading = moments->add_option("--fading", mo_fading, "none|rayleigh|nakagami");
    auto* m_m = moments->add_option("--m", mo_m, "Nakagami shape");
    auto* m_reps = moments->add_option("--replications", mo_reps, "replication count");
    auto* m_eta = moments->add_option("--eta", mo_eta, "window truncation tolerance");
    auto* m_workers = moments->add_option("--workers", mo_workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (fig1->parsed()) {
        Timer timer;
        const json config = load(fig1_common);
        resolve(f1_alpha, config, "alpha", fig1_params.alpha);
        resolve(f1_lambda, config, "lambda", fig1_params.lambda);
        resolve(f1_p, config, "p", fig1_params.p);
        resolve(f1_fading, config, "fading", fig1_fading);
        resolve(f1_m, config, "m", fig1_m);
        resolve(f1_eps, config, "epsilons", fig1_params.epsilons);
        resolve(f1_sep, config, "separations", fig1_params.separations);
        resolve(fig1_common.seed_opt, config, "seed", fig1_common.seed);
        fig1_params.fading = parse_fading(fig1_fading, fig1_m);

        const std::string csv = alohacorr::fig1_csv(fig1_params);
        json parameters = {{"alpha", fig1_params.alpha},
                           {"lambda", fig1_params.lambda},
                           {"p", fig1_params.p},
                           {"fading", fig1_fading},
                           {"m", fig1_m},
                           {"epsilons", fig1_params.epsilons},
                           {"separations", fig1_params.separations},
                           {"seed", fig1_common.seed}};
        emit("fig1", fig1_common.out, csv, fig1_common.seed, std::move(parameters), timer);
        return 0;
    }

    if (fig2->parsed()) {
        Timer timer;
        const json config = load(fig2_common);
        resolve(f2_alpha, config, "alpha", fig2_params.alpha);
        resolve(f2_lambda, config, "lambda", fig2_params.lambda);
        resolve(f2_eps, config, "epsilon", fig2_params.epsilon);
        resolve(f2_theta, config, "theta", fig2_params.theta);
        resolve(f2_dist, config, "link_distance", fig2_params.link_distance);
        resolve(f2_grid, config, "p_grid", fig2_params.p_grid);
        resolve(fig2_common.seed_opt, config, "seed", fig2_common.seed);

        const std::string csv = alohacorr::fig2_csv(fig2_params);
        json parameters = {{"alpha", fig2_params.alpha},
                           {"lambda", fig2_params.lambda},
                           {"epsilon", fig2_params.epsilon},
                           {"theta", fig2_params.theta},
                           {"link_distance", fig2_params.link_distance},
                           {"p_grid", fig2_params.p_grid},
                           {"seed", fig2_common.seed}};
        emit("fig2", fig2_common.out, csv, fig2_common.seed, std::move(parameters), timer);
        return 0;
    }

    if (validate->parsed()) {
        Timer timer;
        const json config = load(validate_common);
        resolve(v_reps, config, "replications", validate_params.moment_replications);
        resolve(v_outage, config, "outage_replications", validate_params.outage_replications);
        resolve(v_eta, config, "eta", validate_params.truncation_tolerance);
        resolve(v_workers, config, "workers", validate_workers);
        resolve(validate_common.seed_opt, config, "seed", validate_common.seed);
        validate_params.master_seed = validate_common.seed;
        validate_params.workers = validate_workers;

        const auto rows = alohacorr::validate_rows(validate_params);
        const std::string csv = alohacorr::validation_csv(rows);
        json parameters = {{"replications", validate_params.moment_replications},
                           {"outage_replications", validate_params.outage_replications},
                           {"eta", validate_params.truncation_tolerance},
                           {"workers", validate_workers},
                           {"seed", validate_common.seed}};
        emit("validate", validate_common.out, csv, validate_common.seed, std::move(parameters),
             timer);
        if (!alohacorr::all_pass(rows)) {
            std::cerr << "validation failed: see " << validate_common.out << "\n";
            return 2;
        }
        return 0;
    }

    if (moments->parsed()) {
        Timer timer;
        const json config = load(moments_common);
        resolve(m_lambda, config, "lambda", mo_lambda);
        resolve(m_p, config, "p", mo_p);
        resolve(m_alpha, config, "alpha", mo_alpha);
        resolve(m_eps, config, "epsilon", mo_eps);
        resolve(m_fading, config, "fading", mo_fading);
        resolve(m_m, config, "m", mo_m);
        resolve(m_reps, config, "replications", mo_reps);
        resolve(m_eta, config, "eta", mo_eta);
        resolve(m_workers, config, "workers", mo_workers);
        resolve(moments_common.seed_opt, config, "seed", moments_common.seed);

        const alohacorr::NetworkConfig net(mo_lambda, mo_p,
                                           alohacorr::PathLossModel(mo_alpha, mo_eps),
                                           parse_fading(mo_fading, mo_m));
        const auto rows = alohacorr::moment_rows(
            {net, mo_reps, moments_common.seed, mo_eta, mo_workers});
        const std::string csv = alohacorr::validation_csv(rows);
        json parameters = {{"lambda", mo_lambda},   {"p", mo_p},
                           {"alpha", mo_alpha},     {"epsilon", mo_eps},
                           {"fading", mo_fading},   {"m", mo_m},
                           {"replications", mo_reps}, {"eta", mo_eta},
                           {"workers", mo_workers}, {"seed", moments_common.seed}};
        emit("moments", moments_common.out, csv, moments_common.seed, std::move(parameters),
             timer);
        if (!alohacorr::all_pass(rows)) {
            std::cerr << "moment check failed: see " << moments_common.out << "\n";
            return 2;
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const alohacorr::nonconvergence_error& err) {
        std::cerr << "numeric non-convergence: " << err.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 1;
    } catch (const std::domain_error& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
