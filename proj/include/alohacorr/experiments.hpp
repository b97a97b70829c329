#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alohacorr/analytic.hpp"
#include "alohacorr/csv.hpp"
#include "alohacorr/errors.hpp"
#include "alohacorr/estimators.hpp"
#include "alohacorr/montecarlo.hpp"

namespace alohacorr {

// ---------------------------------------------------------------------------
// fig1: analytic spatial correlation zeta(u, v)/p versus separation
// ---------------------------------------------------------------------------

struct Fig1Params {
    double alpha = 4.0;
    double lambda = 1.0;
    double p = 1.0;
    FadingModel fading = FadingModel::none();
    std::vector<double> epsilons = {1.0, 0.1, 0.01};
    std::vector<double> separations = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
};

inline std::string fig1_csv(const Fig1Params& params) {
    if (!(params.p > 0.0)) throw config_error("fig1 requires p > 0");
    for (double eps : params.epsilons) {
        if (!(eps > 0.0)) throw config_error("fig1 requires every epsilon > 0");
    }
    CsvWriter csv({"epsilon", "separation", "zeta_over_p"});
    for (double eps : params.epsilons) {
        const NetworkConfig cfg(params.lambda, params.p, PathLossModel(params.alpha, eps),
                                params.fading);
        for (double d : params.separations) {
            const double zeta = spatial_temporal_correlation(cfg, d);
            csv.append_row({format_number(eps), format_number(d), format_number(zeta / params.p)});
        }
    }
    return csv.str();
}

// ---------------------------------------------------------------------------
// fig2: analytic link success probabilities versus the ALOHA parameter
// ---------------------------------------------------------------------------

struct Fig2Params {
    double alpha = 4.0;
    double lambda = 1.0;
    double epsilon = 0.0;  // singular model by default
    double theta = 1.0;
    double link_distance = 0.5;
    std::vector<double> p_grid = {0.0,  0.05, 0.1,  0.15, 0.2,  0.25, 0.3,
                                  0.35, 0.4,  0.45, 0.5,  0.55, 0.6,  0.65,
                                  0.7,  0.75, 0.8,  0.85, 0.9,  0.95, 1.0};
};

// p_cond = P(A_k | A_l) = conditional_ratio * p_success.
inline std::string fig2_csv(const Fig2Params& params) {
    const PathLossModel pathloss(params.alpha, params.epsilon);
    const LinkConfig link(params.link_distance, params.theta);
    CsvWriter csv({"p", "p_success", "p_cond"});
    for (double p : params.p_grid) {
        const NetworkConfig net(params.lambda, p, pathloss, FadingModel::rayleigh());
        const double success = success_probability(net, link);
        const double conditional = conditional_ratio(net, link) * success;
        csv.append_row({format_number(p), format_number(success), format_number(conditional)});
    }
    return csv.str();
}

// ---------------------------------------------------------------------------
// validate / moments: analytic versus Monte Carlo rows
// ---------------------------------------------------------------------------

struct ValidationRow {
    std::string quantity;
    std::string params;
    double analytic = 0.0;
    double mc_value = 0.0;
    double mc_stderr = 0.0;
    double z_score = 0.0;
    bool pass = false;
};

namespace detail {

inline std::string describe_cell(const NetworkConfig& net, std::size_t replications,
                                 std::uint64_t seed, const std::string& extra = "") {
    std::string s = "lambda=" + format_number(net.lambda) + ";p=" + format_number(net.p) +
                    ";alpha=" + format_number(net.pathloss.alpha) +
                    ";epsilon=" + format_number(net.pathloss.epsilon) +
                    ";fading=" + net.fading.name() +
                    ";replications=" + std::to_string(replications) +
                    ";seed=" + std::to_string(seed);
    if (!extra.empty()) s += ";" + extra;
    return s;
}

// Mean rows get the extra eta allowance for the deliberate window
// truncation; everything else is a plain 3-sigma rule.
inline ValidationRow make_row(std::string quantity, std::string params, double analytic,
                              const EstimateWithError& estimate, double bias_allowance = 0.0) {
    ValidationRow row;
    row.quantity = std::move(quantity);
    row.params = std::move(params);
    row.analytic = analytic;
    row.mc_value = estimate.value;
    row.mc_stderr = estimate.std_error;
    const double diff = estimate.value - analytic;
    row.z_score = estimate.std_error > 0.0
                      ? diff / estimate.std_error
                      : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    row.pass = std::abs(diff) <= 3.0 * estimate.std_error + bias_allowance * std::abs(analytic);
    return row;
}

inline ValidationRow failed_row(std::string quantity, std::string params,
                                double analytic) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {std::move(quantity), std::move(params), analytic, nan, nan, nan, false};
}

}  // namespace detail

struct MomentCellParams {
    NetworkConfig net;
    std::size_t replications = 20000;
    std::uint64_t master_seed = 1;
    double truncation_tolerance = 1e-3;
    unsigned workers = 1;
};

// Mean/variance rows for a single network cell, measured at the origin over
// two slots.
inline std::vector<ValidationRow> moment_rows(const MomentCellParams& cell) {
    const std::string params =
        detail::describe_cell(cell.net, cell.replications, cell.master_seed);
    const double analytic_mean = mean_interference(cell.net);
    const double analytic_variance = interference_variance(cell.net);

    SimulationPlan plan{cell.net,         std::nullopt,     {{0.0, 0.0}},
                        2,                cell.replications, cell.master_seed,
                        cell.truncation_tolerance};
    std::vector<ValidationRow> rows;
    try {
        const InterferenceSample sample = simulate(plan, cell.workers);
        const MomentEstimates moments = estimate_moments(sample);
        rows.push_back(detail::make_row("mean_interference", params, analytic_mean,
                                        moments.mean, cell.truncation_tolerance));
        rows.push_back(detail::make_row("interference_variance", params, analytic_variance,
                                        moments.variance));
    } catch (const statistical_error&) {
        rows.push_back(detail::failed_row("mean_interference", params, analytic_mean));
        rows.push_back(detail::failed_row("interference_variance", params, analytic_variance));
    }
    return rows;
}

struct ValidateParams {
    std::uint64_t master_seed = 1;
    std::size_t moment_replications = 20000;
    std::size_t outage_replications = 100000;
    double truncation_tolerance = 1e-3;
    unsigned workers = 1;
};

// The default cross-validation grid: interference moments and temporal
// correlation at ep=1 under Rayleigh and no fading, the spatial correlation
// spot check at separation 1, and the singular-model outage probabilities.
inline std::vector<ValidationRow> validate_rows(const ValidateParams& params) {
    std::vector<ValidationRow> rows;
    const PathLossModel smooth(4.0, 1.0);
    const std::uint64_t seed = params.master_seed;

    auto correlation_row = [&](const NetworkConfig& net, const std::vector<Point>& receivers,
                               double separation, const std::string& quantity) {
        SimulationPlan plan{net,  std::nullopt, receivers, 2, params.moment_replications,
                            seed, params.truncation_tolerance};
        const std::string cell = detail::describe_cell(
            net, params.moment_replications, seed, "separation=" + format_number(separation));
        const double analytic = separation == 0.0 ? temporal_correlation(net)
                                                  : spatial_temporal_correlation(net, separation);
        try {
            const InterferenceSample sample = simulate(plan, params.workers);
            const SampleLocation at{0, 0};
            const SampleLocation with{receivers.size() > 1 ? std::size_t{1} : std::size_t{0}, 1};
            rows.push_back(detail::make_row(quantity, cell, analytic,
                                            estimate_correlation(sample, at, with)));
        } catch (const statistical_error&) {
            rows.push_back(detail::failed_row(quantity, cell, analytic));
        }
    };

    // moments + temporal correlation, Rayleigh
    const NetworkConfig rayleigh_half(1.0, 0.5, smooth, FadingModel::rayleigh());
    for (auto& row : moment_rows({rayleigh_half, params.moment_replications, seed,
                                  params.truncation_tolerance, params.workers})) {
        rows.push_back(row);
    }
    correlation_row(rayleigh_half, {{0.0, 0.0}}, 0.0, "temporal_correlation");

    // moments, no fading
    const NetworkConfig none_half(1.0, 0.5, smooth, FadingModel::none());
    for (auto& row : moment_rows({none_half, params.moment_replications, seed,
                                  params.truncation_tolerance, params.workers})) {
        rows.push_back(row);
    }

    // temporal correlation, no fading, p = 0.7
    const NetworkConfig none_seven(1.0, 0.7, smooth, FadingModel::none());
    correlation_row(none_seven, {{0.0, 0.0}}, 0.0, "temporal_correlation");

    // spatial correlation at separation 1, p = 1
    const NetworkConfig rayleigh_full(1.0, 1.0, smooth, FadingModel::rayleigh());
    correlation_row(rayleigh_full, {{-0.5, 0.0}, {0.5, 0.0}}, 1.0, "spatial_correlation");

    // singular-model outage probabilities
    const NetworkConfig outage_net(1.0, 0.5, PathLossModel(4.0, 0.0), FadingModel::rayleigh());
    const LinkConfig link(0.5, 1.0);
    const std::string outage_cell = detail::describe_cell(
        outage_net, params.outage_replications, seed,
        "link_distance=" + format_number(link.link_distance) +
            ";theta=" + format_number(link.theta));
    SimulationPlan outage_plan{outage_net, link,  {{link.link_distance, 0.0}},
                               2,          params.outage_replications, seed,
                               params.truncation_tolerance};
    const double analytic_success = success_probability(outage_net, link);
    const double analytic_joint = joint_success_probability(outage_net, link);
    const double analytic_ratio = conditional_ratio(outage_net, link);
    try {
        const OutageEstimates outage = estimate_outage(outage_plan, params.workers);
        rows.push_back(detail::make_row("p_success", outage_cell, analytic_success,
                                        outage.p_success, params.truncation_tolerance));
        rows.push_back(detail::make_row("p_joint", outage_cell, analytic_joint, outage.p_joint,
                                        params.truncation_tolerance));
        rows.push_back(
            detail::make_row("conditional_ratio", outage_cell, analytic_ratio, outage.ratio));
    } catch (const statistical_error&) {
        rows.push_back(detail::failed_row("p_success", outage_cell, analytic_success));
        rows.push_back(detail::failed_row("p_joint", outage_cell, analytic_joint));
        rows.push_back(detail::failed_row("conditional_ratio", outage_cell, analytic_ratio));
    }

    return rows;
}

inline std::string validation_csv(const std::vector<ValidationRow>& rows) {
    CsvWriter csv({"quantity", "params", "analytic", "mc_value", "mc_stderr", "z_score", "pass"});
    for (const auto& row : rows) {
        csv.append_row({row.quantity, row.params, format_number(row.analytic),
                        format_number(row.mc_value), format_number(row.mc_stderr),
                        format_number(row.z_score), row.pass ? "1" : "0"});
    }
    return csv.str();
}

inline bool all_pass(const std::vector<ValidationRow>& rows) {
    for (const auto& row : rows) {
        if (!row.pass) return false;
    }
    return true;
}

}  // namespace alohacorr
