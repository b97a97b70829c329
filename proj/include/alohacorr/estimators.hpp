#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "alohacorr/errors.hpp"
#include "alohacorr/montecarlo.hpp"
#include "alohacorr/rng.hpp"

namespace alohacorr {

struct EstimateWithError {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

namespace detail {

constexpr std::size_t kMinReplications = 100;

inline void require_replications(std::size_t n) {
    if (n < kMinReplications) {
        throw statistical_error("at least " + std::to_string(kMinReplications) +
                                " replications are required, got " + std::to_string(n));
    }
}

inline double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

inline double variance_of(const std::vector<double>& xs, double mean) {
    double sum = 0.0;
    for (double x : xs) sum += (x - mean) * (x - mean);
    return sum / static_cast<double>(xs.size() - 1);
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw undefined_correlation_error("correlation undefined: a marginal has zero variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

// Pooled unbiased variance across replications, one estimate per
// (receiver, slot) cell averaged over cells. reps = [first, last).
inline double pooled_variance(const InterferenceSample& s, std::size_t first, std::size_t last) {
    const std::size_t n = last - first;
    double cell_sum = 0.0;
    const std::size_t cells = s.num_receivers * s.num_slots;
    for (std::size_t j = 0; j < s.num_receivers; ++j) {
        for (std::size_t k = 0; k < s.num_slots; ++k) {
            double mean = 0.0;
            for (std::size_t r = first; r < last; ++r) mean += s.at(r, j, k);
            mean /= static_cast<double>(n);
            double ss = 0.0;
            for (std::size_t r = first; r < last; ++r) {
                const double d = s.at(r, j, k) - mean;
                ss += d * d;
            }
            cell_sum += ss / static_cast<double>(n - 1);
        }
    }
    return cell_sum / static_cast<double>(cells);
}

}  // namespace detail

struct MomentEstimates {
    EstimateWithError mean;
    EstimateWithError variance;
};

// Mean and variance of the interference, pooled across receivers and slots
// (identically distributed by stationarity). Standard errors treat the
// replication as the unit of independence: per-replication means for the
// mean, replication batches for the variance.
inline MomentEstimates estimate_moments(const InterferenceSample& sample) {
    const std::size_t n = sample.replications;
    detail::require_replications(n);

    std::vector<double> rep_means(n);
    const std::size_t cells = sample.num_receivers * sample.num_slots;
    for (std::size_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (std::size_t j = 0; j < sample.num_receivers; ++j) {
            for (std::size_t k = 0; k < sample.num_slots; ++k) sum += sample.at(r, j, k);
        }
        rep_means[r] = sum / static_cast<double>(cells);
    }
    const double mean = detail::mean_of(rep_means);
    const double mean_se =
        std::sqrt(detail::variance_of(rep_means, mean) / static_cast<double>(n));

    const double variance = detail::pooled_variance(sample, 0, n);
    const std::size_t batches = std::clamp<std::size_t>(n / 10, 10, 100);
    std::vector<double> batch_values(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t first = b * n / batches;
        const std::size_t last = (b + 1) * n / batches;
        batch_values[b] = detail::pooled_variance(sample, first, last);
    }
    const double batch_mean = detail::mean_of(batch_values);
    const double variance_se =
        std::sqrt(detail::variance_of(batch_values, batch_mean) / static_cast<double>(batches));

    return {{mean, mean_se, n}, {variance, variance_se, n}};
}

struct SampleLocation {
    std::size_t receiver = 0;
    std::size_t slot = 0;
};

enum class CorrelationErrorMethod { fisher, bootstrap };

struct CorrelationOptions {
    CorrelationErrorMethod method = CorrelationErrorMethod::fisher;
    std::size_t bootstrap_resamples = 1000;
    std::uint64_t bootstrap_seed = 0;
};

// Pearson correlation across replications between I_k(u) and I_l(v) for
// distinct slots k != l. The standard error comes from the Fisher
// z-transform, or from a replication bootstrap for heavy-tailed regimes.
inline EstimateWithError estimate_correlation(const InterferenceSample& sample,
                                              SampleLocation at, SampleLocation with,
                                              CorrelationOptions options = {}) {
    const std::size_t n = sample.replications;
    detail::require_replications(n);
    if (at.slot == with.slot) {
        throw config_error("correlation is defined across distinct slots only");
    }

    std::vector<double> xs(n), ys(n);
    for (std::size_t r = 0; r < n; ++r) {
        xs[r] = sample.at(r, at.receiver, at.slot);
        ys[r] = sample.at(r, with.receiver, with.slot);
    }
    const double rho = detail::pearson(xs, ys);

    double se = 0.0;
    if (options.method == CorrelationErrorMethod::fisher) {
        se = (1.0 - rho * rho) / std::sqrt(static_cast<double>(n - 3));
    } else {
        RandomStream stream(options.bootstrap_seed, StreamLabel::bootstrap, 0);
        std::vector<double> bx(n), by(n), estimates;
        estimates.reserve(options.bootstrap_resamples);
        for (std::size_t b = 0; b < options.bootstrap_resamples; ++b) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto idx = static_cast<std::size_t>(stream.next_double() *
                                                          static_cast<double>(n));
                bx[i] = xs[idx];
                by[i] = ys[idx];
            }
            try {
                estimates.push_back(detail::pearson(bx, by));
            } catch (const undefined_correlation_error&) {
                // degenerate resample; drop it
            }
        }
        if (estimates.size() < 2) {
            throw statistical_error("bootstrap produced too few valid resamples");
        }
        const double m = detail::mean_of(estimates);
        se = std::sqrt(detail::variance_of(estimates, m));
    }
    return {rho, se, n};
}

struct OutageEstimates {
    EstimateWithError p_success;
    EstimateWithError p_joint;
    EstimateWithError ratio;
};

// Simulates the plan and estimates P(A_l), P(A_k, A_l) for slots 0 and 1,
// and the ratio P(A_k, A_l)/P(A_l)^2. A slot succeeds when
// h * g(link_distance) > theta * I. The ratio standard error uses the delta
// method on log(p_joint) - 2 log(p_success), with a replication bootstrap
// when any outcome cell is thinner than 50 counts.
inline OutageEstimates estimate_outage(const SimulationPlan& plan, unsigned workers = 1) {
    if (!plan.link) throw config_error("outage estimation requires a link configuration");
    if (!plan.net.fading.is_rayleigh()) {
        throw config_error("outage estimation assumes Rayleigh fading");
    }
    detail::require_replications(plan.replications);

    const InterferenceSample sample = simulate(plan, workers);
    const double gain = evaluate(plan.net.pathloss, plan.link->link_distance);
    const double theta = plan.link->theta;
    const std::size_t n = sample.replications;

    std::vector<double> joint(n), single(n);
    std::size_t cells[4] = {0, 0, 0, 0};
    for (std::size_t r = 0; r < n; ++r) {
        const bool s0 = sample.link_fading_at(r, 0) * gain > theta * sample.at(r, 0, 0);
        const bool s1 = sample.link_fading_at(r, 1) * gain > theta * sample.at(r, 0, 1);
        joint[r] = (s0 && s1) ? 1.0 : 0.0;
        single[r] = 0.5 * (static_cast<double>(s0) + static_cast<double>(s1));
        cells[(s0 ? 1 : 0) + (s1 ? 2 : 0)] += 1;
    }

    const double j_mean = detail::mean_of(joint);
    const double m_mean = detail::mean_of(single);
    const double j_var = detail::variance_of(joint, j_mean);
    const double m_var = detail::variance_of(single, m_mean);
    const double nf = static_cast<double>(n);

    EstimateWithError p_joint{j_mean, std::sqrt(j_var / nf), n};
    EstimateWithError p_success{m_mean, std::sqrt(m_var / nf), n};

    if (m_mean == 0.0) {
        throw statistical_error("no successful transmissions observed; ratio undefined");
    }
    const double ratio_value = j_mean / (m_mean * m_mean);

    double ratio_se = 0.0;
    const std::size_t min_cell = *std::min_element(std::begin(cells), std::end(cells));
    if (j_var == 0.0 && m_var == 0.0) {
        // degenerate exact case (e.g. p = 0: every slot succeeds)
    } else if (j_mean > 0.0 && min_cell >= 50) {
        double cov = 0.0;
        for (std::size_t r = 0; r < n; ++r) cov += (joint[r] - j_mean) * (single[r] - m_mean);
        cov /= nf - 1.0;
        const double log_var = std::max(0.0, j_var / (nf * j_mean * j_mean) +
                                                 4.0 * m_var / (nf * m_mean * m_mean) -
                                                 4.0 * cov / (nf * j_mean * m_mean));
        ratio_se = ratio_value * std::sqrt(log_var);
    } else if (j_mean > 0.0) {
        RandomStream stream(plan.master_seed, StreamLabel::bootstrap, 0);
        std::vector<double> estimates;
        estimates.reserve(1000);
        for (std::size_t b = 0; b < 1000; ++b) {
            double js = 0.0, ms = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto idx =
                    static_cast<std::size_t>(stream.next_double() * static_cast<double>(n));
                js += joint[idx];
                ms += single[idx];
            }
            if (ms > 0.0) estimates.push_back((js / nf) / ((ms / nf) * (ms / nf)));
        }
        if (estimates.size() >= 2) {
            const double m = detail::mean_of(estimates);
            ratio_se = std::sqrt(detail::variance_of(estimates, m));
        }
    }

    return {p_success, p_joint, {ratio_value, ratio_se, n}};
}

}  // namespace alohacorr
