#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "alohacorr/analytic.hpp"
#include "alohacorr/errors.hpp"
#include "alohacorr/network.hpp"
#include "alohacorr/sampling.hpp"

namespace alohacorr {

// One interference experiment: which field to realize, where to measure it,
// how many slots and replications, and the truncation tolerance that sizes
// the window.
struct SimulationPlan {
    NetworkConfig net;
    std::optional<LinkConfig> link;
    std::vector<Point> receivers;
    std::size_t num_slots = 2;
    std::size_t replications = 100;
    std::uint64_t master_seed = 0;
    double truncation_tolerance = 1e-3;
    double max_window_radius = 1e4;
};

// Interference values for every (replication, receiver, slot) plus, when a
// link is configured, the desired-link fading draws per (replication, slot).
struct InterferenceSample {
    std::size_t replications = 0;
    std::size_t num_receivers = 0;
    std::size_t num_slots = 0;
    double window_radius = 0.0;
    std::vector<double> interference;
    std::vector<double> link_fading;

    double at(std::size_t rep, std::size_t receiver, std::size_t slot) const {
        return interference[(rep * num_receivers + receiver) * num_slots + slot];
    }

    double link_fading_at(std::size_t rep, std::size_t slot) const {
        return link_fading[rep * num_slots + slot];
    }
};

namespace detail {

inline Point centroid(const std::vector<Point>& pts) {
    Point c{0.0, 0.0};
    for (const Point& p : pts) {
        c.x += p.x;
        c.y += p.y;
    }
    c.x /= static_cast<double>(pts.size());
    c.y /= static_cast<double>(pts.size());
    return c;
}

// Path gains from every sampled point to one receiver. Guards the
// probability-zero coincidence that makes the singular gain infinite.
inline std::vector<double> receiver_gains(const std::vector<Point>& points, Point receiver,
                                          const PathLossModel& model) {
    std::vector<double> gains(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double dist = distance(points[i], receiver);
        if (model.singular() && dist == 0.0) {
            throw std::domain_error(
                "sampled interferer coincides with a receiver under the singular path loss");
        }
        gains[i] = evaluate(model, dist);
    }
    return gains;
}

// Runs body(r) for r in [0, n) on the requested number of workers. Work is
// handed out by an atomic counter; each unit writes only its own slots, so
// the result layout is identical for any worker count.
template <class Body>
void parallel_replications(std::size_t n, unsigned workers, Body&& body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t r = 0; r < n; ++r) body(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= n) return;
            try {
                body(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

// Window radius R such that the far-field truncation biases the target
// quantity by at most a fraction eta. The tail of the unthinned process is
// bounded through g(r) <= r^(-alpha):
//   moments (eps > 0):  2*pi*lambda*R^(2-alpha)/(alpha-2) <= eta * E[I]
//   outage  (eps = 0):  2*pi*lambda*a*R^(2-alpha)/(alpha-2) <= eta * lambda*p*int a*g/(1+a*g)
// and R is at least the receiver spread plus 10 * eps^(1/alpha).
inline double choose_window_radius(const NetworkConfig& net, const std::vector<Point>& receivers,
                                   double eta, double max_radius = 1e4,
                                   const std::optional<LinkConfig>& link = std::nullopt) {
    if (!(eta > 0.0)) throw config_error("truncation tolerance must be > 0");
    if (receivers.empty()) throw config_error("at least one receiver is required");

    const double alpha = net.pathloss.alpha;
    double tail_radius = 0.0;
    if (net.p > 0.0) {
        if (!net.pathloss.singular()) {
            const double target = eta * mean_interference(net);
            tail_radius = std::pow(2.0 * M_PI * net.lambda / ((alpha - 2.0) * target),
                                   1.0 / (alpha - 2.0));
        } else {
            if (!link) {
                throw config_error(
                    "moment experiments require epsilon > 0; the singular model is outage-only");
            }
            const double a = link->threshold_scale(net.pathloss);
            const double exponent =
                net.lambda * net.p * detail::exceedance_integral(net.pathloss, a);
            const double target = eta * exponent;
            tail_radius = std::pow(2.0 * M_PI * net.lambda * a / ((alpha - 2.0) * target),
                                   1.0 / (alpha - 2.0));
        }
    }

    const Point center = detail::centroid(receivers);
    double spread = 0.0;
    for (const Point& r : receivers) spread = std::max(spread, distance(r, center));
    const double lower = spread + 10.0 * std::pow(net.pathloss.epsilon, 1.0 / alpha);

    const double radius = std::max({tail_radius, lower, 1.0});
    if (!(radius <= max_radius)) {
        throw config_error("window radius " + std::to_string(radius) +
                           " exceeds the configured maximum " + std::to_string(max_radius) +
                           "; relax the truncation tolerance or raise the maximum");
    }
    return radius;
}

// Realizes the interference field of the plan: per replication one PPP draw,
// per slot ALOHA indicators and fading, then
//   I_k(u) = sum_x 1(x transmits in k) * h_xu(k) * g(x - u)
// at every receiver. The desired transmitter of an outage plan sits at the
// origin, always transmits, and never counts toward interference.
inline InterferenceSample simulate(const SimulationPlan& plan, unsigned workers = 1) {
    if (plan.receivers.empty()) throw config_error("plan needs at least one receiver");
    if (plan.num_slots < 2) throw config_error("plan needs at least two slots");
    if (plan.replications < 1) throw config_error("plan needs at least one replication");

    const double radius = choose_window_radius(plan.net, plan.receivers,
                                               plan.truncation_tolerance,
                                               plan.max_window_radius, plan.link);

    const Point center = detail::centroid(plan.receivers);
    std::vector<Point> offsets(plan.receivers.size());
    for (std::size_t j = 0; j < plan.receivers.size(); ++j) {
        offsets[j] = {plan.receivers[j].x - center.x, plan.receivers[j].y - center.y};
    }

    InterferenceSample sample;
    sample.replications = plan.replications;
    sample.num_receivers = plan.receivers.size();
    sample.num_slots = plan.num_slots;
    sample.window_radius = radius;
    sample.interference.resize(plan.replications * offsets.size() * plan.num_slots);
    if (plan.link) {
        sample.link_fading.resize(plan.replications * plan.num_slots);
    }

    detail::parallel_replications(plan.replications, workers, [&](std::size_t rep) {
        const SeedSpec seed{plan.master_seed, rep};
        const Realization realization = sample_ppp(plan.net.lambda, radius, seed);

        std::vector<std::vector<double>> gains(offsets.size());
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            gains[j] = detail::receiver_gains(realization.points, offsets[j], plan.net.pathloss);
        }

        const std::vector<SlotDraw> draws = sample_slots(
            realization, plan.net.p, plan.num_slots, plan.net.fading, offsets.size(), seed);

        for (std::size_t j = 0; j < offsets.size(); ++j) {
            for (std::size_t k = 0; k < plan.num_slots; ++k) {
                double total = 0.0;
                const SlotDraw& draw = draws[k];
                for (std::size_t i = 0; i < realization.points.size(); ++i) {
                    if (draw.transmit[i]) {
                        total += draw.fading_at(i, j, offsets.size()) * gains[j][i];
                    }
                }
                sample.interference[(rep * offsets.size() + j) * plan.num_slots + k] = total;
            }
        }

        if (plan.link) {
            for (std::size_t k = 0; k < plan.num_slots; ++k) {
                RandomStream link_stream(seed, StreamLabel::link_fading, 0,
                                         static_cast<std::uint32_t>(k));
                sample.link_fading[rep * plan.num_slots + k] =
                    plan.net.fading.sample(link_stream);
            }
        }
    });

    return sample;
}

}  // namespace alohacorr
