#pragma once

#include <stdexcept>
#include <string>

#include "alohacorr/fading.hpp"
#include "alohacorr/pathloss.hpp"

namespace alohacorr {

// Full parameterization of the interference field: PPP density, ALOHA
// transmit probability, path loss and fading.
struct NetworkConfig {
    double lambda;
    double p;
    PathLossModel pathloss;
    FadingModel fading;

    NetworkConfig(double lambda_, double p_, PathLossModel pathloss_, FadingModel fading_)
        : lambda(lambda_), p(p_), pathloss(pathloss_), fading(fading_) {
        if (!(lambda > 0.0)) {
            throw std::invalid_argument("node density must be > 0, got " + std::to_string(lambda_));
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("ALOHA probability must lie in [0, 1], got " +
                                        std::to_string(p_));
        }
    }
};

// Desired link: transmitter at the origin, receiver at distance
// link_distance, SIR threshold theta.
struct LinkConfig {
    double link_distance;
    double theta;

    LinkConfig(double link_distance_, double theta_)
        : link_distance(link_distance_), theta(theta_) {
        if (!(link_distance > 0.0)) {
            throw std::invalid_argument("link distance must be > 0");
        }
        if (!(theta > 0.0)) {
            throw std::invalid_argument("SIR threshold must be > 0");
        }
    }

    // a = theta / g(link_distance); theta * ||z||^alpha for the singular model.
    double threshold_scale(const PathLossModel& model) const {
        return theta / evaluate(model, link_distance);
    }
};

}  // namespace alohacorr
