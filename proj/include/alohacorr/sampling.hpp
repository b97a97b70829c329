#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "alohacorr/fading.hpp"
#include "alohacorr/rng.hpp"

namespace alohacorr {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// One PPP draw inside a disk of the given radius centered at the frame
// origin (the simulator translates receivers into this frame).
struct Realization {
    double window_radius = 0.0;
    std::vector<Point> points;
};

// Per-slot ALOHA indicators and per-(point, receiver) power fading draws.
struct SlotDraw {
    std::vector<std::uint8_t> transmit;  // one flag per point
    std::vector<double> fading;          // [point * num_receivers + receiver]

    double fading_at(std::size_t point, std::size_t receiver, std::size_t num_receivers) const {
        return fading[point * num_receivers + receiver];
    }
};

// N ~ Poisson(lambda * pi * R^2) points uniform in the disk. The count and
// each point's coordinates come from separate counter lanes, so the draw for
// point i never depends on how many points precede it.
inline Realization sample_ppp(double lambda, double radius, const SeedSpec& seed) {
    if (!(lambda > 0.0)) throw std::invalid_argument("density must be > 0");
    if (!(radius > 0.0)) throw std::invalid_argument("window radius must be > 0");

    const double mean_count = lambda * M_PI * radius * radius;
    RandomStream count_stream(seed, StreamLabel::positions, 0xFFFFFFFFu);
    const std::uint64_t count = count_stream.next_poisson(mean_count);

    Realization realization;
    realization.window_radius = radius;
    realization.points.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        RandomStream point_stream(seed, StreamLabel::positions, static_cast<std::uint32_t>(i));
        const double r = radius * std::sqrt(point_stream.next_double());
        const double angle = 2.0 * M_PI * point_stream.next_double();
        realization.points[i] = {r * std::cos(angle), r * std::sin(angle)};
    }
    return realization;
}

// Per-slot transmit indicators and fading coefficients for every
// (point, receiver) pair. Every draw is addressed by (slot, point, receiver),
// independent of traversal order or worker count.
inline std::vector<SlotDraw> sample_slots(const Realization& realization, double p,
                                          std::size_t num_slots, const FadingModel& fading,
                                          std::size_t num_receivers, const SeedSpec& seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ALOHA probability out of [0, 1]");
    if (num_slots < 1) throw std::invalid_argument("need at least one slot");
    if (num_slots > 0xFFFF || num_receivers > 0xFFFF) {
        throw std::invalid_argument("slot and receiver counts are limited to 65535");
    }

    const std::size_t num_points = realization.points.size();
    std::vector<SlotDraw> draws(num_slots);
    for (std::size_t slot = 0; slot < num_slots; ++slot) {
        SlotDraw& draw = draws[slot];
        draw.transmit.resize(num_points);
        draw.fading.resize(num_points * num_receivers);
        for (std::size_t i = 0; i < num_points; ++i) {
            const auto point = static_cast<std::uint32_t>(i);
            RandomStream indicator_stream(seed, StreamLabel::indicators, point,
                                          static_cast<std::uint32_t>(slot));
            draw.transmit[i] = indicator_stream.next_bernoulli(p) ? 1 : 0;
            for (std::size_t j = 0; j < num_receivers; ++j) {
                RandomStream fading_stream(
                    seed, StreamLabel::fading, point,
                    static_cast<std::uint32_t>((slot << 16) | j));
                draw.fading[i * num_receivers + j] = fading.sample(fading_stream);
            }
        }
    }
    return draws;
}

}  // namespace alohacorr
