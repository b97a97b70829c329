#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "alohacorr/rng.hpp"
#include "alohacorr/sampling.hpp"

using namespace alohacorr;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("ppp determinism and window containment") {
    const SeedSpec seed{77, 3};
    const Realization a = sample_ppp(1.0, 10.0, seed);
    const Realization b = sample_ppp(1.0, 10.0, seed);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
        CHECK(distance(a.points[i], {0.0, 0.0}) <= a.window_radius);
    }
}

TEST_CASE("ppp count is Poisson with mean lambda pi R^2") {
    const double lambda = 1.0, radius = 10.0;
    const double mean = lambda * kPi * radius * radius;
    const int reps = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto realization = sample_ppp(lambda, radius, {2024, std::uint64_t(r)});
        const double n = static_cast<double>(realization.points.size());
        sum += n;
        sum2 += n * n;
    }
    const double sample_mean = sum / reps;
    const double sample_var = sum2 / reps - sample_mean * sample_mean;
    CHECK(std::abs(sample_mean - mean) <= 3.0 * std::sqrt(mean / reps));
    CHECK(std::abs(sample_var - mean) <= 5.0 * mean * std::sqrt(2.0 / reps));
}

TEST_CASE("tiny density gives empty realizations") {
    int total = 0;
    for (int r = 0; r < 100; ++r) {
        total += static_cast<int>(sample_ppp(1e-9, 1.0, {5, std::uint64_t(r)}).points.size());
    }
    CHECK(total == 0);
}

TEST_CASE("slot indicators at the probability extremes") {
    const Realization realization = sample_ppp(2.0, 8.0, {99, 0});
    REQUIRE(realization.points.size() > 0);
    const auto all = sample_slots(realization, 1.0, 3, FadingModel::none(), 1, {99, 0});
    const auto none = sample_slots(realization, 0.0, 3, FadingModel::none(), 1, {99, 0});
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < realization.points.size(); ++i) {
            CHECK(all[k].transmit[i] == 1);
            CHECK(none[k].transmit[i] == 0);
        }
    }
}

TEST_CASE("indicator mean matches p across points and slots") {
    const Realization realization = sample_ppp(1.0, 40.0, {123, 1});
    const double p = 0.3;
    const std::size_t slots = 8;
    const auto draws = sample_slots(realization, p, slots, FadingModel::none(), 1, {123, 1});
    std::size_t transmitting = 0, total = 0;
    for (const auto& draw : draws) {
        for (auto flag : draw.transmit) {
            transmitting += flag;
            ++total;
        }
    }
    const double rate = double(transmitting) / double(total);
    const double se = std::sqrt(p * (1.0 - p) / double(total));
    CHECK(std::abs(rate - p) <= 4.0 * se);
}

TEST_CASE("thinned transmitters stay spatially uniform") {
    // chi-square over 4 equal-area annuli x 4 quadrants, pooled over seeds
    const double radius = 20.0;
    std::array<std::size_t, 16> counts{};
    std::size_t total = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const SeedSpec seed{31337, std::uint64_t(rep)};
        const Realization realization = sample_ppp(1.0, radius, seed);
        const auto draws = sample_slots(realization, 0.5, 1, FadingModel::none(), 1, seed);
        for (std::size_t i = 0; i < realization.points.size(); ++i) {
            if (!draws[0].transmit[i]) continue;
            const Point pt = realization.points[i];
            const double rr = pt.x * pt.x + pt.y * pt.y;
            auto ring = static_cast<std::size_t>(4.0 * rr / (radius * radius));
            if (ring > 3) ring = 3;
            const double angle = std::atan2(pt.y, pt.x);
            const auto quadrant = static_cast<std::size_t>((angle + kPi) / (kPi / 2.0)) % 4;
            counts[ring * 4 + quadrant] += 1;
            ++total;
        }
    }
    const double expected = double(total) / 16.0;
    REQUIRE(expected > 50.0);
    double chi2 = 0.0;
    for (auto c : counts) {
        chi2 += (double(c) - expected) * (double(c) - expected) / expected;
    }
    CHECK(chi2 < 37.70);  // 99.9% quantile of chi-square with 15 dof
}

TEST_CASE("fading draws normalize to unit mean") {
    const Realization realization = sample_ppp(1.0, 30.0, {5150, 0});
    for (const auto& fading :
         {FadingModel::rayleigh(), FadingModel::nakagami(2.0), FadingModel::none()}) {
        std::size_t n = 0;
        double sum = 0.0, sum2 = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            const SeedSpec seed{5150, std::uint64_t(rep)};
            const auto draws = sample_slots(realization, 0.5, 2, fading, 2, seed);
            for (const auto& draw : draws) {
                for (double h : draw.fading) {
                    sum += h;
                    sum2 += h * h;
                    ++n;
                }
            }
        }
        const double mean = sum / double(n);
        const double second = sum2 / double(n);
        const double target_second = fading.second_moment();
        INFO(fading.name() << " n=" << n);
        if (fading.kind() == FadingModel::Kind::None) {
            CHECK(mean == 1.0);
            CHECK(second == 1.0);
        } else {
            const double se_mean = std::sqrt((target_second - 1.0) / double(n));
            CHECK(std::abs(mean - 1.0) <= 3.0 * se_mean);
            CHECK(std::abs(second - target_second) <= 0.05 * target_second);
        }
    }
}

TEST_CASE("rayleigh second moment at one million draws") {
    RandomStream stream(404, StreamLabel::generic, 0);
    const FadingModel rayleigh = FadingModel::rayleigh();
    const int n = 1000000;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double h = rayleigh.sample(stream);
        sum2 += h * h;
    }
    CHECK(std::abs(sum2 / n - 2.0) <= 0.02);
}

TEST_CASE("rayleigh equals nakagami with unit shape") {
    CHECK(FadingModel::rayleigh().second_moment() ==
          FadingModel::nakagami(1.0).second_moment());
    RandomStream a(7, StreamLabel::generic, 0);
    RandomStream b(7, StreamLabel::generic, 0);
    for (int i = 0; i < 100; ++i) {
        CHECK(FadingModel::rayleigh().sample(a) == FadingModel::nakagami(1.0).sample(b));
    }
}

TEST_CASE("fading draws do not depend on indicator draws") {
    // same seed, different p: identical fading values
    const Realization realization = sample_ppp(1.0, 10.0, {61, 0});
    const auto lo = sample_slots(realization, 0.1, 2, FadingModel::rayleigh(), 1, {61, 0});
    const auto hi = sample_slots(realization, 0.9, 2, FadingModel::rayleigh(), 1, {61, 0});
    for (std::size_t k = 0; k < 2; ++k) {
        REQUIRE(lo[k].fading == hi[k].fading);
    }
}
